/** Browser entry point: URL-driven routing across the three views. */

import { ApiClient, ApiError } from "./api.js";
import { coverageBars, isEmptyRange } from "./coverage.js";
import { clear, el } from "./dom.js";
import { eventRows, factRows } from "./events.js";
import { OfflineQueue } from "./offline.js";
import { DEFAULT_FILTERS, decodeFilters, encodeFilters, type Filters } from "./state.js";
import type { ArticleDocument, SentenceRow, Task } from "./types.js";
import { SENTENCE_FOCUS, SENTENCE_TONES, SENTENCE_TYPES } from "./types.js";
import { WorkbenchController } from "./workbench.js";

const api = new ApiClient("");
const queue = new OfflineQueue(api, window.localStorage);
queue.attachToWindow(window);

let filters: Filters = { ...DEFAULT_FILTERS, ...decodeFilters(window.location.search) };
let workbench: WorkbenchController | null = null;
let workbenchAnnotator = "";
let activeKeyHandler: ((event: KeyboardEvent) => void) | null = null;

function setKeyHandler(handler: ((event: KeyboardEvent) => void) | null): void {
  if (activeKeyHandler) window.removeEventListener("keydown", activeKeyHandler);
  activeKeyHandler = handler;
  if (handler) window.addEventListener("keydown", handler);
}

function navigate(update: Partial<Filters>): void {
  filters = { ...filters, ...update };
  window.history.pushState(null, "", `?${encodeFilters(filters)}`);
  void render();
}

window.addEventListener("popstate", () => {
  filters = decodeFilters(window.location.search);
  void render();
});

function app(): HTMLElement {
  return document.getElementById("app") as HTMLElement;
}

function navBar(): HTMLElement {
  const tab = (view: Filters["view"], label: string) =>
    el("button", { class: filters.view === view ? "tab active" : "tab", onclick: () => navigate({ view }) }, [label]);
  return el("nav", { class: "topnav" }, [
    el("span", { class: "brand" }, ["pressgauge"]),
    tab("coverage", "Coverage"),
    tab("events", "Events"),
    tab("workbench", "Workbench"),
  ]);
}

// ----------------------------------------------------------------- coverage

async function renderCoverage(root: HTMLElement): Promise<void> {
  const controls = el("div", { class: "controls" }, [
    el("label", {}, ["From ", dateInput("start")]),
    el("label", {}, ["To ", dateInput("end")]),
    el("label", {}, [
      "Color by ",
      el("select", {
        onchange: (event) => navigate({ colorBy: (event.target as HTMLSelectElement).value as Filters["colorBy"] }),
      }, [
        el("option", filters.colorBy === "lean" ? { value: "lean", selected: "selected" } : { value: "lean" }, ["lean"]),
        el("option", filters.colorBy === "tone" ? { value: "tone", selected: "selected" } : { value: "tone" }, ["tone"]),
      ]),
    ]),
    filters.topic
      ? el("button", { class: "linkish", onclick: () => navigate({ topic: null }) }, [`← all topics (showing ${filters.topic})`])
      : el("span", {}, []),
  ]);
  root.append(controls);

  const response = await api.coverage({
    start: filters.start,
    end: filters.end,
    publishers: filters.publishers,
    topic: filters.topic ?? undefined,
    groupBy: filters.topic ? ["subtopic"] : ["topic"],
  });
  if (isEmptyRange(response)) {
    root.append(el("p", { class: "placeholder" }, ["No labeled coverage in this date range."]));
    return;
  }
  const list = el("div", { class: "bars" });
  for (const bar of coverageBars(response, filters.colorBy)) {
    const row = el("div", { class: "bar-row" }, [
      el("span", { class: "bar-label" }, [bar.label]),
      el("div", { class: "bar-track" }, [
        el("div", {
          class: "bar-fill",
          style: `width:${Math.max(2, Math.round(bar.fraction * 100))}%;background:${bar.color}`,
        }),
      ]),
      el("span", { class: "bar-count" }, [
        `${bar.count}${bar.colorValue === null ? "" : ` (${filters.colorBy} ${bar.colorValue.toFixed(2)})`}`,
      ]),
    ]);
    if (bar.drillTopic) {
      row.classList.add("clickable");
      row.addEventListener("click", () => navigate({ topic: bar.drillTopic }));
    }
    list.append(row);
  }
  root.append(list);
}

function dateInput(field: "start" | "end"): HTMLElement {
  return el("input", {
    type: "date",
    value: filters[field],
    onchange: (event) => navigate({ [field]: (event.target as HTMLInputElement).value } as Partial<Filters>),
  });
}

// ------------------------------------------------------------------- events

async function renderEvents(root: HTMLElement): Promise<void> {
  root.append(
    el("div", { class: "controls" }, [
      el("label", {}, [
        "Day ",
        el("input", {
          type: "date",
          value: filters.date,
          onchange: (event) => navigate({ date: (event.target as HTMLInputElement).value }),
        }),
      ]),
    ]),
  );
  const response = await api.events(filters.date);
  if (response.events.length === 0) {
    root.append(el("p", { class: "placeholder" }, ["No events clustered for this day."]));
    return;
  }
  const list = el("div", { class: "events" });
  for (const row of eventRows(response.events)) {
    const publishers = row.publishers.map((p) => el("span", { class: "chip" }, [`${p.id} ${p.count}`]));
    const details = el("div", { class: "event-facts" });
    const header = el("div", { class: "event-row clickable" }, [
      el("div", { class: "event-head" }, [
        el("strong", {}, [row.themeShort]),
        el("span", { class: "muted" }, [` ${row.theme}`]),
      ]),
      el("div", { class: "bar-track" }, [
        el("div", { class: "bar-fill", style: `width:${Math.max(2, Math.round(row.fraction * 100))}%` }),
      ]),
      el("span", { class: "bar-count" }, [`${row.size} articles`]),
      el("div", { class: "chips" }, publishers),
    ]);
    header.addEventListener("click", () => void toggleFacts(row.eventId, details));
    list.append(header, details);
  }
  root.append(list);
}

async function toggleFacts(eventId: string, container: HTMLElement): Promise<void> {
  if (container.childElementCount > 0) {
    clear(container);
    return;
  }
  const facts = factRows(await api.eventFacts(eventId));
  if (facts.length === 0) {
    container.append(el("p", { class: "muted" }, ["No repeated facts extracted for this event."]));
    return;
  }
  for (const fact of facts) {
    container.append(
      el("div", { class: "fact" }, [
        el("p", { class: "fact-sentence" }, [fact.sentence]),
        el("ul", { class: "fact-sources" }, fact.sources.map((source) =>
          el("li", {}, [
            el("a", { href: `#article-${source.articleId}`, onclick: (event) => { event.preventDefault(); void showArticle(source.articleId); } }, [
              `${source.publisher}: ${source.title}`,
            ]),
          ]),
        )),
      ]),
    );
  }
}

async function showArticle(articleId: string): Promise<void> {
  const doc = await api.article(articleId);
  const overlay = el("div", { class: "modal-backdrop", onclick: () => overlay.remove() }, [articleCard(doc)]);
  document.body.append(overlay);
}

function articleCard(doc: ArticleDocument): HTMLElement {
  const label = doc.label;
  return el("div", { class: "modal" }, [
    el("h3", {}, [doc.article.title]),
    el("p", { class: "muted" }, [`${doc.article.publisher_id} — ${doc.article.canonical_url}`]),
    label
      ? el("p", {}, [
          `${label.topic} / ${label.subtopic} · ${label.news_type} · lean ${label.lean.lean} · tone ${label.tone.tone}`,
        ])
      : el("p", { class: "muted" }, ["not labeled"]),
    el("p", {}, [doc.article.body]),
  ]);
}

// ---------------------------------------------------------------- workbench

async function renderWorkbench(root: HTMLElement): Promise<void> {
  if (!filters.annotator) {
    const input = el("input", { type: "text", placeholder: "annotator id" });
    root.append(
      el("div", { class: "controls" }, [
        input,
        el("button", { onclick: () => navigate({ annotator: (input as HTMLInputElement).value.trim() }) }, ["Start"]),
      ]),
    );
    return;
  }
  if (!workbench || workbenchAnnotator !== filters.annotator) {
    workbench = new WorkbenchController(api, filters.annotator, filters.kind, queue);
    workbenchAnnotator = filters.annotator;
    await workbench.loadNext();
  }
  const controller = workbench;
  const task = controller.current;
  if (!task) {
    root.append(el("p", { class: "placeholder" }, [`No open ${filters.kind} tasks. ${controller.completed} completed this session.`]));
    return;
  }
  root.append(taskPane(controller, task));
}

interface SentenceEditor {
  element: HTMLElement;
  collect(): { sentence: number; [field: string]: string | number }[];
}

/** Per-sentence label editor for sentence review tasks: one row per
 * sentence, selects prefilled with the model's labels; collect() returns
 * only the rows the annotator actually changed. */
function sentenceEditor(sentences: SentenceRow[]): SentenceEditor {
  const fieldChoices: [keyof SentenceRow & string, readonly string[]][] = [
    ["type", SENTENCE_TYPES],
    ["tone", SENTENCE_TONES],
    ["focus", SENTENCE_FOCUS],
  ];
  const selects = new Map<string, HTMLSelectElement>();
  const table = el("table", { class: "sentence-editor" });
  for (const row of sentences) {
    const cells: HTMLElement[] = [
      el("td", { class: "muted" }, [String(row.sentence)]),
      el("td", {}, [row.text]),
    ];
    for (const [field, choices] of fieldChoices) {
      const select = el("select", {});
      for (const choice of choices) {
        const attrs: Record<string, string> = { value: choice };
        if (choice === row[field]) attrs["selected"] = "selected";
        select.append(el("option", attrs, [choice]));
      }
      selects.set(`${row.sentence}:${field}`, select);
      cells.push(el("td", {}, [select]));
    }
    table.append(el("tr", {}, cells));
  }
  return {
    element: table,
    collect() {
      const edits: { sentence: number; [field: string]: string | number }[] = [];
      for (const row of sentences) {
        const changed: Record<string, string> = {};
        for (const [field] of fieldChoices) {
          const value = selects.get(`${row.sentence}:${field}`)!.value;
          if (value !== row[field]) changed[field] = value;
        }
        if (Object.keys(changed).length) edits.push({ sentence: row.sentence, ...changed });
      }
      return edits;
    },
  };
}

function taskPane(controller: WorkbenchController, task: Task): HTMLElement {
  const article = controller.article;
  const payload = task.payload as Record<string, unknown>;
  const message = el("p", { class: "muted" }, [""]);

  const articlePane = el("div", { class: "pane article-pane" }, [
    el("h3", {}, [String(article?.article.title ?? payload["title"] ?? task.task_id)]),
    el("p", {}, [String(article?.article.body ?? "")]),
  ]);

  const modelPane = el("div", { class: "pane model-pane" }, [
    el("h4", {}, [`Model ${String(payload["dimension"] ?? task.kind)}`]),
    el("p", { class: "model-reason" }, [String(payload["model_reason"] ?? payload["event_id"] ?? "")]),
    el("p", {}, [`Label: ${JSON.stringify(payload["model_label"] ?? payload["event_id"] ?? null)}`]),
  ]);

  const editor = task.kind === "sentence" && article ? sentenceEditor(article.sentences) : null;
  const correctionSelect = el("select", { class: "correction" });
  if (editor) {
    modelPane.append(editor.element);
  } else {
    correctionSelect.append(el("option", { value: "" }, ["— corrected label —"]));
    void controller.correctionOptions().then((options) => {
      for (const choice of options.choices) {
        correctionSelect.append(el("option", { value: String(choice) }, [String(choice)]));
      }
      if (options.kind === "event") {
        correctionSelect.append(el("option", { value: "__none__" }, ["not part of any event"]));
      }
      if (options.allowProposal) {
        correctionSelect.append(el("option", { value: "__proposal__" }, ["propose a new topic…"]));
      }
    });
  }

  const verdictButtons = controller.verdictOptions().map((verdict, index) =>
    el("button", { class: "verdict", onclick: () => void submit(verdict) }, [`${index + 1}. ${verdict}`]),
  );

  async function submit(verdict: string): Promise<void> {
    let corrected: unknown;
    if (controller.requiresCorrection(verdict)) {
      if (editor) {
        const edits = editor.collect();
        if (edits.length === 0) {
          message.textContent = "Change at least one sentence label before disagreeing.";
          return;
        }
        corrected = edits;
      } else {
        let value = correctionSelect.value;
        if (value === "__proposal__") {
          value = window.prompt("Proposed new topic name:")?.trim() ?? "";
        }
        if (!value) {
          message.textContent = "Pick a corrected label before submitting a disagreement.";
          return;
        }
        corrected = task.kind === "article_lean" || task.kind === "article_tone" ? Number(value) : value;
        if (task.kind === "event_membership") {
          corrected = { event_id: value === "__none__" ? null : value };
        }
      }
    }
    const outcome = await controller.submit(verdict, corrected);
    if (outcome.status === "conflict") {
      message.textContent = `That task was answered by someone else (${outcome.detail ?? ""}); moved to the next one.`;
    } else if (outcome.status === "queued") {
      message.textContent = "Offline: verdict queued locally and will flush on reconnect.";
    }
    void render();
  }

  setKeyHandler((event: KeyboardEvent) => {
    const verdict = controller.verdictForKey(event.key);
    if (verdict) {
      setKeyHandler(null); // re-armed when the next task renders
      void submit(verdict);
    }
  });

  return el("div", { class: "workbench" }, [
    el("div", { class: "panes" }, [articlePane, modelPane]),
    el("div", { class: "verdicts" }, verdictButtons),
    editor ? el("span", {}, []) : el("div", { class: "controls" }, [correctionSelect]),
    message,
    el("p", { class: "muted" }, [`${controller.completed} completed · queued offline: ${queue.size}`]),
  ]);
}

// ------------------------------------------------------------------ render

async function render(): Promise<void> {
  const root = app();
  clear(root);
  setKeyHandler(null);
  root.append(navBar());
  const body = el("div", { class: "view" });
  root.append(body);
  try {
    if (filters.view === "coverage") await renderCoverage(body);
    else if (filters.view === "events") await renderEvents(body);
    else await renderWorkbench(body);
  } catch (err) {
    const detail = err instanceof ApiError ? err.detail : String(err);
    body.append(el("p", { class: "error" }, [`Request failed: ${detail}`]));
  }
}

void render();
