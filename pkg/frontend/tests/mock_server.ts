/** In-memory double of the pressgauge validation API.
 *
 * Mirrors the documented semantics the browser relies on: atomic task
 * claiming, one response per task with 409 on cross-annotator conflicts,
 * overlays written for disagreements without touching the model label, and
 * the agreement report recomputed from stored responses (per-annotator
 * fractions, mean and population SD across annotators).
 */

import type { FetchLike } from "../src/api.js";
import type { ArticleDocument, EventFactsResponse, EventSummary, SubmitBody, Task } from "../src/types.js";
import { DISAGREE_VERDICTS } from "../src/types.js";

interface StoredResponse extends SubmitBody {
  task_id: string;
}

export class MockServer {
  tasks = new Map<string, Task>();
  responses = new Map<string, StoredResponse>();
  articles = new Map<string, ArticleDocument>();
  events: EventSummary[] = [];
  facts = new Map<string, EventFactsResponse>();
  coverage: unknown = { start: "", end: "", group_by: ["topic"], groups: [] };
  hierarchyTopics: { name: string; category: string }[] = [{ name: "Elections", category: "Politics" }];
  requestLog: string[] = [];
  offline = false;

  fetch: FetchLike = async (url, init) => {
    if (this.offline) throw new TypeError("network down");
    this.requestLog.push(`${init?.method ?? "GET"} ${url}`);
    const parsed = new URL(url, "http://mock");
    const path = parsed.pathname;
    const method = init?.method ?? "GET";

    if (method === "GET" && path === "/tasks/next") {
      return this.claimNext(parsed.searchParams.get("kind") ?? "", parsed.searchParams.get("annotator") ?? "");
    }
    const respond = path.match(/^\/tasks\/([^/]+)\/response$/);
    if (method === "POST" && respond) {
      return this.submit(decodeURIComponent(respond[1]), JSON.parse(String(init?.body)) as SubmitBody);
    }
    if (method === "GET" && path === "/reports/agreement") {
      return this.agreement(parsed.searchParams.get("dimension") ?? "");
    }
    const article = path.match(/^\/articles\/([^/]+)$/);
    if (method === "GET" && article) {
      const doc = this.articles.get(decodeURIComponent(article[1]));
      return doc ? json(doc) : json({ detail: "unknown article" }, 404);
    }
    if (method === "GET" && path === "/events") {
      return json({ date: parsed.searchParams.get("date"), events: this.events });
    }
    const factsMatch = path.match(/^\/events\/([^/]+)\/facts$/);
    if (method === "GET" && factsMatch) {
      const doc = this.facts.get(decodeURIComponent(factsMatch[1]));
      return doc ? json(doc) : json({ detail: "unknown event" }, 404);
    }
    if (method === "GET" && path === "/coverage") {
      return json(this.coverage);
    }
    if (method === "GET" && path === "/hierarchy") {
      return json({ version: 1, categories: ["Politics"], topics: this.hierarchyTopics, subtopics: [] });
    }
    return json({ detail: `unhandled ${method} ${path}` }, 500);
  };

  private claimNext(kind: string, annotator: string): Response {
    const open = [...this.tasks.values()]
      .filter((t) => t.kind === kind && !this.responses.has(t.task_id))
      .sort((a, b) => a.task_id.localeCompare(b.task_id));
    const resumed = open.find((t) => t.annotator_id === annotator);
    const candidate = resumed ?? open.find((t) => t.annotator_id === null);
    if (!candidate) return json({ task: null });
    const claimed = { ...candidate, annotator_id: annotator };
    this.tasks.set(claimed.task_id, claimed);
    return json({ task: claimed });
  }

  private submit(taskId: string, body: SubmitBody): Response {
    const task = this.tasks.get(taskId);
    if (!task) return json({ detail: "unknown task" }, 404);
    if (task.annotator_id !== null && task.annotator_id !== body.annotator_id) {
      return json({ detail: "task claimed by another annotator" }, 409);
    }
    const existing = this.responses.get(taskId);
    if (existing && existing.annotator_id !== body.annotator_id) {
      return json({ detail: "task already answered by another annotator" }, 409);
    }
    const disagrees = DISAGREE_VERDICTS.has(body.verdict);
    if (disagrees && body.corrected_label === undefined) {
      return json({ detail: "a disagreeing verdict requires a corrected label" }, 400);
    }
    this.responses.set(taskId, { task_id: taskId, ...body });
    this.tasks.set(taskId, { ...task, annotator_id: body.annotator_id });

    if (disagrees) {
      const articleId = String(task.payload["article_id"] ?? "");
      const doc = this.articles.get(articleId);
      if (doc) {
        doc.overlays.push({
          article_id: articleId,
          dimension: String(task.payload["dimension"] ?? task.kind),
          corrected_label: body.corrected_label,
          annotator_id: body.annotator_id,
          task_id: taskId,
        });
      }
    }
    return json({ stored: true, task_id: taskId });
  }

  private agreement(dimension: string): Response {
    const perAnnotator = new Map<string, Map<string, number>>();
    let total = 0;
    for (const response of this.responses.values()) {
      const task = this.tasks.get(response.task_id);
      if (!task || task.kind !== dimension) continue;
      const counts = perAnnotator.get(response.annotator_id) ?? new Map<string, number>();
      counts.set(response.verdict, (counts.get(response.verdict) ?? 0) + 1);
      perAnnotator.set(response.annotator_id, counts);
      total += 1;
    }
    const levels = ["Agree", "Somewhat Agree", "Neither Agree nor Disagree", "Somewhat Disagree", "Disagree"];
    const mean: Record<string, number> = {};
    const sd: Record<string, number> = {};
    const annotators = [...perAnnotator.values()];
    for (const level of levels) {
      const fractions = annotators.map((counts) => {
        const n = [...counts.values()].reduce((a, b) => a + b, 0);
        return n ? (counts.get(level) ?? 0) / n : 0;
      });
      const m = fractions.length ? fractions.reduce((a, b) => a + b, 0) / fractions.length : 0;
      mean[level] = m;
      sd[level] = fractions.length
        ? Math.sqrt(fractions.reduce((a, f) => a + (f - m) ** 2, 0) / fractions.length)
        : 0;
    }
    return json({ dimension, levels, mean, sd, annotators: perAnnotator.size, n: total });
  }
}

function json(doc: unknown, status = 200): Response {
  return new Response(JSON.stringify(doc), { status, headers: { "Content-Type": "application/json" } });
}

// ------------------------------------------------------------ seed helpers

export function makeTask(taskId: string, articleId: string, modelLean: number): Task {
  return {
    task_id: taskId,
    kind: "article_lean",
    payload: {
      article_id: articleId,
      dimension: "article_lean",
      model_label: modelLean,
      model_reason: "Model rationale for the score.",
    },
    annotator_id: null,
  };
}

export function makeArticle(articleId: string, lean: number): ArticleDocument {
  return {
    article: {
      article_id: articleId,
      publisher_id: "usa-today",
      canonical_url: `https://example.test/${articleId}`,
      title: `Headline for ${articleId}`,
      body: "First sentence. Second sentence.",
      published_at: "2024-08-01",
      first_seen_snapshot: "usa-today/2024-08-01T06:00:00-04:00",
      best_rank: 1,
    },
    label: {
      article_id: articleId,
      category: "Politics",
      topic: "Elections",
      subtopic: "Presidential Horse Race",
      takeaways: "Summary.",
      news_type: "news report",
      justification: "Reports facts.",
      lean: { lean, reason: "Model rationale for the score." },
      tone: { tone: 0, reason: "Neutral." },
      headline_lean: { lean: 0, reason: "Neutral title." },
      headline_tone: { tone: 0, reason: "Flat title." },
      model_id: "test-model",
      labeled_at: "2024-08-01T00:00:00Z",
      hierarchy_version: 1,
    },
    sentences: [],
    quotes: [],
    overlays: [],
  };
}

/** A 50-task stratified batch: 25 lean x tone cells x 2 articles. */
export function seedStratifiedBatch(server: MockServer): string[] {
  const ids: string[] = [];
  let i = 0;
  for (const leanBucket of [-5, -3, 0, 2, 4]) {
    for (const toneBucket of [-5, -3, 0, 2, 4]) {
      for (let k = 0; k < 2; k++) {
        const articleId = `art-${String(i).padStart(3, "0")}`;
        const taskId = `article_lean-s7-${articleId}`;
        server.articles.set(articleId, makeArticle(articleId, leanBucket));
        server.tasks.set(taskId, makeTask(taskId, articleId, leanBucket));
        ids.push(taskId);
        i += 1;
        void toneBucket;
      }
    }
  }
  return ids;
}
