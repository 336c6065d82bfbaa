/** The annotation workbench flow.
 *
 * Claim a task, show the article beside the model's analysis, collect the
 * agreement verdict (keyboard 1-5 or click), require a corrected label when
 * the verdict disagrees, submit, advance. Corrections are constrained to the
 * same closed vocabularies the schema enforces; the only free text allowed
 * is a new-topic proposal, which the server routes to the hierarchy review
 * queue rather than applying.
 */

import { ApiClient, ConflictError } from "./api.js";
import { OfflineQueue } from "./offline.js";
import type { ArticleDocument, EventSummary, Task } from "./types.js";
import { BINARY_VERDICTS, DISAGREE_VERDICTS, LIKERT_SCORES, NEWS_TYPES, SCALE_VERDICTS } from "./types.js";

const SCALE_KINDS = new Set(["article_lean", "article_tone"]);

export type SubmitStatus = "stored" | "queued" | "conflict" | "correction_required";

export interface SubmitOutcome {
  status: SubmitStatus;
  detail?: string;
}

export interface CorrectionOptions {
  kind: "score" | "news_type" | "topic" | "event" | "sentence" | "binary";
  /** Closed list the picker renders; topic corrections also allow a proposal.
   * Sentence corrections use the per-sentence editor instead of a picker. */
  choices: (string | number)[];
  allowProposal: boolean;
}

export class WorkbenchController {
  current: Task | null = null;
  article: ArticleDocument | null = null;
  dayEvents: EventSummary[] = [];
  completed = 0;

  private readonly queue: OfflineQueue;

  constructor(
    private readonly api: ApiClient,
    private readonly annotator: string,
    private readonly kind: string,
    queue?: OfflineQueue,
  ) {
    if (!annotator) throw new Error("annotator id required");
    this.queue = queue ?? new OfflineQueue(api);
  }

  verdictOptions(): readonly string[] {
    return SCALE_KINDS.has(this.kind) ? SCALE_VERDICTS : BINARY_VERDICTS;
  }

  /** Keyboard shortcuts: "1".."5" map onto the verdict options. */
  verdictForKey(key: string): string | null {
    const options = this.verdictOptions();
    const index = Number.parseInt(key, 10) - 1;
    return Number.isInteger(index) && index >= 0 && index < options.length ? options[index] : null;
  }

  requiresCorrection(verdict: string): boolean {
    return DISAGREE_VERDICTS.has(verdict);
  }

  async correctionOptions(): Promise<CorrectionOptions> {
    if (SCALE_KINDS.has(this.kind)) {
      return { kind: "score", choices: LIKERT_SCORES, allowProposal: false };
    }
    if (this.kind === "article_type") {
      return { kind: "news_type", choices: [...NEWS_TYPES], allowProposal: false };
    }
    if (this.kind === "topic") {
      const hierarchy = await this.api.hierarchy();
      return { kind: "topic", choices: hierarchy.topics.map((t) => t.name), allowProposal: true };
    }
    if (this.kind === "event_membership") {
      return { kind: "event", choices: this.dayEvents.map((e) => e.event_id), allowProposal: false };
    }
    if (this.kind === "sentence") {
      return { kind: "sentence", choices: [], allowProposal: false };
    }
    return { kind: "binary", choices: [], allowProposal: false };
  }

  /** Claim the next open task and load its article and context. */
  async loadNext(): Promise<Task | null> {
    const { task } = await this.api.nextTask(this.kind, this.annotator);
    this.current = task;
    this.article = null;
    this.dayEvents = [];
    if (task) {
      const articleId = task.payload["article_id"];
      if (typeof articleId === "string") {
        this.article = await this.api.article(articleId);
      }
      if (task.kind === "event_membership" && typeof task.payload["date"] === "string") {
        this.dayEvents = (await this.api.events(task.payload["date"])).events;
      }
    }
    return task;
  }

  /** Submit the verdict for the current task and advance on success. */
  async submit(verdict: string, correctedLabel?: unknown): Promise<SubmitOutcome> {
    if (!this.current) throw new Error("no task claimed");
    if (this.requiresCorrection(verdict) && correctedLabel === undefined) {
      return { status: "correction_required", detail: "pick a corrected label before submitting" };
    }
    const body = {
      annotator_id: this.annotator,
      verdict,
      ...(this.requiresCorrection(verdict) ? { corrected_label: correctedLabel } : {}),
    };
    try {
      const status = await this.queue.submit(this.current.task_id, body);
      this.completed += 1;
      if (status === "queued") {
        // Offline: the verdict is parked locally. Claiming the next task
        // would fail too, so pause the session until reconnect.
        this.current = null;
        this.article = null;
        return { status };
      }
      await this.loadNext();
      return { status };
    } catch (err) {
      if (err instanceof ConflictError) {
        // Someone else answered it first; move on with an explanation.
        const detail = err.detail;
        await this.loadNext();
        return { status: "conflict", detail };
      }
      throw err;
    }
  }

  /** Run until the queue of open tasks is drained (used by scripted sessions). */
  async completeSession(decide: (task: Task, article: ArticleDocument | null) => { verdict: string; corrected?: unknown }): Promise<number> {
    await this.loadNext();
    while (this.current) {
      const { verdict, corrected } = decide(this.current, this.article);
      const outcome = await this.submit(verdict, corrected);
      if (outcome.status === "correction_required") {
        throw new Error(`session stalled: ${outcome.detail}`);
      }
    }
    return this.completed;
  }
}
