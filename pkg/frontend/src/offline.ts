/** Verdict submissions survive a dead network.
 *
 * When a submit fails with a network-level error it is queued (persisted in
 * storage when available) and flushed in order once the API is reachable
 * again. Server-side rejections (4xx) are never queued: those need the
 * annotator's attention, not a retry.
 */

import { ApiClient, NetworkError } from "./api.js";
import type { SubmitBody } from "./types.js";

export interface QueuedSubmission {
  taskId: string;
  body: SubmitBody;
}

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

const STORAGE_KEY = "pressgauge.pending-verdicts";

export class OfflineQueue {
  private pending: QueuedSubmission[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly storage: StorageLike | null = null,
  ) {
    if (this.storage) {
      const saved = this.storage.getItem(STORAGE_KEY);
      if (saved) {
        try {
          this.pending = JSON.parse(saved) as QueuedSubmission[];
        } catch {
          this.storage.removeItem(STORAGE_KEY);
        }
      }
    }
  }

  get size(): number {
    return this.pending.length;
  }

  private persist(): void {
    if (!this.storage) return;
    if (this.pending.length === 0) {
      this.storage.removeItem(STORAGE_KEY);
    } else {
      this.storage.setItem(STORAGE_KEY, JSON.stringify(this.pending));
    }
  }

  /** Submit now, or queue when the network is down. Returns "stored" | "queued". */
  async submit(taskId: string, body: SubmitBody): Promise<"stored" | "queued"> {
    try {
      await this.api.submitResponse(taskId, body);
      return "stored";
    } catch (err) {
      if (err instanceof NetworkError) {
        this.pending.push({ taskId, body });
        this.persist();
        return "queued";
      }
      throw err;
    }
  }

  /** Resubmit queued verdicts in order; stops at the first network failure. */
  async flush(): Promise<number> {
    let flushed = 0;
    while (this.pending.length > 0) {
      const next = this.pending[0];
      try {
        await this.api.submitResponse(next.taskId, next.body);
      } catch (err) {
        if (err instanceof NetworkError) break;
        // The server refused it (e.g. answered elsewhere meanwhile): drop it,
        // the workbench will surface the conflict on the next claim.
      }
      this.pending.shift();
      this.persist();
      flushed += 1;
    }
    return flushed;
  }

  /** Wire the browser's reconnect signal to a flush. */
  attachToWindow(target: { addEventListener(type: string, handler: () => void): void }): void {
    target.addEventListener("online", () => {
      void this.flush();
    });
  }
}
