/** Typed client for the pressgauge HTTP API.
 *
 * Every request the UI makes goes through this module, so the documented
 * endpoints are the only surface the browser touches. Aggregation always
 * happens server-side; the client only reshapes responses for display.
 */

import type {
  AgreementReport,
  ArticleDocument,
  CoverageResponse,
  EventFactsResponse,
  EventsResponse,
  HierarchyDoc,
  SubmitBody,
  Task,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

/** 409: someone else claimed or answered the task first. */
export class ConflictError extends ApiError {}

/** The request never reached the server (offline, DNS, aborted). */
export class NetworkError extends Error {}

export interface CoverageFilters {
  start: string;
  end: string;
  publishers?: string[];
  topic?: string;
  category?: string;
  groupBy?: string[];
  useCorrections?: boolean;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly token: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private headers(json: boolean): Record<string, string> {
    const headers: Record<string, string> = {};
    if (json) headers["Content-Type"] = "application/json";
    if (this.token) headers["X-Api-Token"] = this.token;
    return headers;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, {
        method,
        headers: this.headers(body !== undefined),
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new NetworkError(String(err));
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const doc = await response.json();
        if (doc && typeof doc.detail === "string") detail = doc.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      if (response.status === 409) throw new ConflictError(response.status, detail);
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  coverage(filters: CoverageFilters): Promise<CoverageResponse> {
    const params = new URLSearchParams({ start: filters.start, end: filters.end });
    for (const publisher of filters.publishers ?? []) params.append("publisher", publisher);
    if (filters.topic) params.set("topic", filters.topic);
    if (filters.category) params.set("category", filters.category);
    if (filters.groupBy?.length) params.set("group_by", filters.groupBy.join(","));
    if (filters.useCorrections) params.set("use_corrections", "true");
    return this.request("GET", `/coverage?${params}`);
  }

  events(date: string): Promise<EventsResponse> {
    return this.request("GET", `/events?${new URLSearchParams({ date })}`);
  }

  eventFacts(eventId: string): Promise<EventFactsResponse> {
    return this.request("GET", `/events/${encodeURIComponent(eventId)}/facts`);
  }

  article(articleId: string): Promise<ArticleDocument> {
    return this.request("GET", `/articles/${encodeURIComponent(articleId)}`);
  }

  hierarchy(): Promise<HierarchyDoc> {
    return this.request("GET", "/hierarchy");
  }

  nextTask(kind: string, annotator: string): Promise<{ task: Task | null }> {
    return this.request("GET", `/tasks/next?${new URLSearchParams({ kind, annotator })}`);
  }

  submitResponse(taskId: string, body: SubmitBody): Promise<{ stored: boolean }> {
    return this.request("POST", `/tasks/${encodeURIComponent(taskId)}/response`, body);
  }

  sampleBatch(body: { seed?: number; kind: string; per_cell?: number; date?: string }): Promise<{ tasks: number; created: number }> {
    return this.request("POST", "/tasks/sample", body);
  }

  agreement(dimension: string): Promise<AgreementReport> {
    return this.request("GET", `/reports/agreement?${new URLSearchParams({ dimension })}`);
  }

  confusion(dimension: string): Promise<Record<string, unknown>> {
    return this.request("GET", `/reports/confusion?${new URLSearchParams({ dimension })}`);
  }

  clusterPrf(): Promise<Record<string, unknown>> {
    return this.request("GET", "/reports/cluster-prf");
  }
}
