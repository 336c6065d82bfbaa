/** Filter state, serialized into the URL so any view is shareable:
 * reloading a link reproduces the identical view. */

export type ViewName = "coverage" | "events" | "workbench";
export type ColorBy = "lean" | "tone";

export interface Filters {
  view: ViewName;
  start: string;
  end: string;
  publishers: string[];
  topic: string | null; // drill-down target: group coverage by its subtopics
  colorBy: ColorBy;
  date: string; // events view day
  annotator: string;
  kind: string; // workbench task kind
}

export const DEFAULT_FILTERS: Filters = {
  view: "coverage",
  start: "2024-01-01",
  end: "2024-12-31",
  publishers: [],
  topic: null,
  colorBy: "lean",
  date: "2024-10-01",
  annotator: "",
  kind: "article_lean",
};

export function encodeFilters(filters: Filters): string {
  const params = new URLSearchParams();
  params.set("view", filters.view);
  params.set("start", filters.start);
  params.set("end", filters.end);
  for (const publisher of filters.publishers) params.append("publisher", publisher);
  if (filters.topic) params.set("topic", filters.topic);
  params.set("color_by", filters.colorBy);
  params.set("date", filters.date);
  if (filters.annotator) params.set("annotator", filters.annotator);
  params.set("kind", filters.kind);
  return params.toString();
}

export function decodeFilters(query: string): Filters {
  const params = new URLSearchParams(query);
  const view = params.get("view");
  const colorBy = params.get("color_by");
  return {
    view: view === "events" || view === "workbench" ? view : "coverage",
    start: params.get("start") ?? DEFAULT_FILTERS.start,
    end: params.get("end") ?? DEFAULT_FILTERS.end,
    publishers: params.getAll("publisher"),
    topic: params.get("topic"),
    colorBy: colorBy === "tone" ? "tone" : "lean",
    date: params.get("date") ?? DEFAULT_FILTERS.date,
    annotator: params.get("annotator") ?? "",
    kind: params.get("kind") ?? DEFAULT_FILTERS.kind,
  };
}
