/** Shapes of the documents the pressgauge API serves. */

export interface CoverageGroup {
  key: Record<string, string>;
  count: number;
  mean_lean: number | null;
  mean_tone: number | null;
  mean_headline_lean: number | null;
  mean_headline_tone: number | null;
}

export interface CoverageResponse {
  start: string;
  end: string;
  group_by: string[];
  groups: CoverageGroup[];
}

export interface EventSummary {
  event_id: string;
  day: string;
  theme: string;
  theme_short: string;
  size: number;
  publisher_counts: Record<string, number>;
}

export interface EventsResponse {
  date: string;
  events: EventSummary[];
}

export interface FactMember {
  article_id: string;
  sentence: number;
  text: string | null;
  publisher_id: string | null;
  title: string | null;
  url: string | null;
}

export interface FactCluster {
  fact_id: string;
  synthetic_sentence: string;
  members: FactMember[];
}

export interface EventFactsResponse {
  event_id: string;
  theme: string;
  facts: FactCluster[];
}

export interface ScoredLabel {
  lean?: number;
  tone?: number;
  reason: string;
}

export interface ArticleLabel {
  article_id: string;
  category: string;
  topic: string;
  subtopic: string;
  takeaways: string;
  news_type: string;
  justification: string;
  lean: ScoredLabel;
  tone: ScoredLabel;
  headline_lean: ScoredLabel;
  headline_tone: ScoredLabel;
  model_id: string;
  labeled_at: string;
  hierarchy_version: number;
}

export interface SentenceRow {
  sentence: number;
  text: string;
  type: string;
  tone: string;
  focus: string;
}

export interface Overlay {
  article_id: string;
  dimension: string;
  corrected_label: unknown;
  annotator_id: string;
  task_id: string;
}

export interface ArticleDocument {
  article: {
    article_id: string;
    publisher_id: string;
    canonical_url: string;
    title: string;
    body: string;
    published_at: string | null;
    first_seen_snapshot: string;
    best_rank: number;
  };
  label: ArticleLabel | null;
  sentences: SentenceRow[];
  quotes: Record<string, string>[];
  overlays: Overlay[];
}

export interface Task {
  task_id: string;
  kind: string;
  payload: Record<string, unknown>;
  annotator_id: string | null;
}

export interface AgreementReport {
  dimension: string;
  levels: string[];
  mean: Record<string, number>;
  sd: Record<string, number>;
  annotators: number;
  n: number;
}

export interface HierarchyDoc {
  version: number;
  categories: string[];
  topics: { name: string; category: string }[];
  subtopics: { name: string; topic: string }[];
}

export interface SubmitBody {
  annotator_id: string;
  verdict: string;
  corrected_label?: unknown;
}

export const SCALE_VERDICTS = [
  "Agree",
  "Somewhat Agree",
  "Neither Agree nor Disagree",
  "Somewhat Disagree",
  "Disagree",
] as const;

export const BINARY_VERDICTS = ["Agree", "Disagree"] as const;

export const DISAGREE_VERDICTS = new Set(["Somewhat Disagree", "Disagree"]);

export const NEWS_TYPES = ["news report", "news analysis", "opinion"] as const;

export const SENTENCE_TYPES = ["fact", "opinion", "borderline", "quote", "other"] as const;
export const SENTENCE_TONES = ["positive", "negative", "neutral"] as const;
export const SENTENCE_FOCUS = ["democrat", "republican", "both", "neither"] as const;

export const LIKERT_SCORES: number[] = Array.from({ length: 11 }, (_, i) => i - 5);
