/** Events view model: the day's events ranked by attention, with
 * drill-through from an event to its top facts and their source articles. */

import type { EventFactsResponse, EventSummary } from "./types.js";

export interface EventRow {
  eventId: string;
  theme: string;
  themeShort: string;
  size: number;
  fraction: number; // of the day's largest event
  publishers: { id: string; count: number }[];
}

export function eventRows(events: EventSummary[]): EventRow[] {
  const ordered = [...events].sort((a, b) => b.size - a.size || a.event_id.localeCompare(b.event_id));
  const largest = ordered.length ? ordered[0].size : 0;
  return ordered.map((event) => ({
    eventId: event.event_id,
    theme: event.theme,
    themeShort: event.theme_short,
    size: event.size,
    fraction: largest ? event.size / largest : 0,
    publishers: Object.entries(event.publisher_counts)
      .map(([id, count]) => ({ id, count }))
      .sort((a, b) => b.count - a.count || a.id.localeCompare(b.id)),
  }));
}

export interface FactRow {
  factId: string;
  sentence: string;
  sources: { articleId: string; title: string; publisher: string; url: string | null; original: string | null }[];
}

export function factRows(response: EventFactsResponse): FactRow[] {
  return response.facts.map((fact) => ({
    factId: fact.fact_id,
    sentence: fact.synthetic_sentence,
    sources: fact.members.map((member) => ({
      articleId: member.article_id,
      title: member.title ?? member.article_id,
      publisher: member.publisher_id ?? "?",
      url: member.url,
      original: member.text,
    })),
  }));
}
