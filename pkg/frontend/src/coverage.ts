/** Coverage view model: server aggregates in, bars out.
 *
 * The server computes counts and means; this module only maps them to bar
 * geometry and colors. Both color dimensions arrive in one response, so
 * toggling lean/tone recolors without another request.
 */

import type { ColorBy } from "./state.js";
import type { CoverageGroup, CoverageResponse } from "./types.js";

export interface CoverageBar {
  label: string;
  count: number;
  /** Bar length as a fraction of the largest group. */
  fraction: number;
  colorValue: number | null;
  color: string;
  drillTopic: string | null; // set when clicking should drill into subtopics
}

/** Diverging palette over [-5, +5]: blue (negative) through gray to red. */
export function scoreColor(value: number | null): string {
  if (value === null) return "#b8b8b8";
  const clamped = Math.max(-5, Math.min(5, value));
  const t = (clamped + 5) / 10;
  const blue: [number, number, number] = [47, 84, 151];
  const mid: [number, number, number] = [225, 225, 225];
  const red: [number, number, number] = [179, 39, 41];
  const mix = (a: [number, number, number], b: [number, number, number], f: number) =>
    a.map((av, i) => Math.round(av + (b[i] - av) * f)) as [number, number, number];
  const rgb = t < 0.5 ? mix(blue, mid, t * 2) : mix(mid, red, (t - 0.5) * 2);
  return `rgb(${rgb[0]}, ${rgb[1]}, ${rgb[2]})`;
}

function colorValueOf(group: CoverageGroup, colorBy: ColorBy): number | null {
  return colorBy === "lean" ? group.mean_lean : group.mean_tone;
}

export function coverageBars(response: CoverageResponse, colorBy: ColorBy): CoverageBar[] {
  const groups = [...response.groups].sort((a, b) => b.count - a.count);
  const largest = groups.length ? groups[0].count : 0;
  const topicGrouped = response.group_by.length === 1 && response.group_by[0] === "topic";
  return groups.map((group) => {
    const label = response.group_by.map((field) => group.key[field]).join(" / ");
    const value = colorValueOf(group, colorBy);
    return {
      label,
      count: group.count,
      fraction: largest ? group.count / largest : 0,
      colorValue: value,
      color: scoreColor(value),
      drillTopic: topicGrouped ? group.key["topic"] : null,
    };
  });
}

export function isEmptyRange(response: CoverageResponse): boolean {
  return response.groups.length === 0;
}
