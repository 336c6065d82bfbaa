"""Aggregate measures over the labeled corpus.

All aggregation runs over flat "article rows" (one dict per labeled
article, assembled by the store layer) so every result is a transparent
arithmetic over raw labels: unweighted means by default, with an optional
prominence weighting (1 / best_rank) behind a flag for research use. Cells
with no articles are omitted rather than reported as zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional, Sequence

from pressgauge.core.hierarchy import TopicHierarchy

GROUP_KEYS = ("publisher", "category", "topic", "subtopic", "event")
MEASURES = ("count", "mean_lean", "mean_tone", "mean_headline_lean", "mean_headline_tone", "mean_focus")

_MEASURE_FIELDS = {
    "mean_lean": "lean",
    "mean_tone": "tone",
    "mean_headline_lean": "headline_lean",
    "mean_headline_tone": "headline_tone",
    "mean_focus": "focus",
}

_GROUP_FIELDS = {
    "publisher": "publisher_id",
    "category": "category",
    "topic": "topic",
    "subtopic": "subtopic",
    "event": "event_id",
}


@dataclass(frozen=True)
class AggregateQuery:
    date_range: tuple[str, str]  # inclusive ISO dates
    publishers: frozenset[str] = frozenset()  # empty = all
    group_by: tuple[str, ...] = ("publisher",)
    measure: str = "count"
    weight_by_rank: bool = False
    use_corrections: bool = False

    def __post_init__(self):
        start, end = self.date_range
        if start > end:
            raise ValueError(f"empty date range {self.date_range}")
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")
        unknown = [g for g in self.group_by if g not in GROUP_KEYS]
        if unknown:
            raise ValueError(f"unknown group_by keys {unknown}")
        if len(set(self.group_by)) != len(self.group_by):
            raise ValueError("repeated group_by key")
        if not self.group_by and self.measure != "count":
            raise ValueError("grouped measures require a nonempty group_by")

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "AggregateQuery":
        return cls(
            date_range=(doc["date_range"][0], doc["date_range"][1]),
            publishers=frozenset(doc.get("publishers", ())),
            group_by=tuple(doc.get("group_by", ("publisher",))),
            measure=doc.get("measure", "count"),
            weight_by_rank=doc.get("weight_by_rank", False),
            use_corrections=doc.get("use_corrections", False),
        )


@dataclass(frozen=True)
class AggregateCell:
    key: tuple[str, ...]
    value: float
    n: int


def _in_range(row: Mapping[str, Any], start: str, end: str) -> bool:
    date = row.get("date")
    return date is not None and start <= date <= end


def select_rows(rows: Iterable[Mapping[str, Any]], query: AggregateQuery) -> list[Mapping[str, Any]]:
    start, end = query.date_range
    out = []
    for row in rows:
        if not _in_range(row, start, end):
            continue
        if query.publishers and row.get("publisher_id") not in query.publishers:
            continue
        out.append(row)
    return out


def aggregate(query: AggregateQuery, rows: Iterable[Mapping[str, Any]]) -> list[AggregateCell]:
    """Group matching rows and compute the measure per cell (exact means)."""
    selected = select_rows(rows, query)
    group_fields = [_GROUP_FIELDS[g] for g in query.group_by]
    groups: dict[tuple[str, ...], list[Mapping[str, Any]]] = {}
    for row in selected:
        key = tuple(str(row.get(f)) for f in group_fields)
        if any(part == "None" for part in key):
            continue  # a row missing a grouping attribute has no cell
        groups.setdefault(key, []).append(row)

    cells = []
    for key in sorted(groups):
        members = groups[key]
        if query.measure == "count":
            cells.append(AggregateCell(key=key, value=float(len(members)), n=len(members)))
            continue
        field_name = _MEASURE_FIELDS[query.measure]
        usable = [r for r in members if r.get(field_name) is not None]
        if not usable:
            continue
        if query.weight_by_rank:
            weights = [1.0 / max(1, r.get("best_rank", 1)) for r in usable]
            value = sum(w * r[field_name] for w, r in zip(weights, usable)) / sum(weights)
        else:
            value = sum(r[field_name] for r in usable) / len(usable)
        cells.append(AggregateCell(key=key, value=value, n=len(usable)))
    return cells


@dataclass(frozen=True)
class DeltaPoint:
    n: int
    mean_article_lean: float
    mean_headline_lean: float
    mean_article_tone: float
    mean_headline_tone: float

    @property
    def delta_lean(self) -> float:
        return self.mean_headline_lean - self.mean_article_lean

    @property
    def delta_tone(self) -> float:
        return self.mean_headline_tone - self.mean_article_tone


@dataclass(frozen=True)
class HeadlineDeltaReport:
    by_category: dict[str, DeltaPoint]
    overall: Optional[DeltaPoint]
    excluded: int  # articles missing headline labels


def _delta_point(rows: Sequence[Mapping[str, Any]]) -> DeltaPoint:
    n = len(rows)
    return DeltaPoint(
        n=n,
        mean_article_lean=sum(r["lean"] for r in rows) / n,
        mean_headline_lean=sum(r["headline_lean"] for r in rows) / n,
        mean_article_tone=sum(r["tone"] for r in rows) / n,
        mean_headline_tone=sum(r["headline_tone"] for r in rows) / n,
    )


def headline_delta(rows: Iterable[Mapping[str, Any]]) -> HeadlineDeltaReport:
    """Paired headline-vs-article means per category plus the overall point."""
    complete, excluded = [], 0
    for row in rows:
        if all(row.get(f) is not None for f in ("lean", "tone", "headline_lean", "headline_tone")):
            complete.append(row)
        else:
            excluded += 1
    by_category: dict[str, list] = {}
    for row in complete:
        by_category.setdefault(row.get("category", "?"), []).append(row)
    return HeadlineDeltaReport(
        by_category={cat: _delta_point(members) for cat, members in sorted(by_category.items())},
        overall=_delta_point(complete) if complete else None,
        excluded=excluded,
    )


def horserace_vs_policy(
    rows: Iterable[Mapping[str, Any]],
    horserace_subtopics: Sequence[str],
    policy_topics: Sequence[str],
    hierarchy: TopicHierarchy,
) -> dict[str, dict[str, int]]:
    """Per-publisher article counts for horse-race vs. policy coverage.

    The two classification sets are configuration; names are validated
    against the hierarchy so a typo fails loudly instead of counting zero.
    """
    known_subtopics = {s for s, _ in hierarchy.subtopics}
    for name in horserace_subtopics:
        if name not in known_subtopics:
            raise ValueError(f"unknown subtopic in horse-race set: {name!r}")
    for name in policy_topics:
        if not hierarchy.has_topic(name):
            raise ValueError(f"unknown topic in policy set: {name!r}")

    horserace = set(horserace_subtopics)
    policy = set(policy_topics)
    counts: dict[str, dict[str, int]] = {}
    for row in rows:
        publisher = row.get("publisher_id")
        if publisher is None:
            continue
        bucket = counts.setdefault(publisher, {"horserace": 0, "policy": 0})
        if row.get("subtopic") in horserace:
            bucket["horserace"] += 1
        if row.get("topic") in policy:
            bucket["policy"] += 1
    return dict(sorted(counts.items()))
