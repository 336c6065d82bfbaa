"""Stratified sampling of labeled articles for human review.

The 11-point lean and tone scales each fold into five buckets
([-5,-4], [-3,-2], [-1..+1], [+2,+3], [+4,+5]); the sampler draws a fixed
number of articles from each of the 25 lean x tone cells, spreading picks
across the distinct underlying score pairs within a cell where it can.
Sampling is a pure function of (store contents, spec, seed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from pressgauge.core.types import ValidationTask

BUCKETS = ((-5, -4), (-3, -2), (-1, 1), (2, 3), (4, 5))


def bucket_of(score: int) -> tuple[int, int]:
    for low, high in BUCKETS:
        if low <= score <= high:
            return (low, high)
    raise ValueError(f"score {score} outside [-5, 5]")


@dataclass(frozen=True)
class StratificationSpec:
    lean_buckets: tuple[tuple[int, int], ...] = BUCKETS
    tone_buckets: tuple[tuple[int, int], ...] = BUCKETS
    per_cell: int = 2

    def __post_init__(self):
        if self.per_cell < 1:
            raise ValueError("per_cell must be >= 1")
        for buckets in (self.lean_buckets, self.tone_buckets):
            covered = sorted(value for low, high in buckets for value in range(low, high + 1))
            if covered != list(range(-5, 6)):
                raise ValueError("buckets must partition [-5, +5]")


@dataclass(frozen=True)
class SampleResult:
    tasks: list[ValidationTask]
    underfilled: dict[str, int]  # cell label -> shortfall


def _cell_label(lean_bucket: tuple[int, int], tone_bucket: tuple[int, int]) -> str:
    return f"lean[{lean_bucket[0]},{lean_bucket[1]}]xtone[{tone_bucket[0]},{tone_bucket[1]}]"


def sample_validation_batch(
    rows: Iterable[Mapping[str, Any]],
    spec: StratificationSpec,
    seed: int,
    kind: str = "article_lean",
) -> SampleResult:
    """Draw ``per_cell`` articles from each lean x tone bucket cell.

    ``rows`` are label views carrying article_id, lean, tone, and the model
    rationale fields used to build task payloads. Cells without enough
    candidates are filled as far as possible and reported as underfilled.
    No article appears twice in a batch (the cells partition the grid).
    """
    if spec.per_cell < 1:
        raise ValueError("per_cell must be positive")
    rows = [r for r in rows if r.get("lean") is not None and r.get("tone") is not None]
    if not rows:
        raise ValueError("no labeled articles to sample from")

    cells: dict[tuple[tuple[int, int], tuple[int, int]], list[Mapping[str, Any]]] = {}
    for row in sorted(rows, key=lambda r: r["article_id"]):
        key = (bucket_of(row["lean"]), bucket_of(row["tone"]))
        cells.setdefault(key, []).append(row)

    rng = random.Random(seed)
    tasks: list[ValidationTask] = []
    underfilled: dict[str, int] = {}
    for lean_bucket in spec.lean_buckets:
        for tone_bucket in spec.tone_buckets:
            candidates = cells.get((lean_bucket, tone_bucket), [])
            picked = _balanced_pick(candidates, spec.per_cell, rng)
            shortfall = spec.per_cell - len(picked)
            if shortfall > 0:
                underfilled[_cell_label(lean_bucket, tone_bucket)] = shortfall
            for row in picked:
                tasks.append(_task_for(row, kind, seed, lean_bucket, tone_bucket))
    return SampleResult(tasks=tasks, underfilled=underfilled)


def _balanced_pick(candidates: list[Mapping[str, Any]], count: int, rng: random.Random) -> list[Mapping[str, Any]]:
    """Pick up to ``count`` rows, round-robin over distinct (lean, tone) values.

    Balancing over the underlying 11-point pairs keeps a cell like
    lean [-1..+1] from being sampled entirely at one score.
    """
    by_value: dict[tuple[int, int], list[Mapping[str, Any]]] = {}
    for row in candidates:
        by_value.setdefault((row["lean"], row["tone"]), []).append(row)
    pools = [list(pool) for _, pool in sorted(by_value.items())]
    for pool in pools:
        rng.shuffle(pool)
    rng.shuffle(pools)

    picked: list[Mapping[str, Any]] = []
    while len(picked) < count and any(pools):
        for pool in pools:
            if pool and len(picked) < count:
                picked.append(pool.pop())
        pools = [p for p in pools if p]
    return picked


_MODEL_LABEL_FIELDS = {
    "article_lean": ("lean", "lean_reason"),
    "article_tone": ("tone", "tone_reason"),
    "article_type": ("news_type", None),
    "topic": ("topic", None),
    # sentence review tasks carry no single label; the reviewer works through
    # the article's sentence records fetched from the article document
    "sentence": (None, None),
}


def _task_for(
    row: Mapping[str, Any],
    kind: str,
    seed: int,
    lean_bucket: tuple[int, int],
    tone_bucket: tuple[int, int],
) -> ValidationTask:
    article_id = row["article_id"]
    label_field, reason_field = _MODEL_LABEL_FIELDS.get(kind, ("lean", "lean_reason"))
    payload = {
        "article_id": article_id,
        "dimension": kind,
        "model_label": row.get(label_field) if label_field else None,
        "model_reason": row.get(reason_field, "") if reason_field else "",
        "news_type": row.get("news_type"),
        "topic": row.get("topic"),
        "lean": row.get("lean"),
        "tone": row.get("tone"),
        "lean_bucket": list(lean_bucket),
        "tone_bucket": list(tone_bucket),
    }
    return ValidationTask(task_id=f"{kind}-s{seed}-{article_id}", kind=kind, payload=payload)
