"""Agreement rates, confusion matrices, and cluster precision/recall.

Agreement is summarized the way the review workflow uses it: per-annotator
verdict fractions first, then the mean and population standard deviation of
those fractions across annotators (the annotator set is the whole population
of interest, so the SD is not sample-corrected).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from pressgauge.core.types import BINARY_VERDICTS, SCALE_VERDICTS

SCALE_DIMENSIONS = ("article_lean", "article_tone")
BINARY_DIMENSIONS = ("topic", "article_type", "sentence", "event_membership")


def verdict_levels(dimension: str) -> tuple[str, ...]:
    if dimension in SCALE_DIMENSIONS:
        return SCALE_VERDICTS
    if dimension in BINARY_DIMENSIONS:
        return BINARY_VERDICTS
    raise ValueError(f"unknown dimension {dimension!r}")


@dataclass(frozen=True)
class AgreementReport:
    dimension: str
    levels: tuple[str, ...]
    mean: dict[str, float]  # level -> mean fraction across annotators
    sd: dict[str, float]  # level -> population SD across annotators
    annotators: int
    n: int  # total responses

    def to_doc(self) -> dict:
        return {
            "dimension": self.dimension,
            "levels": list(self.levels),
            "mean": self.mean,
            "sd": self.sd,
            "annotators": self.annotators,
            "n": self.n,
        }


def _population_sd(values: Sequence[float]) -> float:
    mean = sum(values) / len(values)
    return math.sqrt(sum((v - mean) ** 2 for v in values) / len(values))


def agreement_report(responses: Iterable[tuple[str, str]], dimension: str) -> AgreementReport:
    """Verdict fractions per annotator, averaged across annotators.

    ``responses`` are (annotator_id, verdict) pairs. Each annotator's
    fractions sum to 1; a single annotator yields SD 0 everywhere.
    """
    levels = verdict_levels(dimension)
    by_annotator: dict[str, dict[str, int]] = {}
    total = 0
    for annotator, verdict in responses:
        if verdict not in levels:
            raise ValueError(f"verdict {verdict!r} not valid for dimension {dimension!r}")
        counts = by_annotator.setdefault(annotator, {level: 0 for level in levels})
        counts[verdict] += 1
        total += 1
    if not by_annotator:
        raise ValueError("no responses to report on")

    fractions = {
        annotator: {level: counts[level] / sum(counts.values()) for level in levels}
        for annotator, counts in by_annotator.items()
    }
    mean = {level: sum(f[level] for f in fractions.values()) / len(fractions) for level in levels}
    sd = {level: _population_sd([f[level] for f in fractions.values()]) for level in levels}
    return AgreementReport(dimension=dimension, levels=levels, mean=mean, sd=sd, annotators=len(fractions), n=total)


@dataclass(frozen=True)
class ConfusionMatrix:
    labels: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]  # rows = model, columns = human
    n: int

    @property
    def accuracy(self) -> float:
        return sum(self.matrix[i][i] for i in range(len(self.labels))) / self.n

    def to_doc(self) -> dict:
        return {
            "labels": list(self.labels),
            "matrix": [list(row) for row in self.matrix],
            "n": self.n,
            "accuracy": self.accuracy,
        }


def confusion_matrix(pairs: Iterable[tuple[str, str]], label_space: Sequence[str]) -> ConfusionMatrix:
    """(model label, human label) pairs -> confusion counts.

    Accuracy is the diagonal mass over the total; labels outside the space
    are an error because they mean the comparison was set up wrong.
    """
    labels = tuple(label_space)
    index = {label: i for i, label in enumerate(labels)}
    counts = [[0] * len(labels) for _ in labels]
    n = 0
    for model_label, human_label in pairs:
        if model_label not in index:
            raise ValueError(f"model label {model_label!r} outside the label space")
        if human_label not in index:
            raise ValueError(f"human label {human_label!r} outside the label space")
        counts[index[model_label]][index[human_label]] += 1
        n += 1
    if n == 0:
        raise ValueError("cannot build a confusion matrix from no pairs")
    return ConfusionMatrix(labels=labels, matrix=tuple(tuple(row) for row in counts), n=n)


@dataclass(frozen=True)
class ClusterPrf:
    precision: float
    recall: float
    f1: float
    clustered: int
    confirmed: int
    human_identified: int

    def to_doc(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "clustered": self.clustered,
            "confirmed": self.confirmed,
            "human_identified": self.human_identified,
        }


def cluster_prf(
    assignments: Mapping[str, Optional[str]],
    verdicts: Mapping[str, tuple[str, Optional[str]]],
    known_events: Optional[set[str]] = None,
) -> ClusterPrf:
    """Precision/recall/F1 of event membership against human verdicts.

    ``assignments`` maps article -> event (None when unclustered);
    ``verdicts`` maps article -> (kind, event) where kind is "correct",
    "other_event" (with the corrected event), or "no_event". When
    ``known_events`` is given, a reassignment to an event outside it is an
    error (the verdict references an event that does not exist).

    precision: fraction of clustered members the human confirmed.
    recall: fraction of human-identified memberships the clustering captured.
    """
    clustered = {a: e for a, e in assignments.items() if e is not None}
    if not clustered:
        raise ValueError("precision undefined: no clustered members")
    confirmed = 0
    human_memberships = 0
    for article, (kind, event) in verdicts.items():
        if kind == "correct":
            if article not in clustered:
                raise ValueError(f"verdict confirms {article!r} which is not clustered")
            confirmed += 1
            human_memberships += 1
        elif kind == "other_event":
            if event is None:
                raise ValueError(f"verdict for {article!r} names no event")
            if known_events is not None and event not in known_events:
                raise ValueError(f"verdict for {article!r} references unknown event {event!r}")
            human_memberships += 1
        elif kind == "no_event":
            pass
        else:
            raise ValueError(f"unknown verdict kind {kind!r}")
    for article in clustered:
        if article not in verdicts:
            raise ValueError(f"clustered article {article!r} has no verdict")
    if human_memberships == 0:
        raise ValueError("recall undefined: the human identified no event members")

    precision = confirmed / len(clustered)
    recall = confirmed / human_memberships
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return ClusterPrf(
        precision=precision,
        recall=recall,
        f1=f1,
        clustered=len(clustered),
        confirmed=confirmed,
        human_identified=human_memberships,
    )
