"""Applying annotator corrections as overlay versions.

A correction never touches the model's label: it is stored as a separate
overlay document keyed by (article, dimension, annotator). Identical
re-submissions are no-ops (the store deduplicates by content), conflicting
corrections from different annotators are both kept and flagged for
adjudication, and a corrected topic that is not in the hierarchy becomes a
new-topic proposal queued for editorial review.
"""

from __future__ import annotations

from typing import Any, Iterable, Optional

from pressgauge.core.hierarchy import TopicHierarchy
from pressgauge.core.types import (
    DISAGREE_VERDICTS,
    NEWS_TYPES,
    SENTENCE_FOCUS,
    SENTENCE_TONES,
    SENTENCE_TYPES,
    LikertScore,
    ValidationResponse,
    ValidationTask,
)
from pressgauge.errors import SchemaError
from pressgauge.store.db import VersionedStore

_SCORE_DIMENSIONS = frozenset({"article_lean", "article_tone"})


def _check_corrected(dimension: str, label: Any, hierarchy: Optional[TopicHierarchy]) -> str:
    """Corrected labels pass the same checks as model labels.

    Returns "overlay" or "proposal" (new-topic suggestions are queued, not
    applied).
    """
    if dimension in _SCORE_DIMENSIONS:
        if not isinstance(label, int) or isinstance(label, bool) or not (LikertScore.MIN <= label <= LikertScore.MAX):
            raise SchemaError(dimension, f"corrected score {label!r} outside [-5, 5]")
        return "overlay"
    if dimension == "article_type":
        if label not in NEWS_TYPES:
            raise SchemaError(dimension, f"corrected type {label!r} not one of {NEWS_TYPES}")
        return "overlay"
    if dimension == "topic":
        if not isinstance(label, str) or not label.strip():
            raise SchemaError(dimension, "corrected topic must be a nonempty name")
        if hierarchy is not None and not hierarchy.has_topic(label):
            return "proposal"
        return "overlay"
    if dimension == "sentence":
        _check_sentence_corrections(label)
        return "overlay"
    if dimension == "event_membership":
        return "overlay"
    raise SchemaError(dimension, f"unknown correction dimension {dimension!r}")


_SENTENCE_FIELD_VALUES = {"type": SENTENCE_TYPES, "tone": SENTENCE_TONES, "focus": SENTENCE_FOCUS}


def _check_sentence_corrections(label: Any) -> None:
    """Sentence corrections: a list of per-sentence edits, closed values only."""
    if not isinstance(label, list) or not label:
        raise SchemaError("sentence", "corrected label must be a nonempty list of sentence edits")
    for edit in label:
        if not isinstance(edit, dict):
            raise SchemaError("sentence", "each sentence edit must be an object")
        index = edit.get("sentence")
        if not isinstance(index, int) or isinstance(index, bool) or index < 1:
            raise SchemaError("sentence", f"edit needs a 1-based sentence number, got {index!r}")
        fields = {k: v for k, v in edit.items() if k != "sentence"}
        if not fields:
            raise SchemaError("sentence", f"edit for sentence {index} changes nothing")
        for field, value in fields.items():
            allowed = _SENTENCE_FIELD_VALUES.get(field)
            if allowed is None:
                raise SchemaError("sentence", f"unknown sentence field {field!r}")
            if value not in allowed:
                raise SchemaError("sentence", f"{field} value {value!r} not in {allowed}")


def apply_corrections(
    responses: Iterable[tuple[ValidationTask, ValidationResponse]],
    store: VersionedStore,
    hierarchy: Optional[TopicHierarchy] = None,
) -> dict[str, Any]:
    """Store overlays for every disagreeing response; returns a change log."""
    written, proposals, conflicts, skipped = [], [], [], 0
    for task, response in responses:
        if response.verdict not in DISAGREE_VERDICTS:
            skipped += 1
            continue
        article_id = task.payload.get("article_id", task.task_id)
        dimension = task.payload.get("dimension", task.kind)
        route = _check_corrected(dimension, response.corrected_label, hierarchy)
        if route == "proposal":
            proposal = {
                "proposed_topic": response.corrected_label,
                "article_id": article_id,
                "annotator_id": response.annotator_id,
                "task_id": task.task_id,
            }
            store.put("topic_proposal", f"{response.corrected_label}", proposal)
            proposals.append(proposal)
            continue
        overlay = {
            "article_id": article_id,
            "dimension": dimension,
            "corrected_label": response.corrected_label,
            "annotator_id": response.annotator_id,
            "task_id": task.task_id,
        }
        overlay_id = f"{article_id}/{dimension}/{response.annotator_id}"
        version, changed = store.put("overlay", overlay_id, overlay)
        if changed:
            written.append(overlay_id)

    # Flag multi-annotator disagreements on the same (article, dimension).
    by_target: dict[tuple[str, str], set[str]] = {}
    for _, overlay in store.iter_latest("overlay"):
        key = (overlay["article_id"], overlay["dimension"])
        value = str(overlay["corrected_label"])
        by_target.setdefault(key, set()).add(value)
    for (article_id, dimension), values in sorted(by_target.items()):
        if len(values) > 1:
            conflicts.append({"article_id": article_id, "dimension": dimension, "values": sorted(values)})

    return {"written": written, "proposals": proposals, "conflicts": conflicts, "agreements_skipped": skipped}
