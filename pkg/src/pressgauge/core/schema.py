"""Schema validation for model-produced label documents.

``validate_label_set`` is the one gate between raw (parsed) model output and
a stored :class:`LabelSet`; everything the pipeline persists has passed it.
It is a pure function: the same raw document and hierarchy always produce the
same result, and it reports the *first* violated constraint so dead-letter
entries stay readable.
"""

from __future__ import annotations

from typing import Any, Mapping

from pressgauge.core.hierarchy import TopicHierarchy
from pressgauge.core.types import (
    NEWS_TYPES,
    LabelSet,
    LikertScore,
    QuoteRecord,
    SentenceRecord,
)
from pressgauge.errors import SchemaError

_SCORE_FIELDS = ("lean", "tone", "headline_lean", "headline_tone")
_REASON_FIELDS = (
    "lean_reason",
    "tone_reason",
    "headline_lean_reason",
    "headline_tone_reason",
    "news_type_justification",
)


def _score(raw: Mapping[str, Any], field: str) -> LikertScore:
    value = raw.get(field)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(field, f"expected an integer score, got {value!r}")
    if not (LikertScore.MIN <= value <= LikertScore.MAX):
        raise SchemaError(field, f"score {value} out of range [{LikertScore.MIN}, {LikertScore.MAX}]")
    return LikertScore(value)


def validate_label_set(raw: Mapping[str, Any], hierarchy: TopicHierarchy) -> LabelSet:
    """Check a parsed label document against every LabelSet invariant.

    Raises :class:`SchemaError` naming the first violated field. On success
    returns the immutable LabelSet, with ``category`` derived from the
    hierarchy (any category present in ``raw`` must agree with it).
    """
    for required in ("article_id", "topic", "subtopic", "takeaways", "news_type"):
        if not raw.get(required):
            raise SchemaError(required, "missing or empty")

    topic = raw["topic"]
    if not hierarchy.has_topic(topic):
        raise SchemaError("topic", f"{topic!r} is not in hierarchy version {hierarchy.version}")
    subtopic = raw["subtopic"]
    if not hierarchy.has_subtopic(topic, subtopic):
        raise SchemaError("subtopic", f"{subtopic!r} is not listed under topic {topic!r}")
    category = hierarchy.category_of(topic)
    if raw.get("category") and raw["category"] != category:
        raise SchemaError("category", f"{raw['category']!r} != hierarchy mapping {category!r} for {topic!r}")

    news_type = raw["news_type"]
    if news_type not in NEWS_TYPES:
        raise SchemaError("news_type", f"{news_type!r} not one of {NEWS_TYPES}")

    scores = {field: _score(raw, field) for field in _SCORE_FIELDS}

    for field in _REASON_FIELDS:
        text = raw.get(field)
        if not isinstance(text, str) or not text.strip():
            raise SchemaError(field, "rationale text missing or empty")

    return LabelSet(
        article_id=raw["article_id"],
        category=category,
        topic=topic,
        subtopic=subtopic,
        takeaways=raw["takeaways"],
        news_type=news_type,
        news_type_justification=raw["news_type_justification"],
        lean=scores["lean"],
        lean_reason=raw["lean_reason"],
        tone=scores["tone"],
        tone_reason=raw["tone_reason"],
        headline_lean=scores["headline_lean"],
        headline_lean_reason=raw["headline_lean_reason"],
        headline_tone=scores["headline_tone"],
        headline_tone_reason=raw["headline_tone_reason"],
        model_id=raw.get("model_id", ""),
        labeled_at=raw.get("labeled_at", ""),
        hierarchy_version=hierarchy.version,
    )


def validate_sentence_records(article_id: str, parsed: Any, expected_count: int, texts: list[str]) -> list[SentenceRecord]:
    """Turn the sentence-prompt response into aligned SentenceRecords.

    The response must cover sentence numbers 1..N exactly once each; anything
    else is a SchemaError so the caller can run its one repair round.
    """
    if not isinstance(parsed, list):
        raise SchemaError("sentences", f"expected a list of objects, got {type(parsed).__name__}")
    by_index: dict[int, SentenceRecord] = {}
    for entry in parsed:
        if not isinstance(entry, Mapping):
            raise SchemaError("sentences", "list entries must be objects")
        index = entry.get("sentence")
        if not isinstance(index, int) or isinstance(index, bool):
            raise SchemaError("sentence", f"sentence number missing or not an integer: {entry!r}")
        if index < 1 or index > expected_count:
            raise SchemaError("sentence", f"sentence number {index} outside 1..{expected_count}")
        if index in by_index:
            raise SchemaError("sentence", f"sentence number {index} labeled twice")
        try:
            record = SentenceRecord(
                article_id=article_id,
                index=index,
                text=texts[index - 1],
                type=entry.get("type"),
                tone=entry.get("tone"),
                focus=entry.get("focus"),
            )
        except ValueError as exc:
            raise SchemaError("sentences", str(exc)) from exc
        by_index[index] = record
    missing = [i for i in range(1, expected_count + 1) if i not in by_index]
    if missing:
        raise SchemaError("sentences", f"missing sentence numbers {missing[:5]} (expected 1..{expected_count})")
    return [by_index[i] for i in range(1, expected_count + 1)]


def validate_quote_record(article_id: str, entry: Mapping[str, Any]) -> QuoteRecord:
    if not isinstance(entry, Mapping):
        raise SchemaError("quote", "quote entries must be objects")
    quote = entry.get("quote")
    if not isinstance(quote, str) or not quote.strip():
        raise SchemaError("quote", "quote text missing or empty")
    try:
        return QuoteRecord(
            article_id=article_id,
            quote_text=quote,
            person_name=entry.get("person_name", "") or "",
            person_occupation=entry.get("person_occupation", "") or "",
            person_affiliation=entry.get("person_affiliation", "") or "",
            person_domain=entry.get("person_domain", "Other") or "Other",
            person_capacity=entry.get("person_capacity", "other") or "other",
        )
    except ValueError as exc:
        field = "person_domain" if "person_domain" in str(exc) else "person_capacity"
        raise SchemaError(field, str(exc)) from exc
