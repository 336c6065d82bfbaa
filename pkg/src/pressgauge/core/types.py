"""Immutable domain types shared by every pipeline stage.

All types here are frozen dataclasses: they are safe to share between
concurrent stages, and anything that needs to change (most notably the topic
hierarchy) does so by producing a new value. Each type knows how to round-trip
through the canonical document format used by the store and the NDJSON
exports; the leaf field names in those documents deliberately match the keys
the labeling prompts ask the model to emit ("topic", "news_type", "lean",
"tone", "reason", "sentence", "focus", "quote", "person_domain", ...), so
stored data and raw model responses share one vocabulary.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any, Optional

CATEGORIES = (
    "Politics",
    "Culture and Lifestyle",
    "Business",
    "Health",
    "Disaster",
    "Economy",
    "Sports",
    "Science and Technology",
)

NEWS_TYPES = ("news report", "news analysis", "opinion")

SENTENCE_TYPES = ("fact", "opinion", "borderline", "quote", "other")
SENTENCE_TONES = ("positive", "negative", "neutral")
SENTENCE_FOCUS = ("democrat", "republican", "both", "neither")

PERSON_DOMAINS = (
    "Politics",
    "Corporate",
    "Academia",
    "Legal",
    "Media and Arts",
    "Science and Technology",
    "Sports",
    "Law enforcement",
    "Military",
    "Health and Medicine",
    "Religion",
    "Community and Social Services",
    "Other",
)

PERSON_CAPACITIES = (
    "expert",
    "observer",
    "participant",
    "subject",
    "commentary",
    "illustrative anecdote",
    "spokesperson",
    "other",
)

TASK_KINDS = ("topic", "article_lean", "article_tone", "article_type", "sentence", "event_membership")

SCALE_VERDICTS = ("Agree", "Somewhat Agree", "Neither Agree nor Disagree", "Somewhat Disagree", "Disagree")
BINARY_VERDICTS = ("Agree", "Disagree")
DISAGREE_VERDICTS = frozenset({"Somewhat Disagree", "Disagree"})


def article_identity(publisher_id: str, canonical_url: str) -> str:
    """Content-addressed article id: a stable digest of publisher + URL."""
    digest = hashlib.sha256(f"{publisher_id}\n{canonical_url}".encode("utf-8")).hexdigest()
    return digest[:16]


@dataclass(frozen=True)
class Publisher:
    id: str
    display_name: str
    homepage_url: str
    enabled: bool = True

    def __post_init__(self):
        if not self.id:
            raise ValueError("publisher id must be nonempty")
        if not self.homepage_url.startswith(("http://", "https://")):
            raise ValueError(f"homepage_url must be absolute http(s): {self.homepage_url!r}")


@dataclass(frozen=True)
class SnapshotSpec:
    """When homepages are captured and how many items are kept.

    ``times_local`` are "HH:MM" wall-clock times in ``timezone`` (an IANA
    name), strictly increasing within a day.
    """

    times_local: tuple[str, ...] = ("06:00", "10:00", "14:00", "18:00", "22:00")
    timezone: str = "America/New_York"
    top_k_scraped: int = 30
    top_k_labeled: int = 20

    def __post_init__(self):
        if not self.times_local:
            raise ValueError("at least one snapshot time is required")
        if list(self.times_local) != sorted(set(self.times_local)):
            raise ValueError("times_local must be strictly increasing")
        if self.top_k_scraped < 1 or self.top_k_labeled < 1:
            raise ValueError("top_k values must be positive")
        if self.top_k_labeled > self.top_k_scraped:
            raise ValueError("top_k_labeled must not exceed top_k_scraped")


@dataclass(frozen=True)
class LikertScore:
    """An integer score on the 11-point [-5, +5] scale.

    Out-of-range values are rejected at construction, so a validated record
    can never hold one.
    """

    value: int

    MIN = -5
    MAX = 5

    def __post_init__(self):
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise ValueError(f"score must be an integer, got {self.value!r}")
        if not (self.MIN <= self.value <= self.MAX):
            raise ValueError(f"score {self.value} outside [{self.MIN}, {self.MAX}]")

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class Article:
    """A scraped article with provenance and cleaned text."""

    article_id: str
    publisher_id: str
    canonical_url: str
    title: str
    body: str
    published_at: Optional[str]  # ISO timestamp, or None when the page had no date
    first_seen_snapshot: str  # "<publisher>/<captured_at ISO>"
    best_rank: int

    def __post_init__(self):
        if self.article_id != article_identity(self.publisher_id, self.canonical_url):
            raise ValueError("article_id is not the digest of (publisher_id, canonical_url)")
        if not self.body.strip():
            raise ValueError("article body is empty after cleaning")
        if self.best_rank < 1:
            raise ValueError("best_rank must be >= 1")

    def to_doc(self) -> dict[str, Any]:
        return {
            "article_id": self.article_id,
            "publisher_id": self.publisher_id,
            "canonical_url": self.canonical_url,
            "title": self.title,
            "body": self.body,
            "published_at": self.published_at,
            "first_seen_snapshot": self.first_seen_snapshot,
            "best_rank": self.best_rank,
        }

    @classmethod
    def from_doc(cls, doc: dict[str, Any]) -> "Article":
        return cls(
            article_id=doc["article_id"],
            publisher_id=doc["publisher_id"],
            canonical_url=doc["canonical_url"],
            title=doc["title"],
            body=doc["body"],
            published_at=doc.get("published_at"),
            first_seen_snapshot=doc["first_seen_snapshot"],
            best_rank=doc["best_rank"],
        )


@dataclass(frozen=True)
class LabelSet:
    """Every article-level label produced by the model for one article.

    Instances are built through :func:`pressgauge.core.schema.validate_label_set`,
    which is the single place the invariants (topic within the hierarchy,
    category consistency, score bounds, nonempty rationales) are enforced.
    """

    article_id: str
    category: str
    topic: str
    subtopic: str
    takeaways: str
    news_type: str
    news_type_justification: str
    lean: LikertScore
    lean_reason: str
    tone: LikertScore
    tone_reason: str
    headline_lean: LikertScore
    headline_lean_reason: str
    headline_tone: LikertScore
    headline_tone_reason: str
    model_id: str
    labeled_at: str
    hierarchy_version: int

    def to_doc(self) -> dict[str, Any]:
        return {
            "article_id": self.article_id,
            "category": self.category,
            "topic": self.topic,
            "subtopic": self.subtopic,
            "takeaways": self.takeaways,
            "news_type": self.news_type,
            "justification": self.news_type_justification,
            "lean": {"lean": self.lean.value, "reason": self.lean_reason},
            "tone": {"tone": self.tone.value, "reason": self.tone_reason},
            "headline_lean": {"lean": self.headline_lean.value, "reason": self.headline_lean_reason},
            "headline_tone": {"tone": self.headline_tone.value, "reason": self.headline_tone_reason},
            "model_id": self.model_id,
            "labeled_at": self.labeled_at,
            "hierarchy_version": self.hierarchy_version,
        }

    @classmethod
    def from_doc(cls, doc: dict[str, Any]) -> "LabelSet":
        return cls(
            article_id=doc["article_id"],
            category=doc["category"],
            topic=doc["topic"],
            subtopic=doc["subtopic"],
            takeaways=doc["takeaways"],
            news_type=doc["news_type"],
            news_type_justification=doc["justification"],
            lean=LikertScore(doc["lean"]["lean"]),
            lean_reason=doc["lean"]["reason"],
            tone=LikertScore(doc["tone"]["tone"]),
            tone_reason=doc["tone"]["reason"],
            headline_lean=LikertScore(doc["headline_lean"]["lean"]),
            headline_lean_reason=doc["headline_lean"]["reason"],
            headline_tone=LikertScore(doc["headline_tone"]["tone"]),
            headline_tone_reason=doc["headline_tone"]["reason"],
            model_id=doc["model_id"],
            labeled_at=doc["labeled_at"],
            hierarchy_version=doc["hierarchy_version"],
        )


@dataclass(frozen=True)
class SentenceRecord:
    article_id: str
    index: int  # 1-based, contiguous within an article
    text: str
    type: str
    tone: str
    focus: str

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("sentence index is 1-based")
        if self.type not in SENTENCE_TYPES:
            raise ValueError(f"unknown sentence type {self.type!r}")
        if self.tone not in SENTENCE_TONES:
            raise ValueError(f"unknown sentence tone {self.tone!r}")
        if self.focus not in SENTENCE_FOCUS:
            raise ValueError(f"unknown sentence focus {self.focus!r}")

    def to_doc(self) -> dict[str, Any]:
        return {
            "sentence": self.index,
            "text": self.text,
            "type": self.type,
            "tone": self.tone,
            "focus": self.focus,
        }

    @classmethod
    def from_doc(cls, article_id: str, doc: dict[str, Any]) -> "SentenceRecord":
        return cls(
            article_id=article_id,
            index=doc["sentence"],
            text=doc.get("text", ""),
            type=doc["type"],
            tone=doc["tone"],
            focus=doc["focus"],
        )


@dataclass(frozen=True)
class QuoteRecord:
    article_id: str
    quote_text: str
    person_name: str = ""
    person_occupation: str = ""
    person_affiliation: str = ""
    person_domain: str = "Other"
    person_capacity: str = "other"

    def __post_init__(self):
        if self.person_domain not in PERSON_DOMAINS:
            raise ValueError(f"person_domain {self.person_domain!r} not in the closed list")
        if self.person_capacity not in PERSON_CAPACITIES:
            raise ValueError(f"person_capacity {self.person_capacity!r} not in the closed list")

    def to_doc(self) -> dict[str, Any]:
        return {
            "quote": self.quote_text,
            "person_name": self.person_name,
            "person_occupation": self.person_occupation,
            "person_affiliation": self.person_affiliation,
            "person_domain": self.person_domain,
            "person_capacity": self.person_capacity,
        }

    @classmethod
    def from_doc(cls, article_id: str, doc: dict[str, Any]) -> "QuoteRecord":
        return cls(
            article_id=article_id,
            quote_text=doc["quote"],
            person_name=doc.get("person_name", ""),
            person_occupation=doc.get("person_occupation", ""),
            person_affiliation=doc.get("person_affiliation", ""),
            person_domain=doc.get("person_domain", "Other"),
            person_capacity=doc.get("person_capacity", "other"),
        )


def word_count(text: str) -> int:
    return len(text.split())


@dataclass(frozen=True)
class EventCluster:
    """One day's worth of coverage of a single news event."""

    event_id: str
    day: str  # YYYY-MM-DD
    theme: str
    theme_short: str
    member_article_ids: frozenset[str]
    theme_short_truncated: bool = False

    MAX_SHORT_WORDS = 5

    def __post_init__(self):
        if word_count(self.theme_short) > self.MAX_SHORT_WORDS:
            raise ValueError("theme_short longer than 5 words; truncate before constructing")

    def to_doc(self) -> dict[str, Any]:
        return {
            "event_id": self.event_id,
            "day": self.day,
            "theme": self.theme,
            "theme_short": self.theme_short,
            "theme_short_truncated": self.theme_short_truncated,
            "member_article_ids": sorted(self.member_article_ids),
        }

    @classmethod
    def from_doc(cls, doc: dict[str, Any]) -> "EventCluster":
        return cls(
            event_id=doc["event_id"],
            day=doc["day"],
            theme=doc["theme"],
            theme_short=doc["theme_short"],
            member_article_ids=frozenset(doc["member_article_ids"]),
            theme_short_truncated=doc.get("theme_short_truncated", False),
        )


@dataclass(frozen=True)
class FactCluster:
    """A group of near-identical factual sentences within one event."""

    event_id: str
    fact_id: str
    synthetic_sentence: str
    member_sentences: frozenset[tuple[str, int]]  # (article_id, sentence index)
    truncated: bool = False

    MAX_WORDS = 25

    def __post_init__(self):
        if word_count(self.synthetic_sentence) > self.MAX_WORDS:
            raise ValueError("synthetic_sentence longer than 25 words; truncate before constructing")

    def to_doc(self) -> dict[str, Any]:
        return {
            "event_id": self.event_id,
            "fact_id": self.fact_id,
            "synthetic_sentence": self.synthetic_sentence,
            "truncated": self.truncated,
            "member_sentences": sorted([list(m) for m in self.member_sentences]),
        }

    @classmethod
    def from_doc(cls, doc: dict[str, Any]) -> "FactCluster":
        return cls(
            event_id=doc["event_id"],
            fact_id=doc["fact_id"],
            synthetic_sentence=doc["synthetic_sentence"],
            member_sentences=frozenset((m[0], m[1]) for m in doc["member_sentences"]),
            truncated=doc.get("truncated", False),
        )


@dataclass(frozen=True)
class ValidationTask:
    task_id: str
    kind: str
    payload: dict[str, Any] = field(hash=False)
    annotator_id: Optional[str] = None  # set when the task is claimed

    def __post_init__(self):
        if self.kind not in TASK_KINDS:
            raise ValueError(f"unknown task kind {self.kind!r}")

    def to_doc(self) -> dict[str, Any]:
        return {
            "task_id": self.task_id,
            "kind": self.kind,
            "payload": self.payload,
            "annotator_id": self.annotator_id,
        }

    @classmethod
    def from_doc(cls, doc: dict[str, Any]) -> "ValidationTask":
        return cls(
            task_id=doc["task_id"],
            kind=doc["kind"],
            payload=doc["payload"],
            annotator_id=doc.get("annotator_id"),
        )


@dataclass(frozen=True)
class ValidationResponse:
    task_id: str
    annotator_id: str
    verdict: str
    submitted_at: str
    corrected_label: Optional[Any] = None

    def __post_init__(self):
        if self.verdict not in SCALE_VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        disagrees = self.verdict in DISAGREE_VERDICTS
        if disagrees and self.corrected_label is None:
            raise ValueError("a disagreeing verdict requires a corrected label")
        if not disagrees and self.corrected_label is not None:
            raise ValueError("corrected label only allowed with a disagreeing verdict")

    def to_doc(self) -> dict[str, Any]:
        return {
            "task_id": self.task_id,
            "annotator_id": self.annotator_id,
            "verdict": self.verdict,
            "submitted_at": self.submitted_at,
            "corrected_label": self.corrected_label,
        }

    @classmethod
    def from_doc(cls, doc: dict[str, Any]) -> "ValidationResponse":
        return cls(
            task_id=doc["task_id"],
            annotator_id=doc["annotator_id"],
            verdict=doc["verdict"],
            submitted_at=doc["submitted_at"],
            corrected_label=doc.get("corrected_label"),
        )
