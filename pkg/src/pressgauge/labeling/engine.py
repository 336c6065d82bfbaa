"""The labeling engine: prompts in, validated records out.

For one article the engine runs the full chain: topic, then subtopic
conditioned on the predicted topic, takeaways, news type, lean, tone, and
finally the headline variants (which need the body's topic for context, so
they never run when body labeling failed). Sentence labeling and quote
extraction are separate passes over the same article.

Malformed responses get exactly one repair round: the prompt is re-sent with
a note describing the violation. If the repair also fails, the item goes to
the append-only dead-letter queue with its raw response retained, and the
pipeline moves on. Provider failures (as opposed to malformed content) are
retried a bounded number of times and then surface to the caller.
"""

from __future__ import annotations

import datetime as dt
import json
import threading
from pathlib import Path
from typing import Any, Callable, Optional

from pressgauge.config import ProviderSettings
from pressgauge.core.hierarchy import TopicHierarchy
from pressgauge.core.schema import validate_label_set, validate_quote_record, validate_sentence_records
from pressgauge.core.types import NEWS_TYPES, Article, LabelSet, LikertScore, QuoteRecord, SentenceRecord
from pressgauge.errors import DeadLetterError, ProviderError, SchemaError
from pressgauge.labeling.parsing import extract_document, require_keys
from pressgauge.labeling.prompts import PromptTemplate, format_name_list, load_templates
from pressgauge.labeling.providers import LlmProvider
from pressgauge.labeling.splitter import SentenceSplit, split_sentences, truncate_at_sentence

_REPAIR_NOTE = (
    "\n\nYour previous response could not be used: {reason}. "
    "Respond again and follow the response format instructions exactly."
)

_QUOTE_CHARS = ('"', "“", "”")


def _utc_now_iso() -> str:
    return dt.datetime.now(dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class DeadLetterQueue:
    """Append-only NDJSON sink for items that exhausted repair attempts."""

    def __init__(self, path: Optional[str | Path] = None):
        self.path = Path(path) if path else None
        self._memory: list[dict] = []
        self._lock = threading.Lock()

    def append(self, entry: dict) -> None:
        with self._lock:
            if self.path:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps(entry, sort_keys=True) + "\n")
            else:
                self._memory.append(entry)

    def entries(self) -> list[dict]:
        if self.path:
            if not self.path.exists():
                return []
            return [json.loads(line) for line in self.path.read_text("utf-8").splitlines() if line.strip()]
        return list(self._memory)

    def replace_all(self, entries: list[dict]) -> None:
        """Rewrite the queue (used after a successful retry drain)."""
        with self._lock:
            if self.path:
                text = "".join(json.dumps(e, sort_keys=True) + "\n" for e in entries)
                self.path.write_text(text, encoding="utf-8")
            else:
                self._memory = list(entries)


class LabelingEngine:
    def __init__(
        self,
        provider: LlmProvider,
        hierarchy: TopicHierarchy,
        settings: ProviderSettings = ProviderSettings(),
        templates: Optional[dict[str, PromptTemplate]] = None,
        dead_letters: Optional[DeadLetterQueue] = None,
        labeled_at_fn: Optional[Callable[[], str]] = None,
    ):
        self.provider = provider
        self.hierarchy = hierarchy
        self.settings = settings
        self.templates = templates or load_templates()
        self.dead_letters = dead_letters or DeadLetterQueue()
        self.labeled_at_fn = labeled_at_fn or _utc_now_iso

    # -- provider plumbing -------------------------------------------------

    def _complete(self, prompt: str, model_id: str) -> str:
        attempts = 0
        while True:
            attempts += 1
            try:
                return self.provider.complete(prompt, model_id)
            except ProviderError as exc:
                if not exc.retryable or attempts >= self.settings.max_attempts:
                    raise

    def _call(self, item_id: str, template_name: str, bindings: dict[str, str], model_id: str, check) -> Any:
        """Render, call, parse, and validate; one repair round, then dead-letter."""
        template = self.templates[template_name]
        prompt = template.render(**bindings)
        raw = self._complete(prompt, model_id)
        try:
            return check(extract_document(raw))
        except SchemaError as first:
            repair_prompt = prompt + _REPAIR_NOTE.format(reason=str(first))
            raw = self._complete(repair_prompt, model_id)
            try:
                return check(extract_document(raw))
            except SchemaError as second:
                self.dead_letters.append(
                    {
                        "item_id": item_id,
                        "task": template_name,
                        "reason": str(second),
                        "raw_text": raw,
                        "at": self.labeled_at_fn(),
                    }
                )
                raise DeadLetterError(item_id, template_name, str(second), raw) from second

    # -- per-field checks ---------------------------------------------------

    def _check_topic(self, doc: Any) -> str:
        doc = require_keys(doc, ("topic",))
        topic = doc["topic"]
        if not isinstance(topic, str) or not self.hierarchy.has_topic(topic):
            raise SchemaError("topic", f"{topic!r} is not a listed topic")
        return topic

    def _check_subtopic(self, topic: str):
        def check(doc: Any) -> str:
            parsed = require_keys(doc, ("subtopic",))
            subtopic = parsed["subtopic"]
            if not isinstance(subtopic, str) or not self.hierarchy.has_subtopic(topic, subtopic):
                raise SchemaError("subtopic", f"{subtopic!r} is not listed under {topic!r}")
            return subtopic

        return check

    @staticmethod
    def _check_takeaways(doc: Any) -> str:
        parsed = require_keys(doc, ("takeaways",))
        takeaways = parsed["takeaways"]
        if isinstance(takeaways, list):
            takeaways = " ".join(str(t) for t in takeaways)
        if not isinstance(takeaways, str) or not takeaways.strip():
            raise SchemaError("takeaways", "empty summary")
        return takeaways

    @staticmethod
    def _check_news_type(doc: Any) -> tuple[str, str]:
        parsed = require_keys(doc, ("news_type", "justification"))
        news_type = parsed["news_type"]
        if news_type not in NEWS_TYPES:
            raise SchemaError("news_type", f"{news_type!r} not one of {NEWS_TYPES}")
        justification = parsed["justification"]
        if not isinstance(justification, str) or not justification.strip():
            raise SchemaError("justification", "empty justification")
        return news_type, justification

    @staticmethod
    def _check_scored(score_key: str):
        def check(doc: Any) -> tuple[int, str]:
            parsed = require_keys(doc, ("reason", score_key))
            value = parsed[score_key]
            if not isinstance(value, int) or isinstance(value, bool):
                raise SchemaError(score_key, f"expected an integer, got {value!r}")
            if not (LikertScore.MIN <= value <= LikertScore.MAX):
                raise SchemaError(score_key, f"{value} out of range [-5, 5]")
            reason = parsed["reason"]
            if not isinstance(reason, str) or not reason.strip():
                raise SchemaError("reason", "empty reason")
            return value, reason

        return check

    # -- public operations ----------------------------------------------------

    def prepared_body(self, article: Article) -> tuple[str, bool]:
        """Article text as the model sees it (long bodies cut at a sentence boundary)."""
        return truncate_at_sentence(article.body, self.settings.max_input_words)

    def label_article(self, article: Article) -> tuple[LabelSet, bool]:
        """Run the full article-level chain; returns (labels, input_truncated)."""
        if not article.body.strip():
            raise ValueError("article body is empty; labeling requires cleaned text")
        body, truncated = self.prepared_body(article)
        classify, label = self.settings.classify_model, self.settings.label_model

        topic = self._call(article.article_id, "topic", {"article": body, "topic_list": format_name_list(self.hierarchy.topic_names())}, classify, self._check_topic)
        subtopic = self._call(
            article.article_id,
            "subtopic",
            {
                "predicted_topic": topic,
                "article": body,
                "subtopic_list_under_the_topic": format_name_list(self.hierarchy.subtopics_of(topic)),
            },
            classify,
            self._check_subtopic(topic),
        )
        takeaways = self._call(article.article_id, "takeaways", {"article": body}, classify, self._check_takeaways)
        news_type, justification = self._call(article.article_id, "article_type", {"article": body}, label, self._check_news_type)
        lean, lean_reason = self._call(article.article_id, "article_lean", {"article": body}, label, self._check_scored("lean"))
        tone, tone_reason = self._call(article.article_id, "article_tone", {"article": body}, label, self._check_scored("tone"))

        category = self.hierarchy.category_of(topic)
        headline_bindings = {"topic": topic, "subtopic": subtopic, "category": category, "article": article.title}
        headline_lean, headline_lean_reason = self._call(
            article.article_id, "headline_lean", headline_bindings, label, self._check_scored("lean")
        )
        headline_tone, headline_tone_reason = self._call(
            article.article_id, "headline_tone", headline_bindings, label, self._check_scored("tone")
        )

        raw = {
            "article_id": article.article_id,
            "topic": topic,
            "subtopic": subtopic,
            "takeaways": takeaways,
            "news_type": news_type,
            "news_type_justification": justification,
            "lean": lean,
            "lean_reason": lean_reason,
            "tone": tone,
            "tone_reason": tone_reason,
            "headline_lean": headline_lean,
            "headline_lean_reason": headline_lean_reason,
            "headline_tone": headline_tone,
            "headline_tone_reason": headline_tone_reason,
            "model_id": label,
            "labeled_at": self.labeled_at_fn(),
        }
        return validate_label_set(raw, self.hierarchy), truncated

    def label_sentences(self, article: Article, split: Optional[SentenceSplit] = None) -> list[SentenceRecord]:
        """One record per sentence; the whole article goes in one prompt."""
        if split is None:
            body, _ = self.prepared_body(article)
            split = split_sentences(body, article.article_id)
        texts = list(split.sentences)

        def check(doc: Any) -> list[SentenceRecord]:
            return validate_sentence_records(article.article_id, doc, len(texts), texts)

        return self._call(article.article_id, "sentence", {"sentences": split.numbered()}, self.settings.label_model, check)

    def extract_quotes(self, article: Article) -> list[QuoteRecord]:
        body, _ = self.prepared_body(article)
        if not any(ch in body for ch in _QUOTE_CHARS):
            return []

        def check(doc: Any) -> list[QuoteRecord]:
            if not isinstance(doc, list):
                raise SchemaError("quotes", f"expected a list, got {type(doc).__name__}")
            return [validate_quote_record(article.article_id, entry) for entry in doc]

        return self._call(article.article_id, "quote", {"article": body}, self.settings.label_model, check)

    def label_bundle(self, article: Article) -> dict[str, Any]:
        """Everything the store keeps for one labeled article."""
        label_set, truncated = self.label_article(article)
        body, _ = self.prepared_body(article)
        split = split_sentences(body, article.article_id)
        sentences = self.label_sentences(article, split)
        quotes = self.extract_quotes(article)
        return {
            "label": label_set.to_doc(),
            "sentences": [s.to_doc() for s in sentences],
            "quotes": [q.to_doc() for q in quotes],
            "input_truncated": truncated,
        }
