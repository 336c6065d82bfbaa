"""Exception types shared across the pipeline."""

from __future__ import annotations


class SchemaError(ValueError):
    """A parsed document violates a schema constraint.

    Carries the first violated field and a human-readable reason so callers
    can route the offending document to the dead-letter queue with context.
    """

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


class FetchError(Exception):
    """An article page could not be turned into clean text.

    ``kind`` is one of ``paywall``, ``broken_link``, ``non_article``,
    ``timeout``. Fetch errors are recorded but never abort a pipeline run.
    """

    KINDS = ("paywall", "broken_link", "non_article", "timeout")

    def __init__(self, kind: str, url: str, detail: str = ""):
        if kind not in self.KINDS:
            raise ValueError(f"unknown fetch error kind: {kind}")
        self.kind = kind
        self.url = url
        self.detail = detail
        super().__init__(f"{kind}: {url}" + (f" ({detail})" if detail else ""))


class ProviderError(Exception):
    """The model provider failed to produce a usable response."""

    def __init__(self, message: str, retryable: bool = True):
        self.retryable = retryable
        super().__init__(message)


class FixtureMissingError(ProviderError):
    """Fixture mode was asked for a response that was never recorded."""

    def __init__(self, key: str):
        self.key = key
        super().__init__(f"no recorded fixture for key {key}", retryable=False)


class DeadLetterError(Exception):
    """Labeling gave up on an item after the bounded repair attempts."""

    def __init__(self, item_id: str, task: str, reason: str, raw_text: str = ""):
        self.item_id = item_id
        self.task = task
        self.reason = reason
        self.raw_text = raw_text
        super().__init__(f"{task} failed for {item_id}: {reason}")
