"""Text embeddings and cosine similarity.

Embedding providers return one fixed-dimension vector per text. The fixture
provider replays committed vectors keyed by the SHA-256 of the text, so
clustering runs are exactly reproducible; the HTTP provider calls a live
embeddings endpoint. Texts longer than the provider's input budget are cut
at a sentence boundary and flagged.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

import httpx

from pressgauge.config import ProviderSettings
from pressgauge.errors import FixtureMissingError, ProviderError
from pressgauge.labeling.splitter import truncate_at_sentence


def text_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class EmbeddingVector:
    id: str
    values: tuple[float, ...]

    @property
    def dim(self) -> int:
        return len(self.values)

    def __post_init__(self):
        if not self.values:
            raise ValueError("embedding vector is empty")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError(f"non-finite embedding values for {self.id}")


class EmbeddingProvider(Protocol):
    deterministic: bool

    def embed_texts(self, texts: Sequence[str]) -> list[list[float]]: ...


class FixtureEmbeddingProvider:
    """Replays vectors from ``<root>/embeddings.ndjson`` ({"id", "values"})."""

    deterministic = True

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self._table: dict[str, list[float]] | None = None

    def _load(self) -> dict[str, list[float]]:
        if self._table is None:
            path = self.root / "embeddings.ndjson"
            table: dict[str, list[float]] = {}
            if path.exists():
                for line in path.read_text("utf-8").splitlines():
                    if line.strip():
                        doc = json.loads(line)
                        table[doc["id"]] = doc["values"]
            self._table = table
        return self._table

    def embed_texts(self, texts: Sequence[str]) -> list[list[float]]:
        table = self._load()
        out = []
        for text in texts:
            key = text_digest(text)
            if key not in table:
                raise FixtureMissingError(f"embeddings.ndjson id {key}")
            out.append(table[key])
        return out


class HttpEmbeddingProvider:
    deterministic = False

    def __init__(self, settings: ProviderSettings, timeout: float = 120.0):
        if not settings.embedding_endpoint:
            raise ValueError("embedding endpoint not configured")
        self.settings = settings
        self.timeout = timeout

    def embed_texts(self, texts: Sequence[str]) -> list[list[float]]:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.settings.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        payload = {"model": self.settings.embedding_model, "input": list(texts)}
        try:
            response = httpx.post(self.settings.embedding_endpoint, json=payload, headers=headers, timeout=self.timeout)
        except httpx.HTTPError as exc:
            raise ProviderError(f"embedding request failed: {exc}") from exc
        if response.status_code >= 400:
            raise ProviderError(f"embedding endpoint returned HTTP {response.status_code}")
        try:
            vectors = response.json()["vectors"]
        except (json.JSONDecodeError, KeyError) as exc:
            raise ProviderError(f"malformed embedding response: {exc}", retryable=False) from exc
        return vectors


def embed(
    keyed_texts: Sequence[tuple[str, str]],
    provider: EmbeddingProvider,
    max_input_words: int = 6000,
    attempts: int = 3,
) -> tuple[list[EmbeddingVector], set[str]]:
    """Embed (id, text) pairs; returns vectors plus the ids that were truncated.

    Transient provider failures are retried up to ``attempts`` times and then
    propagate, because a day's clustering is all-or-nothing. All vectors in
    one call must agree on dimension; a mismatch means the provider (or
    fixture file) is inconsistent and is an error.
    """
    if not keyed_texts:
        return [], set()
    truncated: set[str] = set()
    prepared = []
    for key, text in keyed_texts:
        cut, was_cut = truncate_at_sentence(text, max_input_words)
        if was_cut:
            truncated.add(key)
        prepared.append(cut)
    tries = 0
    while True:
        tries += 1
        try:
            raw = provider.embed_texts(prepared)
            break
        except ProviderError as exc:
            if not exc.retryable or tries >= attempts:
                raise
    vectors = [EmbeddingVector(id=key, values=tuple(values)) for (key, _), values in zip(keyed_texts, raw)]
    dims = {v.dim for v in vectors}
    if len(dims) > 1:
        raise ProviderError(f"inconsistent embedding dimensions: {sorted(dims)}", retryable=False)
    return vectors, truncated


def cosine_similarity(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """dot(a, b) / (||a|| * ||b||); symmetric, in [-1, 1]."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    dot = sum(x * y for x, y in zip(a.values, b.values))
    norm_a = math.sqrt(sum(x * x for x in a.values))
    norm_b = math.sqrt(sum(y * y for y in b.values))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ValueError("cosine similarity undefined for a zero vector")
    # Clamp the tiny float drift so downstream thresholds see honest bounds.
    return max(-1.0, min(1.0, dot / (norm_a * norm_b)))
