"""Model providers: text in, text out.

Every provider honors one contract: ``complete(prompt, model_id) -> str``.
The fixture provider replays recorded responses keyed by the SHA-256 of the
prompt text, which makes whole pipeline runs pure functions of their inputs;
the HTTP provider talks to a live endpoint with credentials taken from the
environment only.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Mapping, Protocol

import httpx

from pressgauge.config import ProviderSettings
from pressgauge.errors import FixtureMissingError, ProviderError


def prompt_digest(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class LlmProvider(Protocol):
    deterministic: bool

    def complete(self, prompt: str, model_id: str) -> str: ...


class FixtureProvider:
    """Replays responses from ``<root>/llm/<sha256(prompt)>.txt``."""

    deterministic = True

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def response_path(self, prompt: str) -> Path:
        return self.root / "llm" / f"{prompt_digest(prompt)}.txt"

    def complete(self, prompt: str, model_id: str) -> str:
        path = self.response_path(prompt)
        if not path.exists():
            raise FixtureMissingError(f"llm/{prompt_digest(prompt)}.txt")
        return path.read_text("utf-8")

    def record(self, prompt: str, response: str) -> Path:
        """Write a canned response (used by fixture builders)."""
        path = self.response_path(prompt)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(response, encoding="utf-8")
        return path


class MappingProvider:
    """In-memory provider for tests; keys are full prompts or their digests."""

    deterministic = True

    def __init__(self, responses: Mapping[str, str]):
        self.responses = dict(responses)
        self.calls: list[str] = []

    def complete(self, prompt: str, model_id: str) -> str:
        self.calls.append(prompt)
        if prompt in self.responses:
            return self.responses[prompt]
        digest = prompt_digest(prompt)
        if digest in self.responses:
            return self.responses[digest]
        raise FixtureMissingError(digest)


class HttpProvider:
    """JSON-over-HTTP completion endpoint.

    POSTs {"model", "prompt", "temperature"} and expects {"text": ...}. The
    API key comes from the environment variable named in the settings and is
    sent as a bearer token.
    """

    deterministic = False

    def __init__(self, settings: ProviderSettings, timeout: float = 120.0):
        if not settings.endpoint:
            raise ValueError("provider endpoint not configured")
        self.settings = settings
        self.timeout = timeout

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.settings.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def complete(self, prompt: str, model_id: str) -> str:
        payload = {"model": model_id, "prompt": prompt, "temperature": self.settings.temperature}
        try:
            response = httpx.post(self.settings.endpoint, json=payload, headers=self._headers(), timeout=self.timeout)
        except httpx.HTTPError as exc:
            raise ProviderError(f"provider request failed: {exc}") from exc
        if response.status_code == 429 or response.status_code >= 500:
            raise ProviderError(f"provider returned HTTP {response.status_code}", retryable=True)
        if response.status_code >= 400:
            raise ProviderError(f"provider returned HTTP {response.status_code}", retryable=False)
        try:
            doc = response.json()
            return doc["text"]
        except (json.JSONDecodeError, KeyError) as exc:
            raise ProviderError(f"malformed provider response: {exc}", retryable=False) from exc
