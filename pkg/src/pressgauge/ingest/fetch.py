"""Turning homepage URLs into clean article text.

Two fetchers share one contract: given a URL, produce raw page material or
raise :class:`FetchError`. ``FixtureFetcher`` reads recorded pages from disk
(tests and replays never touch the network); ``LiveFetcher`` does a real GET.
``fetch_and_clean`` then strips HTML if present, applies the cleaning
dictionary, and rejects anything that is not a news article.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Protocol

import httpx

from pressgauge.errors import FetchError
from pressgauge.ingest.cleaning import CleaningDictionary, clean_text, html_to_text

NON_ARTICLE_PATH_HINTS = ("/video/", "/videos/", "/podcast/", "/podcasts/", "/gallery/", "/photos/", "/slideshow/")

_PAYWALL_MARKERS = (
    "subscription required",
    "subscribe to read",
    "already a subscriber? sign in",
    "this content is for subscribers only",
)


@dataclass(frozen=True)
class RawPage:
    url: str
    title: str
    body: str = ""
    html: str = ""
    published_at: Optional[str] = None
    kind: str = "article"  # article | video | podcast | gallery | paywall | broken


@dataclass(frozen=True)
class CleanDoc:
    title: str
    body: str
    published_at: Optional[str] = None


class Fetcher(Protocol):
    def fetch(self, url: str) -> RawPage: ...


def page_key(url: str) -> str:
    return hashlib.sha256(url.encode("utf-8")).hexdigest()[:16]


class FixtureFetcher:
    """Reads recorded pages from ``<root>/pages/<page_key(url)>.json``."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def fetch(self, url: str) -> RawPage:
        path = self.root / "pages" / f"{page_key(url)}.json"
        if not path.exists():
            raise FetchError("broken_link", url, f"no recorded page fixture {path.name}")
        doc = json.loads(path.read_text("utf-8"))
        return RawPage(
            url=url,
            title=doc.get("title", ""),
            body=doc.get("body", ""),
            html=doc.get("html", ""),
            published_at=doc.get("published_at"),
            kind=doc.get("kind", "article"),
        )


class LiveFetcher:
    def __init__(self, timeout: float = 20.0):
        self.timeout = timeout

    def fetch(self, url: str) -> RawPage:
        try:
            response = httpx.get(url, timeout=self.timeout, follow_redirects=True)
        except httpx.TimeoutException as exc:
            raise FetchError("timeout", url, str(exc)) from exc
        except httpx.HTTPError as exc:
            raise FetchError("broken_link", url, str(exc)) from exc
        if response.status_code in (402, 403):
            raise FetchError("paywall", url, f"HTTP {response.status_code}")
        if response.status_code >= 400:
            raise FetchError("broken_link", url, f"HTTP {response.status_code}")
        content_type = response.headers.get("content-type", "")
        if "html" not in content_type and "text" not in content_type:
            raise FetchError("non_article", url, f"content-type {content_type}")
        return RawPage(url=url, title="", html=response.text)


def fetch_and_clean(url: str, dictionary: CleaningDictionary, fetcher: Fetcher) -> CleanDoc:
    """Fetch a page and return cleaned article text.

    Raises FetchError for paywalls, broken links, timeouts, and pages that
    are not news articles (videos, podcasts, galleries, or pages left empty
    by cleaning). Fetch errors are recorded by the caller, never fatal.
    """
    lowered = url.lower()
    if any(hint in lowered for hint in NON_ARTICLE_PATH_HINTS):
        raise FetchError("non_article", url, "media page")
    page = fetcher.fetch(url)
    if page.kind in ("video", "podcast", "gallery"):
        raise FetchError("non_article", url, page.kind)
    if page.kind == "paywall":
        raise FetchError("paywall", url)
    if page.kind == "broken":
        raise FetchError("broken_link", url)

    title, body = page.title, page.body
    if page.html:
        html_title, html_body = html_to_text(page.html)
        title = title or html_title
        body = body or html_body
    body_lower = body.lower()
    if any(marker in body_lower for marker in _PAYWALL_MARKERS):
        raise FetchError("paywall", url, "paywall marker in body")

    cleaned = clean_text(body, dictionary)
    if not cleaned:
        raise FetchError("non_article", url, "empty body after cleaning")
    return CleanDoc(title=clean_text(title, dictionary), body=cleaned, published_at=page.published_at)
