"""Article identity and cross-snapshot deduplication.

The same story reappears across a day's snapshots (often at different
ranks), and its URL usually carries tracking junk. Identity is the digest of
(publisher, canonical URL); merging keeps the best (minimum) rank and the
earliest snapshot in which the URL was seen.
"""

from __future__ import annotations

from typing import Iterable, Mapping
from urllib.parse import parse_qsl, urlencode, urlsplit, urlunsplit

from pressgauge.core.types import Article, article_identity
from pressgauge.ingest.fetch import CleanDoc
from pressgauge.ingest.prominence import HomepageSnapshot

_TRACKING_PREFIXES = ("utm_",)
_TRACKING_PARAMS = frozenset({"fbclid", "gclid", "mc_cid", "mc_eid", "smid", "ref", "cmpid", "ito", "partner"})


def canonical_url(url: str) -> str:
    """Normalize a URL: lowercase host, drop fragment and tracking params."""
    parts = urlsplit(url.strip())
    query = [
        (k, v)
        for k, v in parse_qsl(parts.query, keep_blank_values=True)
        if k not in _TRACKING_PARAMS and not k.lower().startswith(_TRACKING_PREFIXES)
    ]
    path = parts.path
    if path.endswith("/") and path != "/":
        path = path.rstrip("/")
    return urlunsplit((parts.scheme.lower(), parts.netloc.lower(), path, urlencode(query), ""))


def dedupe_and_merge(
    snapshots: Iterable[HomepageSnapshot],
    docs: Mapping[str, CleanDoc],
) -> list[Article]:
    """One Article per identity across a publisher-day's snapshots.

    ``docs`` maps canonical URLs to fetched-and-cleaned pages; items whose
    fetch failed simply have no entry and produce no Article. Snapshots must
    all belong to one publisher.
    """
    ordered = sorted(snapshots, key=lambda s: s.captured_at)
    publishers = {s.publisher_id for s in ordered}
    if len(publishers) > 1:
        raise ValueError(f"snapshots span multiple publishers: {sorted(publishers)}")

    best_rank: dict[str, int] = {}
    first_seen: dict[str, str] = {}
    for snapshot in ordered:
        for item in snapshot.items:
            url = canonical_url(item.url)
            if item.rank is None:
                raise ValueError("dedupe requires ranked snapshots")
            if url not in best_rank or item.rank < best_rank[url]:
                best_rank[url] = item.rank
            first_seen.setdefault(url, snapshot.key)

    articles = []
    for url, rank in best_rank.items():
        doc = docs.get(url)
        if doc is None:
            continue
        publisher_id = next(iter(publishers))
        articles.append(
            Article(
                article_id=article_identity(publisher_id, url),
                publisher_id=publisher_id,
                canonical_url=url,
                title=doc.title,
                body=doc.body,
                published_at=doc.published_at,
                first_seen_snapshot=first_seen[url],
                best_rank=rank,
            )
        )
    articles.sort(key=lambda a: (a.best_rank, a.canonical_url))
    return articles
