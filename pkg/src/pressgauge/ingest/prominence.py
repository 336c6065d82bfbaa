"""Homepage prominence scoring and snapshot ranking.

A snapshot records, for every headline on a publisher's homepage, where it
sat (pixels from the top), how big its title text was, and how much image
area accompanied it. Prominence is a weighted linear combination of those
three signals, each min-max normalized within the snapshot:

    score = -w_pos * norm(y_offset) + w_font * norm(font_size) + w_img * norm(image_area)

The combination is monotone in each signal (closer to the top, bigger type,
bigger image all rank higher), and the weights are configuration, not code.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence

from pressgauge.config import ProminenceWeights
from pressgauge.core.types import SnapshotSpec


@dataclass(frozen=True)
class SnapshotItem:
    url: str
    title_text: str
    y_offset: float  # pixels from page top
    font_size: float  # points
    image_area: float = 0.0  # pixels^2, 0 when no image
    rank: Optional[int] = None  # assigned by rank_snapshot

    def __post_init__(self):
        if self.y_offset < 0:
            raise ValueError("y_offset must be >= 0")
        if self.font_size <= 0:
            raise ValueError("font_size must be > 0")
        if self.image_area < 0:
            raise ValueError("image_area must be >= 0")

    def to_doc(self) -> dict:
        doc = {
            "url": self.url,
            "title": self.title_text,
            "y_offset": self.y_offset,
            "font_size": self.font_size,
            "image_area": self.image_area,
        }
        if self.rank is not None:
            doc["rank"] = self.rank
        return doc

    @classmethod
    def from_doc(cls, doc: dict) -> "SnapshotItem":
        return cls(
            url=doc["url"],
            title_text=doc.get("title", ""),
            y_offset=doc["y_offset"],
            font_size=doc["font_size"],
            image_area=doc.get("image_area", 0.0),
            rank=doc.get("rank"),
        )


@dataclass(frozen=True)
class HomepageSnapshot:
    publisher_id: str
    captured_at: str  # ISO timestamp with offset
    items: tuple[SnapshotItem, ...]  # ordered by descending prominence

    @property
    def key(self) -> str:
        return f"{self.publisher_id}/{self.captured_at}"


Bounds = tuple[tuple[float, float], tuple[float, float], tuple[float, float]]


def snapshot_bounds(items: Sequence[SnapshotItem]) -> Bounds:
    """(min, max) per signal over the snapshot, for min-max normalization."""
    ys = [i.y_offset for i in items]
    fs = [i.font_size for i in items]
    ims = [i.image_area for i in items]
    return ((min(ys), max(ys)), (min(fs), max(fs)), (min(ims), max(ims)))


def _norm(value: float, lo: float, hi: float) -> float:
    # A degenerate signal (single item, or all values equal) normalizes to 1,
    # which only shifts every score by a constant.
    if hi == lo:
        return 1.0
    return (value - lo) / (hi - lo)


def prominence_score(item: SnapshotItem, weights: ProminenceWeights, bounds: Bounds) -> float:
    (ylo, yhi), (flo, fhi), (ilo, ihi) = bounds
    return (
        -weights.w_pos * _norm(item.y_offset, ylo, yhi)
        + weights.w_font * _norm(item.font_size, flo, fhi)
        + weights.w_img * _norm(item.image_area, ilo, ihi)
    )


def rank_snapshot(
    publisher_id: str,
    captured_at: str,
    raw_items: Sequence[SnapshotItem],
    spec: SnapshotSpec,
    weights: ProminenceWeights = ProminenceWeights(),
) -> HomepageSnapshot:
    """Order raw items by prominence and keep the top ``top_k_scraped``.

    The ordering is total and deterministic regardless of input order: ties
    on score break by smaller y_offset, then by URL. The ``rank`` written on
    each kept item counts items with strictly greater prominence, so items
    that tie on score share a rank.
    """
    if not raw_items:
        raise ValueError("cannot rank an empty snapshot")
    bounds = snapshot_bounds(raw_items)
    scored = [(prominence_score(item, weights, bounds), item) for item in raw_items]
    scored.sort(key=lambda pair: (-pair[0], pair[1].y_offset, pair[1].url))
    kept = scored[: spec.top_k_scraped]
    kept_scores = [s for s, _ in kept]
    ranked = tuple(
        replace(item, rank=1 + sum(1 for other in kept_scores if other > score))
        for score, item in kept
    )
    return HomepageSnapshot(publisher_id=publisher_id, captured_at=captured_at, items=ranked)
