"""Article-level party focus.

Each sentence's focus maps to a number (republican +1, democrat -1, both and
neither 0) and the article score is the plain mean, so it always lands in
[-1, +1]: positive means the article talks more about Republicans, negative
more about Democrats, regardless of whether the coverage is favorable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from pressgauge.core.types import SentenceRecord

_FOCUS_VALUES = {"republican": 1.0, "democrat": -1.0, "both": 0.0, "neither": 0.0}


def focus_value(focus: str) -> float:
    try:
        return _FOCUS_VALUES[focus]
    except KeyError:
        raise ValueError(f"unknown focus label {focus!r}") from None


@dataclass(frozen=True)
class FocusScore:
    article_id: str
    value: float

    def __post_init__(self):
        if not (-1.0 <= self.value <= 1.0):
            raise ValueError(f"focus score {self.value} outside [-1, 1]")


def article_focus(records: Sequence[SentenceRecord]) -> FocusScore:
    """Mean mapped focus over an article's sentence records."""
    if not records:
        raise ValueError("cannot compute focus of an article with no sentence records")
    article_ids = {r.article_id for r in records}
    if len(article_ids) > 1:
        raise ValueError(f"records span multiple articles: {sorted(article_ids)}")
    total = sum(focus_value(r.focus) for r in records)
    return FocusScore(article_id=records[0].article_id, value=total / len(records))
