from __future__ import annotations

import pytest

from pressgauge.core.hierarchy import TopicHierarchy, load_default_hierarchy
from pressgauge.core.types import article_identity


@pytest.fixture(scope="session")
def hierarchy() -> TopicHierarchy:
    return load_default_hierarchy()


@pytest.fixture()
def small_hierarchy() -> TopicHierarchy:
    return TopicHierarchy(
        categories=("Politics", "Sports"),
        topics=(("Elections", "Politics"), ("Student Debt", "Politics"), ("Sports - Other", "Sports")),
        subtopics=(
            ("Presidential Horse Race", "Elections"),
            ("Loan Forgiveness", "Student Debt"),
            ("Tennis", "Sports - Other"),
        ),
        version=1,
    )


def make_article_doc(
    publisher_id: str = "usa-today",
    url: str = "https://www.usatoday.com/story/news/example",
    title: str = "An example headline",
    body: str = "First sentence of the body. Second sentence follows.",
    first_seen: str = "usa-today/2024-08-01T06:00:00-04:00",
    best_rank: int = 1,
    published_at: str | None = "2024-08-01",
) -> dict:
    return {
        "article_id": article_identity(publisher_id, url),
        "publisher_id": publisher_id,
        "canonical_url": url,
        "title": title,
        "body": body,
        "published_at": published_at,
        "first_seen_snapshot": first_seen,
        "best_rank": best_rank,
    }


def make_label_raw(article_id: str, **overrides) -> dict:
    raw = {
        "article_id": article_id,
        "topic": "Elections",
        "subtopic": "Presidential Horse Race",
        "takeaways": "A short summary of the piece.",
        "news_type": "news report",
        "news_type_justification": "States events without editorializing.",
        "lean": 0,
        "lean_reason": "No clear support for either party.",
        "tone": -1,
        "tone_reason": "Mildly negative framing overall.",
        "headline_lean": 0,
        "headline_lean_reason": "Neutral headline.",
        "headline_tone": 0,
        "headline_tone_reason": "Flat, descriptive headline.",
        "model_id": "test-model",
        "labeled_at": "2024-08-01T00:00:00Z",
    }
    raw.update(overrides)
    return raw
