"""The living category > topic > subtopic hierarchy.

The hierarchy is data, not code: it ships as an editable JSON seed and grows
over time as editors add topics and subtopics. Every mutation produces a new
version (copy-on-write), so a label can always cite the exact version it was
validated against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from pressgauge.core.types import CATEGORIES

OTHER = "Other"  # always a legal subtopic, per the subtopic prompt


@dataclass(frozen=True)
class TopicHierarchy:
    categories: tuple[str, ...]
    topics: tuple[tuple[str, str], ...]  # (topic, category)
    subtopics: tuple[tuple[str, str], ...]  # (subtopic, topic)
    version: int = 1

    def __post_init__(self):
        topic_names = [t for t, _ in self.topics]
        sub_names = [s for s, _ in self.subtopics]
        if len(set(self.categories)) != len(self.categories):
            raise ValueError("duplicate category")
        if len(set(topic_names)) != len(topic_names):
            raise ValueError("duplicate topic name")
        if len(set(sub_names)) != len(sub_names):
            raise ValueError("duplicate subtopic name")
        for topic, category in self.topics:
            if category not in self.categories:
                raise ValueError(f"topic {topic!r} maps to unknown category {category!r}")
        known_topics = set(topic_names)
        for sub, topic in self.subtopics:
            if topic not in known_topics:
                raise ValueError(f"subtopic {sub!r} maps to unknown topic {topic!r}")

    # -- lookups ---------------------------------------------------------

    def has_topic(self, topic: str) -> bool:
        return any(t == topic for t, _ in self.topics)

    def category_of(self, topic: str) -> str:
        for t, category in self.topics:
            if t == topic:
                return category
        raise KeyError(topic)

    def subtopics_of(self, topic: str) -> list[str]:
        return [s for s, t in self.subtopics if t == topic]

    def has_subtopic(self, topic: str, subtopic: str) -> bool:
        if subtopic == OTHER:
            return True
        return (subtopic, topic) in self.subtopics

    def topic_names(self) -> list[str]:
        return [t for t, _ in self.topics]

    # -- (de)serialization ----------------------------------------------

    def to_doc(self) -> dict:
        return {
            "version": self.version,
            "categories": list(self.categories),
            "topics": [{"name": t, "category": c} for t, c in self.topics],
            "subtopics": [{"name": s, "topic": t} for s, t in self.subtopics],
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "TopicHierarchy":
        return cls(
            categories=tuple(doc["categories"]),
            topics=tuple((t["name"], t["category"]) for t in doc["topics"]),
            subtopics=tuple((s["name"], s["topic"]) for s in doc["subtopics"]),
            version=doc.get("version", 1),
        )


def hierarchy_add(hierarchy: TopicHierarchy, level: str, name: str, parent: str) -> TopicHierarchy:
    """Add a topic or subtopic, returning a new hierarchy with version + 1.

    Raises ``ValueError`` for a duplicate name at the same level or an unknown
    parent. The input hierarchy is untouched, so older versions stay usable.
    """
    if level == "topic":
        if parent not in hierarchy.categories:
            raise ValueError(f"unknown parent category {parent!r}")
        if hierarchy.has_topic(name):
            raise ValueError(f"duplicate topic {name!r}")
        return TopicHierarchy(
            categories=hierarchy.categories,
            topics=hierarchy.topics + ((name, parent),),
            subtopics=hierarchy.subtopics,
            version=hierarchy.version + 1,
        )
    if level == "subtopic":
        if not hierarchy.has_topic(parent):
            raise ValueError(f"unknown parent topic {parent!r}")
        if any(s == name for s, _ in hierarchy.subtopics):
            raise ValueError(f"duplicate subtopic {name!r}")
        return TopicHierarchy(
            categories=hierarchy.categories,
            topics=hierarchy.topics,
            subtopics=hierarchy.subtopics + ((name, parent),),
            version=hierarchy.version + 1,
        )
    raise ValueError(f"level must be 'topic' or 'subtopic', got {level!r}")


def load_hierarchy(path: str | Path) -> TopicHierarchy:
    with open(path, encoding="utf-8") as fh:
        return TopicHierarchy.from_doc(json.load(fh))


def load_default_hierarchy() -> TopicHierarchy:
    """The seed hierarchy bundled with the package."""
    text = resources.files("pressgauge.data").joinpath("hierarchy.json").read_text("utf-8")
    doc = json.loads(text)
    hierarchy = TopicHierarchy.from_doc(doc)
    if tuple(hierarchy.categories) != CATEGORIES:
        raise ValueError("bundled hierarchy categories drifted from the canonical set")
    return hierarchy


def flat_table(hierarchy: TopicHierarchy) -> Iterable[tuple[str, str, str, int]]:
    """(name, level, parent, version) rows for storage or export."""
    for name, category in hierarchy.topics:
        yield (name, "topic", category, hierarchy.version)
    for name, topic in hierarchy.subtopics:
        yield (name, "subtopic", topic, hierarchy.version)
