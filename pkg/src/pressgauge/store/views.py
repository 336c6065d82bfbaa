"""Read-side assembly: flat article rows, event lookups, API documents.

The store keeps normalized documents (article, label, sentences, quotes,
event, facts, overlay); everything analytics or the API needs is joined
here, read-only. Corrections are *overlays*: the model label is never
mutated, and a row only reflects a correction when ``use_corrections`` is
set and the overlay is unambiguous (conflicting corrections stay queued for
adjudication without touching the effective value).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from pressgauge.analytics.focus import focus_value
from pressgauge.core.hierarchy import TopicHierarchy
from pressgauge.core.types import Article, EventCluster
from pressgauge.store.db import VersionedStore


def snapshot_date(first_seen_snapshot: str) -> Optional[str]:
    """The capture date (publisher-local) out of "<publisher>/<ISO timestamp>"."""
    _, _, stamp = first_seen_snapshot.partition("/")
    return stamp[:10] if len(stamp) >= 10 else None


def _overlay_value(overlays: list[dict], dimension: str) -> Optional[Any]:
    values = {json.dumps(o["corrected_label"], sort_keys=True) for o in overlays if o["dimension"] == dimension}
    if len(values) != 1:
        return None  # no overlay, or a conflict awaiting adjudication
    return json.loads(values.pop())


def article_rows(
    store: VersionedStore,
    use_corrections: bool = False,
    hierarchy: Optional[TopicHierarchy] = None,
) -> list[dict[str, Any]]:
    """One flat row per stored article, joined with labels, focus, and event."""
    overlays_by_article: dict[str, list[dict]] = {}
    if use_corrections:
        for _, overlay in store.iter_latest("overlay"):
            overlays_by_article.setdefault(overlay["article_id"], []).append(overlay)

    event_by_article: dict[str, str] = {}
    indexed_days = store.ids("event_index")
    if indexed_days:
        for day in indexed_days:
            for event_id, event in _day_events(store, day):
                for member in event["member_article_ids"]:
                    event_by_article[member] = event_id
    else:
        for event_id, event in store.iter_latest("event"):
            for member in event["member_article_ids"]:
                event_by_article[member] = event_id

    rows = []
    for article_id, article in store.iter_latest("article"):
        row: dict[str, Any] = {
            "article_id": article_id,
            "publisher_id": article["publisher_id"],
            "date": snapshot_date(article["first_seen_snapshot"]),
            "best_rank": article["best_rank"],
            "title": article["title"],
            "event_id": event_by_article.get(article_id),
            "category": None,
            "topic": None,
            "subtopic": None,
            "news_type": None,
            "lean": None,
            "tone": None,
            "headline_lean": None,
            "headline_tone": None,
            "lean_reason": None,
            "tone_reason": None,
            "focus": None,
        }
        label = store.get("label", article_id)
        if label:
            row.update(
                category=label["category"],
                topic=label["topic"],
                subtopic=label["subtopic"],
                news_type=label["news_type"],
                lean=label["lean"]["lean"],
                tone=label["tone"]["tone"],
                headline_lean=label["headline_lean"]["lean"],
                headline_tone=label["headline_tone"]["tone"],
                lean_reason=label["lean"]["reason"],
                tone_reason=label["tone"]["reason"],
            )
        sentences = store.get("sentences", article_id)
        if sentences and sentences.get("sentences"):
            values = [focus_value(s["focus"]) for s in sentences["sentences"]]
            row["focus"] = sum(values) / len(values)

        if use_corrections and article_id in overlays_by_article:
            overlays = overlays_by_article[article_id]
            for dimension, field in (("article_lean", "lean"), ("article_tone", "tone")):
                corrected = _overlay_value(overlays, dimension)
                if corrected is not None:
                    row[field] = corrected
            corrected_type = _overlay_value(overlays, "article_type")
            if corrected_type is not None:
                row["news_type"] = corrected_type
            corrected_topic = _overlay_value(overlays, "topic")
            if corrected_topic is not None and hierarchy and hierarchy.has_topic(corrected_topic):
                row["topic"] = corrected_topic
                row["category"] = hierarchy.category_of(corrected_topic)
        rows.append(row)
    return rows


def _day_events(store: VersionedStore, day: str) -> list[tuple[str, dict]]:
    """The day's current events: via the day index when one exists (so stale
    clusters from an older run of the same day are invisible), otherwise by
    scanning."""
    index = store.get("event_index", day)
    if index is not None:
        pairs = []
        for event_id in index["event_ids"]:
            event = store.get("event", event_id)
            if event is not None:
                pairs.append((event_id, event))
        return pairs
    return [(eid, e) for eid, e in store.iter_latest("event") if e["day"] == day]


def events_for_day(store: VersionedStore, day: str) -> list[dict[str, Any]]:
    """A day's events ranked by member count, with per-publisher attention."""
    publisher_of = {aid: doc["publisher_id"] for aid, doc in store.iter_latest("article")}
    events = []
    for event_id, event in _day_events(store, day):
        members = event["member_article_ids"]
        publisher_counts: dict[str, int] = {}
        for member in members:
            publisher = publisher_of.get(member)
            if publisher:
                publisher_counts[publisher] = publisher_counts.get(publisher, 0) + 1
        events.append(
            {
                "event_id": event_id,
                "day": day,
                "theme": event["theme"],
                "theme_short": event["theme_short"],
                "size": len(members),
                "publisher_counts": dict(sorted(publisher_counts.items())),
            }
        )
    events.sort(key=lambda e: (-e["size"], e["event_id"]))
    return events


def event_assignments(store: VersionedStore, day: str) -> dict[str, Optional[str]]:
    """article_id -> event_id (or None) for every article seen on ``day``."""
    assignments: dict[str, Optional[str]] = {}
    for article_id, article in store.iter_latest("article"):
        if snapshot_date(article["first_seen_snapshot"]) == day:
            assignments[article_id] = None
    for event_id, event in _day_events(store, day):
        for member in event["member_article_ids"]:
            assignments[member] = event_id
    return assignments


def facts_for_event(store: VersionedStore, event_id: str) -> Optional[list[dict[str, Any]]]:
    """An event's fact clusters with member sentences traced to their articles."""
    event = store.get("event", event_id)
    if event is None:
        return None
    facts_doc = store.get("facts", event_id) or {"clusters": []}
    out = []
    for cluster in facts_doc["clusters"]:
        members = []
        for article_id, index in cluster["member_sentences"]:
            article = store.get("article", article_id) or {}
            sentences = (store.get("sentences", article_id) or {}).get("sentences", [])
            text = next((s["text"] for s in sentences if s["sentence"] == index), None)
            members.append(
                {
                    "article_id": article_id,
                    "sentence": index,
                    "text": text,
                    "publisher_id": article.get("publisher_id"),
                    "title": article.get("title"),
                    "url": article.get("canonical_url"),
                }
            )
        out.append(
            {
                "fact_id": cluster["fact_id"],
                "synthetic_sentence": cluster["synthetic_sentence"],
                "members": members,
            }
        )
    return out


def article_document(store: VersionedStore, article_id: str) -> Optional[dict[str, Any]]:
    """The full joined document for one article (API detail view / export)."""
    article = store.get("article", article_id)
    if article is None:
        return None
    overlays = [o for _, o in store.iter_latest("overlay") if o["article_id"] == article_id]
    return {
        "article": article,
        "label": store.get("label", article_id),
        "sentences": (store.get("sentences", article_id) or {}).get("sentences", []),
        "quotes": (store.get("quotes", article_id) or {}).get("quotes", []),
        "overlays": overlays,
    }


def export_ndjson(store: VersionedStore, path: str | Path) -> int:
    """Write one joined document per article; returns the document count."""
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for article_id in store.ids("article"):
            doc = article_document(store, article_id)
            fh.write(json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n")
            count += 1
    return count


def load_event_table(store: VersionedStore, path: str | Path) -> dict[str, int]:
    """Load a committed event-table fixture (events plus member article stubs).

    The file holds {"day", "articles": [article docs], "events": [event
    docs]}; both are schema-checked before writing. Used to seed a store
    with a known day of events.
    """
    doc = json.loads(Path(path).read_text("utf-8"))
    day = doc["day"]
    for article_doc in doc.get("articles", []):
        Article.from_doc(article_doc)  # validates identity + invariants
        store.put("article", article_doc["article_id"], article_doc)
    event_ids = []
    for event_doc in doc["events"]:
        event = EventCluster.from_doc(event_doc)
        if event.day != day:
            raise ValueError(f"event {event.event_id} day {event.day} != table day {day}")
        store.put("event", event.event_id, event.to_doc())
        event_ids.append(event.event_id)
    store.put("event_index", day, {"day": day, "event_ids": event_ids})
    return {"day_events": len(doc["events"]), "articles": len(doc.get("articles", []))}
