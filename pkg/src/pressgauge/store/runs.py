"""Per-day pipeline orchestration: ingest -> label -> cluster.

Stages run in order; partial failures inside a stage (a paywalled fetch, a
dead-lettered article) are counted and the run continues, while
infrastructure failures (provider down, missing fixture) fail the stage and
stop the day. Every write is content-deduplicated, so rerunning a day (for
example after a crash) converges on exactly the state an uninterrupted run
produces.

``PRESSGAUGE_CRASH_AFTER_STAGE`` makes the process exit hard after the named
stage commits; the crash-safety tests use it to kill a run mid-day.
"""

from __future__ import annotations

import datetime as dt
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from pressgauge.clustering.embeddings import FixtureEmbeddingProvider, HttpEmbeddingProvider
from pressgauge.clustering.events import ArticleSeed, cluster_day
from pressgauge.clustering.facts import cluster_facts
from pressgauge.config import PipelineConfig
from pressgauge.core.hierarchy import TopicHierarchy, load_default_hierarchy
from pressgauge.core.types import EventCluster
from pressgauge.errors import DeadLetterError, FetchError, ProviderError
from pressgauge.ingest.cleaning import CleaningDictionary, load_default_dictionary
from pressgauge.ingest.dedupe import canonical_url, dedupe_and_merge
from pressgauge.ingest.fetch import FixtureFetcher, LiveFetcher, fetch_and_clean, page_key
from pressgauge.ingest.prominence import rank_snapshot
from pressgauge.ingest.schedule import snapshot_times
from pressgauge.ingest.snapshots import FixtureSnapshotSource
from pressgauge.labeling.engine import DeadLetterQueue, LabelingEngine
from pressgauge.labeling.providers import FixtureProvider, HttpProvider
from pressgauge.store.db import VersionedStore
from pressgauge.store.views import snapshot_date

STAGES = ("ingest", "label", "cluster")


class RunError(Exception):
    pass


@dataclass
class PipelineRun:
    run_id: str
    date: str
    stage: str
    status: str = "pending"  # pending -> running -> done | failed
    counters: dict[str, Any] = field(default_factory=dict)
    started_at: Optional[str] = None
    finished_at: Optional[str] = None
    error: Optional[str] = None

    _TRANSITIONS = {"pending": ("running",), "running": ("done", "failed")}

    def transition(self, status: str) -> None:
        if status not in self._TRANSITIONS.get(self.status, ()):
            raise RunError(f"illegal stage transition {self.status} -> {status}")
        self.status = status

    def to_doc(self) -> dict[str, Any]:
        return {
            "run_id": self.run_id,
            "date": self.date,
            "stage": self.stage,
            "status": self.status,
            "counters": self.counters,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "error": self.error,
        }


def _now() -> str:
    return dt.datetime.now(dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _maybe_crash(stage: str) -> None:
    if os.environ.get("PRESSGAUGE_CRASH_AFTER_STAGE") == stage:
        os._exit(3)


def put_unless_equal_ignoring(
    store: VersionedStore, kind: str, id: str, doc: dict, volatile: tuple[str, ...] = ()
) -> tuple[int, bool]:
    """Like ``store.put`` but a doc differing only in volatile fields is a no-op.

    Keeps live reruns from version-bumping labels whose substance is
    unchanged just because the timestamp moved.
    """
    existing = store.get(kind, id)
    if existing is not None:
        def strip(d: dict) -> dict:
            return {k: v for k, v in d.items() if k not in volatile}

        if strip(existing) == strip(doc):
            return store.latest_version(kind, id), False
    return store.put(kind, id, doc)


def _cleaning_dictionary(config: PipelineConfig) -> CleaningDictionary:
    if config.cleaning_dictionary_path:
        return CleaningDictionary.from_file(config.cleaning_dictionary_path)
    return load_default_dictionary()


def active_hierarchy(store: VersionedStore) -> TopicHierarchy:
    """The store's current hierarchy, seeding it from the package on first use."""
    doc = store.get("hierarchy", "main")
    if doc is None:
        hierarchy = load_default_hierarchy()
        store.put("hierarchy", "main", hierarchy.to_doc())
        return hierarchy
    return TopicHierarchy.from_doc(doc)


def _stage_ingest(config: PipelineConfig, store: VersionedStore, date: str, publishers: list, fixture_root: Optional[Path], live: bool) -> dict:
    dictionary = _cleaning_dictionary(config)
    if live:
        fetcher = LiveFetcher()
        source = None
    else:
        fetcher = FixtureFetcher(fixture_root)
        source = FixtureSnapshotSource(fixture_root)
    day = dt.date.fromisoformat(date)
    counters = {"snapshots": 0, "items": 0, "articles": 0, "new_articles": 0, "fetch_errors": {}}

    for publisher in publishers:
        snapshots = []
        for at in snapshot_times(day, config.snapshot_spec):
            if source is None:
                raise RunError("live homepage capture requires a renderer-backed snapshot source; use fixture mode")
            raw_items = source.capture(publisher.id, at)
            if not raw_items:
                continue
            snapshot = rank_snapshot(publisher.id, at.isoformat(), raw_items, config.snapshot_spec, config.prominence)
            snapshots.append(snapshot)
            store.put("snapshot", snapshot.key, {"publisher_id": publisher.id, "captured_at": snapshot.captured_at, "items": [i.to_doc() for i in snapshot.items]})
            counters["snapshots"] += 1
            counters["items"] += len(snapshot.items)

        urls = sorted({canonical_url(item.url) for snap in snapshots for item in snap.items})
        docs = {}
        for url in urls:
            try:
                docs[url] = fetch_and_clean(url, dictionary, fetcher)
            except FetchError as exc:
                kind_counts = counters["fetch_errors"]
                kind_counts[exc.kind] = kind_counts.get(exc.kind, 0) + 1
                store.put("fetch_error", page_key(url), {"url": url, "kind": exc.kind, "detail": exc.detail})

        for article in dedupe_and_merge(snapshots, docs):
            _, changed = store.put("article", article.article_id, article.to_doc())
            counters["articles"] += 1
            counters["new_articles"] += 1 if changed else 0
    return counters


def _stage_label(config: PipelineConfig, store: VersionedStore, date: str, fixture_root: Optional[Path], live: bool) -> dict:
    hierarchy = active_hierarchy(store)
    if live:
        provider = HttpProvider(config.provider)
        labeled_at_fn = None
    else:
        provider = FixtureProvider(fixture_root)
        labeled_at_fn = lambda: f"{date}T00:00:00Z"  # replayable timestamp

    queue_path = None
    if store.path != ":memory:":
        queue_path = Path(store.path).with_suffix(".deadletter.ndjson")
    engine = LabelingEngine(
        provider,
        hierarchy,
        settings=config.provider,
        dead_letters=DeadLetterQueue(queue_path),
        labeled_at_fn=labeled_at_fn,
    )

    from pressgauge.core.types import Article

    eligible = []
    for article_id, doc in store.iter_latest("article"):
        if snapshot_date(doc["first_seen_snapshot"]) != date:
            continue
        if doc["best_rank"] > config.snapshot_spec.top_k_labeled:
            continue
        eligible.append(Article.from_doc(doc))

    counters = {"eligible": len(eligible), "labeled": 0, "new_labels": 0, "dead_lettered": 0}
    bundles: dict[str, dict] = {}
    if config.provider.concurrency > 1:
        # All five label calls for one article stay one ordered job; jobs for
        # different articles run in parallel up to the configured budget.
        from concurrent.futures import ThreadPoolExecutor, as_completed

        with ThreadPoolExecutor(max_workers=config.provider.concurrency) as pool:
            futures = {pool.submit(engine.label_bundle, article): article for article in eligible}
            for future in as_completed(futures):
                try:
                    bundles[futures[future].article_id] = future.result()
                except DeadLetterError:
                    counters["dead_lettered"] += 1
    else:
        for article in eligible:
            try:
                bundles[article.article_id] = engine.label_bundle(article)
            except DeadLetterError:
                counters["dead_lettered"] += 1

    # Single writer: results land in deterministic order regardless of how
    # the labeling jobs interleaved.
    for article_id in sorted(bundles):
        bundle = bundles[article_id]
        _, changed = put_unless_equal_ignoring(store, "label", article_id, bundle["label"], volatile=("labeled_at",))
        store.put("sentences", article_id, {"article_id": article_id, "input_truncated": bundle["input_truncated"], "sentences": bundle["sentences"]})
        store.put("quotes", article_id, {"article_id": article_id, "quotes": bundle["quotes"]})
        counters["labeled"] += 1
        counters["new_labels"] += 1 if changed else 0
    return counters


def _stage_cluster(config: PipelineConfig, store: VersionedStore, date: str, fixture_root: Optional[Path], live: bool) -> dict:
    if live:
        embedding_provider = HttpEmbeddingProvider(config.provider)
        llm_provider = HttpProvider(config.provider)
    else:
        embedding_provider = FixtureEmbeddingProvider(fixture_root)
        llm_provider = FixtureProvider(fixture_root)

    seeds = []
    for article_id, doc in store.iter_latest("article"):
        if snapshot_date(doc["first_seen_snapshot"]) != date:
            continue
        label = store.get("label", article_id)
        seeds.append(
            ArticleSeed(
                article_id=article_id,
                title=doc["title"],
                body=doc["body"],
                takeaways=label["takeaways"] if label else "",
            )
        )

    result = cluster_day(
        date,
        seeds,
        embedding_provider,
        llm_provider,
        settings=config.provider,
        config=config.clustering,
    )

    counters = {"articles": len(seeds), "events": len(result.events), "clustered": 0, "unclustered": len(result.unclustered), "fact_clusters": 0}
    event_ids = []
    for event in result.events:
        store.put("event", event.event_id, event.to_doc())
        event_ids.append(event.event_id)
        counters["clustered"] += len(event.member_article_ids)
        facts = cluster_facts(
            event,
            _fact_sentences(store, event),
            embedding_provider,
            llm_provider,
            settings=config.provider,
            config=config.clustering,
        )
        store.put("facts", event.event_id, {"event_id": event.event_id, "clusters": [f.to_doc() for f in facts]})
        counters["fact_clusters"] += len(facts)
    store.put("event_index", date, {"day": date, "event_ids": event_ids})
    log_doc = result.log.to_doc()
    log_doc["truncated_embeddings"] = sorted(result.truncated_embeddings)
    store.put("refinement", date, log_doc)
    return counters


def _fact_sentences(store: VersionedStore, event: EventCluster) -> list[tuple[str, int, str]]:
    out = []
    for article_id in sorted(event.member_article_ids):
        doc = store.get("sentences", article_id)
        if not doc:
            continue
        for sentence in doc["sentences"]:
            if sentence["type"] == "fact":
                out.append((article_id, sentence["sentence"], sentence["text"]))
    return out


def run_day(
    config: PipelineConfig,
    store: VersionedStore,
    date: str,
    publishers: Optional[list[str]] = None,
    provider_mode: Optional[str] = None,
    stages: tuple[str, ...] = STAGES,
) -> dict[str, Any]:
    """Execute the selected stages (default ingest -> label -> cluster) for one day."""
    unknown_stages = [s for s in stages if s not in STAGES]
    if unknown_stages:
        raise RunError(f"unknown stages: {unknown_stages}")
    mode = provider_mode or config.provider.mode
    if mode not in ("fixture", "live"):
        raise RunError(f"unknown provider mode {mode!r}")
    live = mode == "live"
    fixture_root = None
    if not live:
        if not config.fixture_dir:
            raise RunError("fixture mode requires fixture_dir in the config")
        fixture_root = Path(config.fixture_dir)
        if not fixture_root.exists():
            raise RunError(f"fixture directory {fixture_root} does not exist")

    selected = []
    for publisher in config.publishers:
        if publishers is not None and publisher.id not in publishers:
            continue
        if publishers is not None and not publisher.enabled:
            raise RunError(f"publisher {publisher.id} is disabled")
        if publisher.enabled:
            selected.append(publisher)
    if publishers is not None:
        unknown = set(publishers) - {p.id for p in config.publishers}
        if unknown:
            raise RunError(f"unknown publishers: {sorted(unknown)}")

    report: dict[str, Any] = {"date": date, "provider_mode": mode, "stages": {}, "status": "done", "error": None}
    stage_fns = {
        "ingest": lambda: _stage_ingest(config, store, date, selected, fixture_root, live),
        "label": lambda: _stage_label(config, store, date, fixture_root, live),
        "cluster": lambda: _stage_cluster(config, store, date, fixture_root, live),
    }

    for stage in (s for s in STAGES if s in stages):
        run = PipelineRun(run_id=f"{date}/{stage}", date=date, stage=stage, started_at=_now())
        run.transition("running")
        store.put("run", run.run_id, run.to_doc())
        try:
            counters = stage_fns[stage]()
        except (ProviderError, RunError, FileNotFoundError, ValueError) as exc:
            run.transition("failed")
            run.error = str(exc)
            run.finished_at = _now()
            store.put("run", run.run_id, run.to_doc())
            report["status"] = "failed"
            report["error"] = f"{stage}: {exc}"
            return report
        run.counters = counters
        run.transition("done")
        run.finished_at = _now()
        store.put("run", run.run_id, run.to_doc())
        report["stages"][stage] = counters
        _maybe_crash(stage)
    return report
