"""Command-line interface.

One entry point with stage-level subcommands (ingest / label / cluster),
whole-day orchestration (run day), analytics (analyze, export), validation
(validate sample / report), hierarchy editing, fixture loading, and the API
server (serve).
"""

from __future__ import annotations

import datetime as dt
import json
import sys
from dataclasses import replace
from pathlib import Path

import click

from pressgauge.analytics.aggregate import AggregateQuery, aggregate
from pressgauge.analytics.tables import render_csv, render_table
from pressgauge.config import load_config
from pressgauge.core.hierarchy import hierarchy_add
from pressgauge.core.types import Article
from pressgauge.errors import DeadLetterError
from pressgauge.ingest.prominence import rank_snapshot
from pressgauge.ingest.schedule import snapshot_times
from pressgauge.ingest.snapshots import FixtureSnapshotSource
from pressgauge.labeling.engine import DeadLetterQueue, LabelingEngine
from pressgauge.labeling.providers import FixtureProvider, HttpProvider
from pressgauge.store.db import VersionedStore
from pressgauge.store.runs import RunError, active_hierarchy, put_unless_equal_ignoring, run_day
from pressgauge.store.views import article_rows, export_ndjson, load_event_table
from pressgauge.validation.metrics import agreement_report
from pressgauge.validation.sampling import StratificationSpec, sample_validation_batch


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None, help="YAML config file.")
@click.option("--store", "store_path", type=click.Path(), default=None, help="Store database path.")
@click.pass_context
def main(ctx, config_path, store_path):
    """Measure news coverage: ingest homepages, label articles, cluster events."""
    config = load_config(config_path)
    if store_path:
        config = replace(config, store_path=store_path)
    ctx.obj = {"config": config}


def _store(ctx) -> VersionedStore:
    if "store" not in ctx.obj:
        ctx.obj["store"] = VersionedStore(ctx.obj["config"].store_path)
    return ctx.obj["store"]


def _echo_json(doc) -> None:
    click.echo(json.dumps(doc, indent=2, sort_keys=True))


# --------------------------------------------------------------------- run


@main.group()
def run():
    """Whole-day pipeline runs."""


@run.command("day")
@click.option("--date", required=True)
@click.option("--publisher", "publishers", multiple=True, help="Restrict to these publisher ids.")
@click.option("--provider", "provider_mode", type=click.Choice(["fixture", "live"]), default=None)
@click.pass_context
def run_day_cmd(ctx, date, publishers, provider_mode):
    """Execute ingest -> label -> cluster for one day."""
    config = ctx.obj["config"]
    try:
        report = run_day(config, _store(ctx), date, publishers=list(publishers) or None, provider_mode=provider_mode)
    except RunError as exc:
        raise click.ClickException(str(exc))
    _echo_json(report)
    if report["status"] != "done":
        sys.exit(1)


# ------------------------------------------------------------------ ingest


@main.group()
def ingest():
    """Homepage snapshot capture and article ingestion."""


@ingest.command("snapshot")
@click.option("--publisher", required=True)
@click.option("--at", "at_time", required=True, help="Capture time, e.g. 2024-10-15T06:00.")
@click.option("--fixture", "fixture_dir", type=click.Path(exists=True), default=None)
@click.pass_context
def ingest_snapshot(ctx, publisher, at_time, fixture_dir):
    """Rank one recorded snapshot and print the retained items."""
    config = ctx.obj["config"]
    root = fixture_dir or config.fixture_dir
    if not root:
        raise click.ClickException("a fixture directory is required (--fixture or config fixture_dir)")
    at = dt.datetime.fromisoformat(at_time)
    if at.tzinfo is None:
        from zoneinfo import ZoneInfo

        at = at.replace(tzinfo=ZoneInfo(config.snapshot_spec.timezone))
    items = FixtureSnapshotSource(root).capture(publisher, at)
    if not items:
        raise click.ClickException(f"no recorded snapshot for {publisher} at {at.isoformat()}")
    snapshot = rank_snapshot(publisher, at.isoformat(), items, config.snapshot_spec, config.prominence)
    _echo_json({"publisher": publisher, "captured_at": snapshot.captured_at, "items": [i.to_doc() for i in snapshot.items]})


@ingest.command("day")
@click.option("--date", required=True)
@click.option("--publisher", "publishers", multiple=True)
@click.option("--provider", "provider_mode", type=click.Choice(["fixture", "live"]), default=None)
@click.pass_context
def ingest_day(ctx, date, publishers, provider_mode):
    """Run only the ingest stage for a day."""
    config = ctx.obj["config"]
    report = run_day(config, _store(ctx), date, publishers=list(publishers) or None, provider_mode=provider_mode, stages=("ingest",))
    _echo_json(report)
    if report["status"] != "done":
        sys.exit(1)


@ingest.command("schedule")
@click.option("--date", required=True)
@click.pass_context
def ingest_schedule(ctx, date):
    """Print the day's snapshot jobs (publisher x capture time)."""
    config = ctx.obj["config"]
    day = dt.date.fromisoformat(date)
    jobs = [
        {"publisher": p.id, "at": t.isoformat()}
        for t in snapshot_times(day, config.snapshot_spec)
        for p in config.enabled_publishers()
    ]
    _echo_json(jobs)


# ------------------------------------------------------------------- label


@main.group()
def label():
    """Model labeling of ingested articles."""


@label.command("run")
@click.option("--date", required=True)
@click.option("--publisher", "publishers", multiple=True)
@click.option("--provider", "provider_mode", type=click.Choice(["fixture", "live"]), default=None)
@click.pass_context
def label_run(ctx, date, publishers, provider_mode):
    """Run only the label stage for a day."""
    config = ctx.obj["config"]
    report = run_day(config, _store(ctx), date, publishers=list(publishers) or None, provider_mode=provider_mode, stages=("label",))
    _echo_json(report)
    if report["status"] != "done":
        sys.exit(1)


@label.command("retry-deadletter")
@click.option("--provider", "provider_mode", type=click.Choice(["fixture", "live"]), default=None)
@click.pass_context
def label_retry_deadletter(ctx, provider_mode):
    """Re-run labeling for dead-lettered articles; drain what now succeeds."""
    config = ctx.obj["config"]
    store = _store(ctx)
    queue_path = Path(config.store_path).with_suffix(".deadletter.ndjson") if config.store_path != ":memory:" else None
    queue = DeadLetterQueue(queue_path)
    entries = queue.entries()
    if not entries:
        click.echo("dead-letter queue is empty")
        return
    mode = provider_mode or config.provider.mode
    if mode == "live":
        provider = HttpProvider(config.provider)
    else:
        if not config.fixture_dir:
            raise click.ClickException("fixture mode requires fixture_dir in the config")
        provider = FixtureProvider(config.fixture_dir)
    engine = LabelingEngine(provider, active_hierarchy(store), settings=config.provider, dead_letters=DeadLetterQueue())

    remaining, drained = [], 0
    for entry in entries:
        doc = store.get("article", entry["item_id"])
        if doc is None:
            remaining.append(entry)
            continue
        try:
            bundle = engine.label_bundle(Article.from_doc(doc))
        except DeadLetterError:
            remaining.append(entry)
            continue
        put_unless_equal_ignoring(store, "label", entry["item_id"], bundle["label"], volatile=("labeled_at",))
        store.put("sentences", entry["item_id"], {"article_id": entry["item_id"], "input_truncated": bundle["input_truncated"], "sentences": bundle["sentences"]})
        store.put("quotes", entry["item_id"], {"article_id": entry["item_id"], "quotes": bundle["quotes"]})
        drained += 1
    queue.replace_all(remaining)
    click.echo(f"drained {drained} of {len(entries)} dead-lettered items; {len(remaining)} remain")


# ----------------------------------------------------------------- cluster


@main.group()
def cluster():
    """Event and fact clustering."""


@cluster.command("day")
@click.option("--date", required=True)
@click.option("--article-threshold", type=float, default=None)
@click.option("--fact-threshold", type=float, default=None)
@click.option("--provider", "provider_mode", type=click.Choice(["fixture", "live"]), default=None)
@click.pass_context
def cluster_day_cmd(ctx, date, article_threshold, fact_threshold, provider_mode):
    """Run only the cluster stage for a day."""
    config = ctx.obj["config"]
    clustering = config.clustering
    if article_threshold is not None:
        clustering = replace(clustering, article_threshold=article_threshold)
    if fact_threshold is not None:
        clustering = replace(clustering, fact_threshold=fact_threshold)
    config = replace(config, clustering=clustering)
    report = run_day(config, _store(ctx), date, provider_mode=provider_mode, stages=("cluster",))
    _echo_json(report)
    if report["status"] != "done":
        sys.exit(1)


# ---------------------------------------------------------------- analyze


@main.command("analyze")
@click.option("--query", "query_path", required=True, type=click.Path(exists=True))
@click.option("--csv", "csv_path", type=click.Path(), default=None)
@click.option("--plot", "plot_path", type=click.Path(), default=None)
@click.pass_context
def analyze(ctx, query_path, csv_path, plot_path):
    """Run an aggregate query from a JSON file; print an aligned table."""
    store = _store(ctx)
    query = AggregateQuery.from_doc(json.loads(Path(query_path).read_text("utf-8")))
    rows = article_rows(store, use_corrections=query.use_corrections, hierarchy=active_hierarchy(store))
    cells = aggregate(query, rows)
    click.echo(render_table(query, cells))
    if csv_path:
        Path(csv_path).write_text(render_csv(query, cells), encoding="utf-8")
        click.echo(f"wrote {csv_path}")
    if plot_path:
        from pressgauge.analytics.plots import plot_aggregate

        plot_aggregate(query, cells, plot_path)
        click.echo(f"wrote {plot_path}")


@main.command("plot")
@click.option("--kind", type=click.Choice(["headline-delta", "horserace"]), required=True)
@click.option("--dimension", type=click.Choice(["lean", "tone"]), default="lean", help="Axis for headline-delta.")
@click.option("--start", required=True)
@click.option("--end", required=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.pass_context
def plot(ctx, kind, dimension, start, end, out_path):
    """Emit the headline-vs-article or horse-race-vs-policy chart."""
    from pressgauge.analytics.aggregate import headline_delta, horserace_vs_policy
    from pressgauge.analytics.plots import plot_headline_delta, plot_horserace

    config = ctx.obj["config"]
    store = _store(ctx)
    rows = [r for r in article_rows(store, hierarchy=active_hierarchy(store)) if r["date"] and start <= r["date"] <= end]
    if kind == "headline-delta":
        plot_headline_delta(headline_delta(rows), dimension, out_path)
    else:
        counts = horserace_vs_policy(
            rows,
            config.analytics.horserace_subtopics,
            config.analytics.policy_topics,
            active_hierarchy(store),
        )
        plot_horserace(counts, out_path)
    click.echo(f"wrote {out_path}")


@main.command("export")
@click.option("--format", "fmt", type=click.Choice(["csv", "ndjson"]), required=True)
@click.option("--query", "query_path", type=click.Path(exists=True), default=None, help="Required for csv export.")
@click.option("--out", "out_path", required=True, type=click.Path())
@click.pass_context
def export(ctx, fmt, query_path, out_path):
    """Export the store: ndjson article documents or a csv aggregate."""
    store = _store(ctx)
    if fmt == "ndjson":
        count = export_ndjson(store, out_path)
        click.echo(f"wrote {count} documents to {out_path}")
        return
    if not query_path:
        raise click.ClickException("csv export requires --query")
    query = AggregateQuery.from_doc(json.loads(Path(query_path).read_text("utf-8")))
    rows = article_rows(store, use_corrections=query.use_corrections, hierarchy=active_hierarchy(store))
    Path(out_path).write_text(render_csv(query, aggregate(query, rows)), encoding="utf-8")
    click.echo(f"wrote {out_path}")


# --------------------------------------------------------------- validate


@main.group()
def validate():
    """Human-in-the-loop validation."""


@validate.command("sample")
@click.option("--seed", type=int, required=True)
@click.option("--kind", type=click.Choice(["article_lean", "article_tone", "article_type", "topic", "sentence"]), default="article_lean")
@click.option("--per-cell", type=int, default=2)
@click.pass_context
def validate_sample(ctx, seed, kind, per_cell):
    """Create a stratified validation batch as open tasks."""
    store = _store(ctx)
    rows = article_rows(store)
    try:
        result = sample_validation_batch(rows, StratificationSpec(per_cell=per_cell), seed=seed, kind=kind)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    created = 0
    for task in result.tasks:
        _, changed = store.put("task", task.task_id, task.to_doc())
        created += 1 if changed else 0
    _echo_json({"tasks": len(result.tasks), "created": created, "underfilled": result.underfilled})


@validate.command("report")
@click.option("--dimension", default="article_lean")
@click.pass_context
def validate_report(ctx, dimension):
    """Agreement report over submitted verdicts."""
    store = _store(ctx)
    pairs = []
    for task_id, task in store.iter_latest("task"):
        if task["kind"] != dimension:
            continue
        response = store.get("response", task_id)
        if response:
            pairs.append((response["annotator_id"], response["verdict"]))
    if not pairs:
        click.echo(f"no responses for dimension {dimension}")
        return
    _echo_json(agreement_report(pairs, dimension).to_doc())


# ---------------------------------------------------------------- hierarchy


@main.group()
def hierarchy():
    """Topic hierarchy maintenance."""


@hierarchy.command("add")
@click.option("--level", type=click.Choice(["topic", "subtopic"]), required=True)
@click.option("--name", required=True)
@click.option("--parent", required=True)
@click.pass_context
def hierarchy_add_cmd(ctx, level, name, parent):
    """Add a topic or subtopic; bumps the hierarchy version."""
    store = _store(ctx)
    current = active_hierarchy(store)
    try:
        updated = hierarchy_add(current, level, name, parent)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    store.put("hierarchy", "main", updated.to_doc())
    click.echo(f"hierarchy version {current.version} -> {updated.version}")


@hierarchy.command("show")
@click.pass_context
def hierarchy_show(ctx):
    _echo_json(active_hierarchy(_store(ctx)).to_doc())


@hierarchy.command("export")
@click.option("--out", "out_path", required=True, type=click.Path())
@click.pass_context
def hierarchy_export(ctx, out_path):
    """Write the hierarchy as a flat (name, level, parent, version) CSV."""
    import csv

    from pressgauge.core.hierarchy import flat_table

    current = active_hierarchy(_store(ctx))
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["name", "level", "parent", "version"])
        writer.writerows(flat_table(current))
    click.echo(f"wrote {out_path}")


# -------------------------------------------------------------------- load


@main.group()
def load():
    """Load committed fixtures into the store."""


@load.command("events")
@click.option("--file", "file_path", required=True, type=click.Path(exists=True))
@click.pass_context
def load_events(ctx, file_path):
    """Load an event-table fixture (events + member article stubs)."""
    result = load_event_table(_store(ctx), file_path)
    _echo_json(result)


# ------------------------------------------------------------------- serve


@main.command("serve")
@click.option("--port", type=int, default=8400)
@click.option("--host", default="127.0.0.1")
@click.option("--ui-dir", type=click.Path(), default=None, help="Static UI bundle to mount at /ui.")
@click.pass_context
def serve(ctx, port, host, ui_dir):
    """Serve the read API and validation endpoints."""
    import uvicorn

    from pressgauge.service.api import create_app

    app = create_app(_store(ctx), ctx.obj["config"], ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
