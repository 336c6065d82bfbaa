"""JSON-over-HTTP read API plus the validation write endpoints.

Read side: coverage aggregates, daily events with per-publisher attention,
per-event facts traceable to their source articles, and full article
detail. Write side: annotators claim tasks and submit verdicts; a
disagreement with a corrected label lands as an overlay without touching
the model label. Everything the browser UI shows comes through these
endpoints.

Auth is a single static token: when the configured environment variable is
set, every request must carry it in ``X-Api-Token``.
"""

from __future__ import annotations

import datetime as dt
import os
import threading
from dataclasses import replace
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from pressgauge.analytics.aggregate import AggregateQuery, aggregate
from pressgauge.config import PipelineConfig, default_config
from pressgauge.core.types import (
    BINARY_VERDICTS,
    DISAGREE_VERDICTS,
    NEWS_TYPES,
    SCALE_VERDICTS,
    TASK_KINDS,
    ValidationResponse,
    ValidationTask,
)
from pressgauge.errors import SchemaError
from pressgauge.store.db import VersionedStore
from pressgauge.store.runs import active_hierarchy
from pressgauge.store.views import article_document, article_rows, event_assignments, events_for_day, facts_for_event
from pressgauge.validation.corrections import apply_corrections
from pressgauge.validation.metrics import agreement_report, cluster_prf, confusion_matrix
from pressgauge.validation.sampling import StratificationSpec, sample_validation_batch

_SCORE_DIMENSIONS = ("article_lean", "article_tone")


def create_app(store: VersionedStore, config: Optional[PipelineConfig] = None, ui_dir: Optional[str] = None) -> FastAPI:
    config = config or default_config()
    app = FastAPI(title="pressgauge", version="0.1.0")
    claim_lock = threading.Lock()

    token = os.environ.get(config.api_token_env, "")

    @app.middleware("http")
    async def _check_token(request: Request, call_next):
        if token and request.headers.get("X-Api-Token") != token:
            return JSONResponse({"detail": "missing or invalid API token"}, status_code=401)
        return await call_next(request)

    # ------------------------------------------------------------- reads

    @app.get("/schema")
    def schema() -> dict:
        return {
            "service": "pressgauge",
            "record_kinds": ["article", "label", "sentences", "quotes", "event", "facts", "overlay", "task", "response"],
            "endpoints": {
                "GET /coverage": "aggregate table; filters: start, end, publisher*, topic, category; group_by; colorable by mean_lean/mean_tone",
                "GET /events": "events for ?date=YYYY-MM-DD ranked by size with per-publisher counts",
                "GET /events/{event_id}/facts": "top facts with source-article traceability",
                "GET /articles/{article_id}": "full labeled document with overlays",
                "GET /tasks/next": "claim the next open validation task (?kind=&annotator=)",
                "POST /tasks/{task_id}/response": "submit a verdict {annotator_id, verdict, corrected_label?}",
                "POST /tasks/sample": "create a stratified validation batch {seed, kind, per_cell}",
                "GET /reports/agreement": "verdict fractions per ?dimension=",
                "GET /reports/confusion": "model-vs-human confusion matrix per ?dimension=",
                "GET /reports/cluster-prf": "event clustering precision/recall/F1",
                "GET /hierarchy": "the active category > topic > subtopic hierarchy",
            },
            "verdicts": {"scale": list(SCALE_VERDICTS), "binary": list(BINARY_VERDICTS)},
            "likert_range": [-5, 5],
        }

    @app.get("/hierarchy")
    def hierarchy() -> dict:
        return active_hierarchy(store).to_doc()

    @app.get("/coverage")
    def coverage(
        start: str = Query(...),
        end: str = Query(...),
        publisher: list[str] = Query(default=[]),
        topic: Optional[str] = None,
        category: Optional[str] = None,
        group_by: str = Query(default="topic"),
        use_corrections: bool = False,
    ) -> dict:
        group_fields = tuple(g.strip() for g in group_by.split(",") if g.strip())
        try:
            query = AggregateQuery(
                date_range=(start, end),
                publishers=frozenset(publisher),
                group_by=group_fields,
                measure="count",
                use_corrections=use_corrections,
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        rows = article_rows(store, use_corrections=use_corrections, hierarchy=active_hierarchy(store))
        if topic:
            rows = [r for r in rows if r.get("topic") == topic]
        if category:
            rows = [r for r in rows if r.get("category") == category]

        counts = {cell.key: cell for cell in aggregate(query, rows)}
        means: dict[str, dict[tuple, float]] = {}
        for measure in ("mean_lean", "mean_tone", "mean_headline_lean", "mean_headline_tone"):
            cells = aggregate(replace(query, measure=measure), rows)
            means[measure] = {cell.key: cell.value for cell in cells}
        groups = []
        for key, count_cell in sorted(counts.items()):
            entry: dict[str, Any] = {"key": dict(zip(group_fields, key)), "count": count_cell.n}
            for measure, values in means.items():
                entry[measure] = values.get(key)
            groups.append(entry)
        return {"start": start, "end": end, "group_by": list(group_fields), "groups": groups}

    @app.get("/events")
    def events(date: str = Query(...)) -> dict:
        try:
            dt.date.fromisoformat(date)
        except ValueError:
            raise HTTPException(status_code=400, detail=f"malformed date {date!r}")
        return {"date": date, "events": events_for_day(store, date)}

    @app.get("/events/{event_id}/facts")
    def event_facts(event_id: str) -> dict:
        facts = facts_for_event(store, event_id)
        if facts is None:
            raise HTTPException(status_code=404, detail=f"unknown event {event_id}")
        event = store.get("event", event_id)
        return {"event_id": event_id, "theme": event["theme"], "facts": facts}

    @app.get("/articles/{article_id}")
    def article(article_id: str) -> dict:
        doc = article_document(store, article_id)
        if doc is None:
            raise HTTPException(status_code=404, detail=f"unknown article {article_id}")
        return doc

    # ------------------------------------------------------- validation

    @app.post("/tasks/sample")
    def create_batch(body: dict) -> dict:
        seed = int(body.get("seed", 0))
        kind = body.get("kind", "article_lean")
        if kind not in TASK_KINDS:
            raise HTTPException(status_code=400, detail=f"unknown task kind {kind!r}")
        if kind == "event_membership":
            # One review task per clustered article of the given day.
            date = body.get("date")
            if not date:
                raise HTTPException(status_code=400, detail="event_membership batches need a date")
            assignments = event_assignments(store, date)
            created = 0
            tasks = 0
            for article_id, event_id in sorted(assignments.items()):
                if event_id is None:
                    continue
                article = store.get("article", article_id) or {}
                task = ValidationTask(
                    task_id=f"event_membership-{date}-{article_id}",
                    kind="event_membership",
                    payload={
                        "article_id": article_id,
                        "event_id": event_id,
                        "date": date,
                        "title": article.get("title", ""),
                    },
                )
                _, changed = store.put("task", task.task_id, task.to_doc())
                tasks += 1
                created += 1 if changed else 0
            return {"tasks": tasks, "created": created, "underfilled": {}}
        per_cell = int(body.get("per_cell", 2))
        rows = article_rows(store)
        try:
            result = sample_validation_batch(rows, StratificationSpec(per_cell=per_cell), seed=seed, kind=kind)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        created = 0
        for task in result.tasks:
            _, changed = store.put("task", task.task_id, task.to_doc())
            created += 1 if changed else 0
        return {"tasks": len(result.tasks), "created": created, "underfilled": result.underfilled}

    @app.get("/tasks/next")
    def next_task(kind: str = Query(...), annotator: str = Query(...)) -> dict:
        if kind not in TASK_KINDS:
            raise HTTPException(status_code=400, detail=f"unknown task kind {kind!r}")
        with claim_lock:
            claimed = None
            for task_id, task in store.iter_latest("task"):
                if task["kind"] != kind or store.get("response", task_id) is not None:
                    continue
                if task.get("annotator_id") == annotator:
                    claimed = task  # resume an unanswered claim
                    break
                if task.get("annotator_id") is None and claimed is None:
                    claimed = task
            if claimed is None:
                return {"task": None}
            if claimed.get("annotator_id") != annotator:
                claimed = dict(claimed, annotator_id=annotator)
                store.put("task", claimed["task_id"], claimed)
            return {"task": claimed}

    @app.post("/tasks/{task_id}/response")
    def submit_response(task_id: str, body: dict) -> dict:
        task_doc = store.get("task", task_id)
        if task_doc is None:
            raise HTTPException(status_code=404, detail=f"unknown task {task_id}")
        annotator = body.get("annotator_id", "")
        if not annotator:
            raise HTTPException(status_code=400, detail="annotator_id required")
        if task_doc.get("annotator_id") not in (None, annotator):
            raise HTTPException(status_code=409, detail="task claimed by another annotator")
        if store.get("response", task_id) is not None:
            existing = store.get("response", task_id)
            if existing["annotator_id"] != annotator:
                raise HTTPException(status_code=409, detail="task already answered by another annotator")
        allowed = SCALE_VERDICTS if task_doc["kind"] in ("article_lean", "article_tone") else BINARY_VERDICTS
        if body.get("verdict") not in allowed:
            raise HTTPException(
                status_code=400,
                detail=f"verdict must be one of {list(allowed)} for {task_doc['kind']} tasks",
            )
        try:
            response = ValidationResponse(
                task_id=task_id,
                annotator_id=annotator,
                verdict=body.get("verdict", ""),
                submitted_at=body.get("submitted_at") or dt.datetime.now(dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
                corrected_label=body.get("corrected_label"),
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        store.put("response", task_id, response.to_doc())
        if task_doc.get("annotator_id") is None:
            store.put("task", task_id, dict(task_doc, annotator_id=annotator))

        log = {}
        if response.verdict in DISAGREE_VERDICTS:
            task = ValidationTask.from_doc(task_doc)
            try:
                log = apply_corrections([(task, response)], store, hierarchy=active_hierarchy(store))
            except SchemaError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
        return {"stored": True, "task_id": task_id, "corrections": log}

    @app.get("/reports/agreement")
    def report_agreement(dimension: str = Query(...)) -> dict:
        pairs = []
        for task_id, task in store.iter_latest("task"):
            if task["kind"] != dimension:
                continue
            response = store.get("response", task_id)
            if response:
                pairs.append((response["annotator_id"], response["verdict"]))
        if not pairs:
            return {"dimension": dimension, "n": 0, "levels": [], "mean": {}, "sd": {}, "annotators": 0}
        try:
            return agreement_report(pairs, dimension).to_doc()
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.get("/reports/confusion")
    def report_confusion(dimension: str = Query(...)) -> dict:
        if dimension in _SCORE_DIMENSIONS:
            label_space = [str(v) for v in range(-5, 6)]
            field = {"article_lean": "lean", "article_tone": "tone"}[dimension]
        elif dimension == "article_type":
            label_space = list(NEWS_TYPES)
            field = "news_type"
        elif dimension == "topic":
            label_space = active_hierarchy(store).topic_names()
            field = "topic"
        else:
            raise HTTPException(status_code=400, detail=f"no confusion matrix for dimension {dimension!r}")

        pairs = []
        for task_id, task in store.iter_latest("task"):
            if task["kind"] != dimension:
                continue
            response = store.get("response", task_id)
            if not response:
                continue
            model_label = task["payload"].get("model_label")
            if model_label is None:
                model_label = task["payload"].get(field)
            model_label = str(model_label)
            if response["verdict"] in DISAGREE_VERDICTS and response.get("corrected_label") is not None:
                human_label = str(response["corrected_label"])
            else:
                human_label = model_label
            pairs.append((model_label, human_label))
        if not pairs:
            return {"dimension": dimension, "n": 0, "labels": [], "matrix": [], "accuracy": None}
        try:
            report = confusion_matrix(pairs, label_space).to_doc()
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        report["dimension"] = dimension
        return report

    @app.get("/reports/cluster-prf")
    def report_cluster_prf() -> dict:
        # Computed over answered tasks only, so the report is usable while a
        # review round is still in progress.
        assignments: dict[str, Optional[str]] = {}
        verdicts: dict[str, tuple[str, Optional[str]]] = {}
        for task_id, task in store.iter_latest("task"):
            if task["kind"] != "event_membership":
                continue
            response = store.get("response", task_id)
            if not response:
                continue
            article_id = task["payload"]["article_id"]
            assignments[article_id] = task["payload"].get("event_id")
            if response["verdict"] == "Agree":
                verdicts[article_id] = ("correct", None)
            else:
                corrected = response.get("corrected_label") or {}
                event_id = corrected.get("event_id") if isinstance(corrected, dict) else corrected
                verdicts[article_id] = ("other_event", event_id) if event_id else ("no_event", None)
        if not verdicts:
            return {"n": 0, "precision": None, "recall": None, "f1": None}
        known_events = set(store.ids("event"))
        try:
            doc = cluster_prf(assignments, verdicts, known_events=known_events).to_doc()
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        doc["n"] = len(verdicts)
        return doc

    if ui_dir and Path(ui_dir).exists():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
