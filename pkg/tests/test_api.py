from __future__ import annotations

from dataclasses import replace
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from pressgauge.config import default_config
from pressgauge.service.api import create_app
from pressgauge.store.db import VersionedStore
from pressgauge.store.runs import run_day
from pressgauge.store.views import load_event_table

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
DAY = "2024-10-15"


@pytest.fixture(scope="module")
def client():
    store = VersionedStore()
    config = replace(default_config(), fixture_dir=str(FIXTURES / "day"))
    run_day(config, store, DAY, provider_mode="fixture")
    load_event_table(store, FIXTURES / "events_2024-10-01.json")
    return TestClient(create_app(store, config))


class TestReadApi:
    def test_schema_document(self, client):
        doc = client.get("/schema").json()
        assert "GET /coverage" in doc["endpoints"]
        assert doc["likert_range"] == [-5, 5]

    def test_hierarchy_endpoint(self, client):
        doc = client.get("/hierarchy").json()
        assert doc["version"] >= 1
        assert {"name": "Elections", "category": "Politics"} in doc["topics"]

    def test_coverage_grouped_by_topic_with_color_measures(self, client):
        response = client.get("/coverage", params={"start": DAY, "end": DAY})
        assert response.status_code == 200
        doc = response.json()
        assert doc["group_by"] == ["topic"]
        assert sum(g["count"] for g in doc["groups"]) == 30
        for group in doc["groups"]:
            assert "mean_lean" in group and "mean_tone" in group

    def test_coverage_empty_range_is_200_empty(self, client):
        doc = client.get("/coverage", params={"start": "2030-01-01", "end": "2030-01-02"}).json()
        assert doc["groups"] == []

    def test_coverage_malformed_group_by_is_400(self, client):
        response = client.get("/coverage", params={"start": DAY, "end": DAY, "group_by": "nonsense"})
        assert response.status_code == 400

    def test_coverage_subtopic_drilldown(self, client):
        doc = client.get(
            "/coverage",
            params={"start": DAY, "end": DAY, "topic": "Elections", "group_by": "subtopic"},
        ).json()
        subtopics = {g["key"]["subtopic"] for g in doc["groups"]}
        assert subtopics == {"Presidential Horse Race", "Voting Rights and Administration"}

    def test_events_ranked_by_size(self, client):
        doc = client.get("/events", params={"date": "2024-10-01"}).json()
        sizes = [e["size"] for e in doc["events"]]
        assert len(sizes) == 22 and sizes[0] == 75
        assert sizes == sorted(sizes, reverse=True)

    def test_events_malformed_date_is_400(self, client):
        assert client.get("/events", params={"date": "not-a-date"}).status_code == 400

    def test_event_facts_traceable(self, client):
        events = client.get("/events", params={"date": DAY}).json()["events"]
        doc = client.get(f"/events/{events[0]['event_id']}/facts").json()
        assert doc["facts"]
        member = doc["facts"][0]["members"][0]
        assert member["article_id"] and member["url"]

    def test_unknown_event_404(self, client):
        assert client.get("/events/nope/facts").status_code == 404

    def test_article_detail(self, client):
        events = client.get("/events", params={"date": DAY}).json()["events"]
        article_id = sorted(client.get(f"/events/{events[0]['event_id']}/facts").json()["facts"][0]["members"], key=lambda m: m["article_id"])[0]["article_id"]
        doc = client.get(f"/articles/{article_id}").json()
        assert doc["article"]["article_id"] == article_id
        assert doc["label"]["lean"]["reason"]
        assert doc["sentences"]

    def test_unknown_article_404(self, client):
        assert client.get("/articles/ffffffffffffffff").status_code == 404


class TestValidationApi:
    def test_full_annotation_round_trip(self, client):
        created = client.post("/tasks/sample", json={"seed": 11, "kind": "article_lean", "per_cell": 2}).json()
        assert created["tasks"] > 0

        claimed = client.get("/tasks/next", params={"kind": "article_lean", "annotator": "ann1"}).json()["task"]
        assert claimed["annotator_id"] == "ann1"

        # another annotator cannot answer a claimed task
        conflict = client.post(
            f"/tasks/{claimed['task_id']}/response",
            json={"annotator_id": "ann2", "verdict": "Agree"},
        )
        assert conflict.status_code == 409

        # re-claiming while unanswered returns the same task
        again = client.get("/tasks/next", params={"kind": "article_lean", "annotator": "ann1"}).json()["task"]
        assert again["task_id"] == claimed["task_id"]

        submitted = client.post(
            f"/tasks/{claimed['task_id']}/response",
            json={"annotator_id": "ann1", "verdict": "Agree"},
        )
        assert submitted.status_code == 200

        report = client.get("/reports/agreement", params={"dimension": "article_lean"}).json()
        assert report["n"] == 1
        assert report["mean"]["Agree"] == 1.0

    def test_disagreement_requires_correction_and_writes_overlay(self, client):
        task = client.get("/tasks/next", params={"kind": "article_lean", "annotator": "ann3"}).json()["task"]
        missing = client.post(f"/tasks/{task['task_id']}/response", json={"annotator_id": "ann3", "verdict": "Disagree"})
        assert missing.status_code == 400

        ok = client.post(
            f"/tasks/{task['task_id']}/response",
            json={"annotator_id": "ann3", "verdict": "Disagree", "corrected_label": 2},
        )
        assert ok.status_code == 200
        article = client.get(f"/articles/{task['payload']['article_id']}").json()
        overlays = [o for o in article["overlays"] if o["dimension"] == "article_lean"]
        assert overlays and overlays[0]["corrected_label"] == 2
        # the model label is untouched
        assert article["label"]["lean"]["lean"] == task["payload"]["model_label"]

    def test_confusion_report_uses_corrections(self, client):
        report = client.get("/reports/confusion", params={"dimension": "article_lean"}).json()
        assert report["n"] >= 2
        trace = sum(report["matrix"][i][i] for i in range(len(report["labels"])))
        assert report["accuracy"] == pytest.approx(trace / report["n"])

    def test_unknown_task_404(self, client):
        assert client.post("/tasks/nope/response", json={"annotator_id": "a", "verdict": "Agree"}).status_code == 404

    def test_unknown_kind_400(self, client):
        assert client.get("/tasks/next", params={"kind": "vibes", "annotator": "a"}).status_code == 400

    def test_cluster_prf_round_trip(self, client):
        created = client.post("/tasks/sample", json={"kind": "event_membership", "date": DAY}).json()
        assert created["tasks"] == 21  # every clustered article of the day

        answered = []
        for _ in range(10):
            task = client.get("/tasks/next", params={"kind": "event_membership", "annotator": "ann1"}).json()["task"]
            payload = {"annotator_id": "ann1", "verdict": "Agree"}
            if len(answered) == 4:  # one member belongs elsewhere per the human
                payload = {"annotator_id": "ann1", "verdict": "Disagree", "corrected_label": {"event_id": None}}
            assert client.post(f"/tasks/{task['task_id']}/response", json=payload).status_code == 200
            answered.append(task["task_id"])

        prf = client.get("/reports/cluster-prf").json()
        assert prf["n"] == 10
        assert prf["precision"] == pytest.approx(9 / 10)
        assert prf["recall"] == pytest.approx(1.0)


class TestAuthToken:
    def test_token_required_when_configured(self, monkeypatch):
        monkeypatch.setenv("PRESSGAUGE_API_TOKEN", "sekrit")
        store = VersionedStore()
        app = create_app(store, default_config())
        with TestClient(app) as client:
            assert client.get("/schema").status_code == 401
            assert client.get("/schema", headers={"X-Api-Token": "sekrit"}).status_code == 200


class TestVerdictVocabulary:
    def test_binary_kinds_reject_scale_verdicts(self, client):
        client.post("/tasks/sample", json={"kind": "event_membership", "date": DAY})
        task = client.get("/tasks/next", params={"kind": "event_membership", "annotator": "annv"}).json()["task"]
        bad = client.post(
            f"/tasks/{task['task_id']}/response",
            json={"annotator_id": "annv", "verdict": "Somewhat Agree"},
        )
        assert bad.status_code == 400
        ok = client.post(f"/tasks/{task['task_id']}/response", json={"annotator_id": "annv", "verdict": "Agree"})
        assert ok.status_code == 200

    def test_topic_tasks_carry_topic_as_model_label(self, client):
        created = client.post("/tasks/sample", json={"seed": 99, "kind": "topic", "per_cell": 1}).json()
        assert created["tasks"] > 0
        task = client.get("/tasks/next", params={"kind": "topic", "annotator": "annt"}).json()["task"]
        assert isinstance(task["payload"]["model_label"], str)
        assert task["payload"]["model_label"] == task["payload"]["topic"]
