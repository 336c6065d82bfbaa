"""Acceptance suite: one test per release criterion, tolerances pinned.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line per
criterion; any failure is a release blocker.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import re
import subprocess
import sys
import time
from dataclasses import replace
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from pressgauge.analytics.aggregate import AggregateQuery, aggregate
from pressgauge.analytics.focus import article_focus
from pressgauge.clustering.embeddings import EmbeddingVector, cosine_similarity
from pressgauge.clustering.events import ArticleSeed, cluster_day
from pressgauge.clustering.graph import SimilarityGraph, threshold_components
from pressgauge.config import ProviderSettings, default_config
from pressgauge.core.types import Article, SENTENCE_FOCUS, SentenceRecord, SnapshotSpec
from pressgauge.ingest.cleaning import clean_text, load_default_dictionary
from pressgauge.ingest.dedupe import dedupe_and_merge
from pressgauge.ingest.fetch import CleanDoc
from pressgauge.ingest.prominence import SnapshotItem, prominence_score, rank_snapshot, snapshot_bounds
from pressgauge.config import ProminenceWeights
from pressgauge.labeling.prompts import TEMPLATE_NAMES, load_templates
from pressgauge.service.api import create_app
from pressgauge.store.db import VersionedStore
from pressgauge.store.runs import run_day
from pressgauge.store.views import article_rows, events_for_day, load_event_table
from pressgauge.validation.metrics import agreement_report, cluster_prf, confusion_matrix

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
DAY = "2024-10-15"


def passed(number: int, message: str) -> None:
    print(f"\nACCEPTANCE PASS [{number:02d}] {message}")


# -- 1: clustering oracle ----------------------------------------------------


def brute_force_components(nodes, edges, threshold):
    adjacency = {n: set() for n in nodes}
    for a, b, w in edges:
        if w >= threshold:
            adjacency[a].add(b)
            adjacency[b].add(a)
    seen, components = set(), []
    for node in nodes:
        if node in seen:
            continue
        stack, component = [node], set()
        while stack:
            current = stack.pop()
            if current in component:
                continue
            component.add(current)
            stack.extend(adjacency[current] - component)
        seen |= component
        components.append(frozenset(component))
    return components


def test_01_clustering_matches_exhaustive_oracle():
    rng = random.Random(20240801)
    started = time.monotonic()
    graphs = 0
    while graphs < 500:
        n = rng.randrange(1, 13)
        nodes = tuple(f"n{i:02d}" for i in range(n))
        edges = tuple(
            (nodes[i], nodes[j], rng.uniform(-1, 1)) for i in range(n) for j in range(i + 1, n)
        )
        graph = SimilarityGraph(nodes=nodes, edges=edges)
        for threshold in (0.5, 0.8, 0.85):
            clusters, singletons = threshold_components(graph, threshold, min_cluster_size=2)
            oracle = brute_force_components(nodes, edges, threshold)
            assert set(clusters) == {c for c in oracle if len(c) >= 2}
            assert singletons == frozenset(n for c in oracle if len(c) < 2 for n in c)
        graphs += 1
    elapsed = time.monotonic() - started
    assert elapsed < 5.0, f"oracle comparison took {elapsed:.2f}s (budget 5s)"
    passed(1, f"{graphs} random graphs identical to the DFS oracle at 0.5/0.8/0.85 in {elapsed:.2f}s")


# -- 2: refinement algebra ----------------------------------------------------


def _unit(values):
    norm = math.sqrt(sum(v * v for v in values))
    return [v / norm for v in values]


class PlantedEmbeddingProvider:
    """Vectors derived from the text itself: same group, nearby vectors."""

    deterministic = True
    dim = 24

    def _seeded(self, key):
        return random.Random(f"embed:{key}")

    def embed_texts(self, texts):
        out = []
        for text in texts:
            match = re.search(r"group-(\w+)", text)
            noise = self._seeded(hashlib.sha256(text.encode()).hexdigest())
            if match:
                center_rng = self._seeded(f"center-{match.group(1)}")
                center = _unit([center_rng.gauss(0, 1) for _ in range(self.dim)])
                out.append(_unit([c + noise.gauss(0, 0.02) for c in center]))
            else:
                out.append(_unit([noise.gauss(0, 1) for _ in range(self.dim)]))
        return out


class ScriptedRefinementProvider:
    """Deterministic pseudo-random replies, including malformed ones."""

    deterministic = True

    def __init__(self, seed: int):
        self.seed = seed

    def complete(self, prompt: str, model_id: str) -> str:
        rng = random.Random(f"{self.seed}:{hashlib.sha256(prompt.encode()).hexdigest()}")
        if prompt.startswith("The following is a list of titles"):
            return json.dumps({"theme": f"Theme {rng.randrange(10_000)}", "theme_short": f"Short {rng.randrange(100)}"})
        if prompt.startswith("Your task is to assign a news article"):
            themes = prompt.split("Themes:\n", 1)[1].strip().splitlines()
            choices = ["-1", "-1", str(rng.randrange(1, len(themes) + 1)), "pineapple", str(len(themes) + 5)]
            return rng.choice(choices)
        if prompt.startswith("Your task is to go through a list of news headlines"):
            titles = prompt.split("Headlines:\n", 1)[1].strip().splitlines()
            m = len(titles)
            choices = ["-1", "-1", str(rng.randrange(1, m + 1)), f"{rng.randrange(1, m + 1)},{rng.randrange(1, m + 1)}", "0"]
            return rng.choice(choices)
        raise AssertionError(f"unexpected prompt: {prompt[:60]}")


def _random_seeds(seed: int) -> list[ArticleSeed]:
    rng = random.Random(seed)
    seeds = []
    i = 0
    for group in range(rng.randrange(2, 6)):
        for _ in range(rng.randrange(1, 5)):
            seeds.append(
                ArticleSeed(
                    article_id=f"a{i:02d}",
                    title=f"Title {i} group-{group}",
                    body=f"Body {i} about group-{group} events.",
                    takeaways=f"Summary {i}.",
                )
            )
            i += 1
    for _ in range(rng.randrange(0, 5)):
        seeds.append(ArticleSeed(article_id=f"a{i:02d}", title=f"Standalone title {i}", body=f"Standalone body {i}.", takeaways=f"Summary {i}."))
        i += 1
    return seeds


def test_02_refinement_algebra_and_bit_identical_replay():
    for seed in range(12):
        seeds = _random_seeds(seed)
        runs = []
        for _ in range(3):
            result = cluster_day(
                DAY,
                seeds,
                PlantedEmbeddingProvider(),
                ScriptedRefinementProvider(seed),
                settings=ProviderSettings(),
            )
            serialized = json.dumps(
                {"events": [e.to_doc() for e in result.events], "log": result.log.to_doc()},
                sort_keys=True,
            )
            runs.append((result, serialized))
        assert runs[0][1] == runs[1][1] == runs[2][1], "replay not bit-identical"

        result = runs[0][0]
        log = result.log
        expected = {index: set(component) for index, component in enumerate(log.components, start=1)}
        for article_id, index in log.additions:
            expected[index].add(article_id)
        for article_id, index in log.removals:
            expected[index].discard(article_id)
        expected_partition = {frozenset(m) for m in expected.values() if m}
        actual_partition = {frozenset(e.member_article_ids) for e in result.events}
        assert actual_partition == expected_partition, "final membership != components ∪ additions ∖ removals"

        claimed = [a for e in result.events for a in e.member_article_ids]
        assert len(claimed) == len(set(claimed)), "an article landed in two events"
    passed(2, "12 randomized refinement days: membership algebra holds, replay bit-identical across 3 runs")


# -- 3: cosine correctness ----------------------------------------------------


def test_03_cosine_hand_cases():
    a, b = EmbeddingVector("a", (1.0, 1.0)), EmbeddingVector("b", (1.0, 0.0))
    assert cosine_similarity(a, b) == pytest.approx(0.70710678118654752, abs=1e-9)
    assert cosine_similarity(a, a) == pytest.approx(1.0, abs=1e-9)
    assert cosine_similarity(EmbeddingVector("x", (1.0, 0.0)), EmbeddingVector("y", (0.0, 1.0))) == pytest.approx(0.0, abs=1e-9)
    passed(3, "cosine: (1,1)x(1,0)=0.7071..., identity=1, orthogonal=0, all within 1e-9")


# -- 4: end-to-end fixture day -------------------------------------------------


def day_config():
    return replace(default_config(), fixture_dir=str(FIXTURES / "day"))


def test_04_end_to_end_fixture_day_matches_golden_and_is_idempotent():
    started = time.monotonic()
    store = VersionedStore()
    report = run_day(day_config(), store, DAY, provider_mode="fixture")
    assert report["status"] == "done"

    golden_report = json.loads((FIXTURES / "day" / "golden" / "report.json").read_text("utf-8"))
    assert report["stages"] == golden_report["stages"]
    assert report["stages"]["ingest"]["articles"] == 30

    golden_labels = json.loads((FIXTURES / "day" / "golden" / "labels.json").read_text("utf-8"))
    assert store.count("label") == len(golden_labels) == 30
    for article_id, expected in golden_labels.items():
        label = store.get("label", article_id)
        assert label["topic"] == expected["topic"]
        assert label["subtopic"] == expected["subtopic"]
        assert label["category"] == expected["category"]
        assert label["news_type"] == expected["news_type"]
        assert label["lean"]["lean"] == expected["lean"]
        assert label["tone"]["tone"] == expected["tone"]
        assert label["headline_lean"]["lean"] == expected["headline_lean"]
        assert label["headline_tone"]["tone"] == expected["headline_tone"]

    golden_events = json.loads((FIXTURES / "day" / "golden" / "events.json").read_text("utf-8"))
    stored_events = {eid: doc for eid, doc in store.iter_latest("event")}
    assert {e["event_id"]: e for e in golden_events} == stored_events

    golden_facts = json.loads((FIXTURES / "day" / "golden" / "facts.json").read_text("utf-8"))
    for event_id, expected in golden_facts.items():
        assert store.get("facts", event_id) == expected

    golden_digest = (FIXTURES / "day" / "golden" / "store_digest.txt").read_text("utf-8").strip()
    assert store.digest() == golden_digest

    rerun = run_day(day_config(), store, DAY, provider_mode="fixture")
    assert rerun["stages"]["ingest"]["new_articles"] == 0
    assert rerun["stages"]["label"]["new_labels"] == 0
    assert store.digest() == golden_digest

    elapsed = time.monotonic() - started
    assert elapsed < 60.0, f"fixture day took {elapsed:.1f}s (budget 60s)"
    passed(4, f"fixture day: 30 articles -> golden labels/events/facts, idempotent rerun, {elapsed:.1f}s")


# -- 5: labeled sample replay ----------------------------------------------------


def test_05_labeled_sample_replay_and_aggregates():
    root = FIXTURES / "labeled_samples"
    store = VersionedStore()
    articles = [json.loads(line) for line in (root / "articles.ndjson").read_text("utf-8").splitlines()]
    for doc in articles:
        Article.from_doc(doc)
        store.put("article", doc["article_id"], doc)

    config = replace(default_config(), fixture_dir=str(root))
    dates = sorted({doc["first_seen_snapshot"].split("/", 1)[1][:10] for doc in articles})
    for date in dates:
        report = run_day(config, store, date, provider_mode="fixture", stages=("label",))
        assert report["status"] == "done", report

    expected = json.loads((root / "expected_labels.json").read_text("utf-8"))
    assert len(expected) == 10
    for item in expected:
        label = store.get("label", item["article_id"])
        assert label is not None, f"article {item['url']} was not labeled"
        for field in ("category", "topic", "subtopic", "news_type"):
            assert label[field] == item[field], (item["url"], field)
        assert label["lean"]["lean"] == item["lean"]
        assert label["tone"]["tone"] == item["tone"]
        assert label["headline_lean"]["lean"] == item["headline_lean"]
        assert label["headline_tone"]["tone"] == item["headline_tone"]

    first = next(i for i in expected if "israel-lebanon" in i["url"])
    assert first["topic"] == "War and International Conflict"
    assert (first["lean"], first["tone"], first["headline_tone"]) == (0, -4, -3)

    rows = article_rows(store)
    cells = aggregate(
        AggregateQuery(
            date_range=("2024-08-01", "2024-08-02"),
            publishers=frozenset({"usa-today"}),
            group_by=("publisher",),
            measure="mean_tone",
        ),
        rows,
    )
    assert len(cells) == 1 and cells[0].n == 2
    assert cells[0].value == pytest.approx(-0.5, abs=1e-12)

    by_cat = aggregate(
        AggregateQuery(date_range=("2024-08-01", "2024-08-31"), group_by=("publisher", "category"), measure="mean_tone"),
        rows,
    )
    usa_politics = next(c for c in by_cat if c.key == ("usa-today", "Politics"))
    assert usa_politics.value == pytest.approx(-0.5, abs=1e-12)

    from pressgauge.analytics.aggregate import horserace_vs_policy
    from pressgauge.config import AnalyticsTopicSets
    from pressgauge.store.runs import active_hierarchy

    sets = AnalyticsTopicSets()
    counts = horserace_vs_policy(rows, sets.horserace_subtopics, sets.policy_topics, active_hierarchy(store))
    assert sum(c["horserace"] for c in counts.values()) == 2  # the two horse-race sample articles
    passed(5, "labeled samples: all 10 label sets replay exactly; USA Today mean tone -0.5 within 1e-12; 2 horse-race articles")


# -- 6: the event-table day ------------------------------------------------------


def test_06_event_table_day_and_ranked_events_endpoint():
    store = VersionedStore()
    result = load_event_table(store, FIXTURES / "events_2024-10-01.json")
    assert result["day_events"] == 22

    events = events_for_day(store, "2024-10-01")
    assert len(events) == 22
    assert events[0]["size"] == 75
    assert events[0]["theme"] == "Escalation of Conflict: Israel and Iran's Military Engagements in Lebanon"

    client = TestClient(create_app(store, default_config()))
    doc = client.get("/events", params={"date": "2024-10-01"}).json()
    sizes = [e["size"] for e in doc["events"]]
    assert len(sizes) == 22
    assert sizes == sorted(sizes, reverse=True)
    assert sizes[0] == 75

    by_event = aggregate(
        AggregateQuery(date_range=("2024-10-01", "2024-10-01"), group_by=("event",), measure="count"),
        article_rows(store),
    )
    assert len(by_event) == 22
    assert max(cell.n for cell in by_event) == 75
    passed(6, "event table day: 22 event groups (max 75) in aggregates and ranked by /events")


# -- 7: prompt fidelity -----------------------------------------------------------


def test_07_prompt_fidelity_byte_match():
    templates = load_templates()
    bindings = json.loads((FIXTURES / "golden" / "prompt_bindings.json").read_text("utf-8"))
    checked = 0
    for name in TEMPLATE_NAMES:
        rendered = templates[name].render(**bindings[name])
        golden = (FIXTURES / "golden" / "prompts" / f"{name}.txt").read_text("utf-8")
        assert rendered == golden, f"{name} drifted from its golden transcription"
        checked += 1
    assert checked == 14  # the 13 task prompts plus the takeaways summarizer
    passed(7, f"{checked} rendered prompts byte-match their golden transcriptions")


# -- 8: metric formulas -----------------------------------------------------------


def test_08_metric_formulas():
    assignments = {f"a{i}": "e1" for i in range(10)}
    assignments.update({f"m{i}": None for i in range(3)})
    verdicts = {f"a{i}": ("correct", None) for i in range(9)}
    verdicts["a9"] = ("no_event", None)
    verdicts.update({f"m{i}": ("other_event", "e1") for i in range(3)})
    prf = cluster_prf(assignments, verdicts)
    assert prf.precision == pytest.approx(0.900, abs=1e-9)
    assert prf.recall == pytest.approx(0.750, abs=1e-9)
    assert prf.f1 == pytest.approx(0.8182, abs=1e-4)
    assert prf.f1 == pytest.approx(2 * 0.9 * 0.75 / 1.65, abs=1e-9)

    responses = []
    for annotator, agree in (("a", 16), ("b", 14), ("c", 15)):
        responses += [(annotator, "Agree")] * agree + [(annotator, "Disagree")] * (20 - agree)
    report = agreement_report(responses, "article_lean")
    assert report.mean["Agree"] == pytest.approx(0.750, abs=1e-9)
    assert report.sd["Agree"] == pytest.approx(0.0408, abs=1e-4)

    rng = random.Random(88)
    labels = ["x", "y", "z"]
    for _ in range(50):
        pairs = [(rng.choice(labels), rng.choice(labels)) for _ in range(rng.randrange(1, 60))]
        matrix = confusion_matrix(pairs, labels)
        trace = sum(matrix.matrix[i][i] for i in range(len(labels)))
        assert matrix.accuracy == pytest.approx(trace / matrix.n, abs=1e-12)
    passed(8, "cluster PRF (0.9, 0.75, 0.8182), agreement (0.750, SD 0.0408), confusion accuracy = trace/total")


# -- 9: focus-score property --------------------------------------------------------


def test_09_focus_score_property():
    rng = random.Random(4242)
    for _ in range(1000):
        labels = [rng.choice(SENTENCE_FOCUS) for _ in range(rng.randrange(1, 40))]
        records = [
            SentenceRecord(article_id="a", index=i + 1, text="t", type="fact", tone="neutral", focus=f)
            for i, f in enumerate(labels)
        ]
        score = article_focus(records)
        assert -1.0 <= score.value <= 1.0
        brute = sum({"republican": 1, "democrat": -1}.get(f, 0) for f in labels) / len(labels)
        assert score.value == pytest.approx(brute, abs=1e-12)

    symmetric = [
        SentenceRecord(article_id="a", index=i + 1, text="t", type="fact", tone="neutral", focus=f)
        for i, f in enumerate(["republican", "democrat", "neither", "both"])
    ]
    assert article_focus(symmetric).value == 0.0
    passed(9, "1000 random focus sequences bounded, equal to brute force; symmetric case exactly 0")


# -- 10: ingestion properties ----------------------------------------------------------


def test_10_ingestion_properties():
    weights = ProminenceWeights()
    spec = SnapshotSpec()

    def item(url, y=100.0, font=24.0, img=0.0):
        return SnapshotItem(url=url, title_text="t", y_offset=y, font_size=font, image_area=img)

    pairs = [
        ([item("https://x/hi", y=0), item("https://x/lo", y=1500)], "y_offset"),
        ([item("https://x/big", font=40), item("https://x/small", font=18)], "font_size"),
        ([item("https://x/img", img=80000), item("https://x/none", img=0)], "image_area"),
    ]
    for items, signal in pairs:
        bounds = snapshot_bounds(items)
        better, worse = (prominence_score(i, weights, bounds) for i in items)
        assert better >= worse, f"prominence not monotone in {signal}"
        if signal != "image_area":
            assert better > worse

    rng = random.Random(10)
    items = [item(f"https://x/{i}", y=float(rng.randrange(4)), font=20 + rng.randrange(3)) for i in range(25)]
    reference = rank_snapshot("pub", "t", items, spec, weights)
    for _ in range(20):
        shuffled = items[:]
        rng.shuffle(shuffled)
        assert rank_snapshot("pub", "t", shuffled, spec, weights) == reference

    dictionary = load_default_dictionary()
    rng = random.Random(11)
    phrases = ["Click Here for More Information", "Listen 4 minutes", "Advertisement", "Enter your email address"]
    for _ in range(50):
        words = [rng.choice(["alpha", "beta", "gamma.", "delta"]) for _ in range(rng.randrange(1, 30))]
        insert_at = rng.randrange(0, len(words) + 1)
        words[insert_at:insert_at] = [rng.choice(phrases)]
        text = " ".join(words)
        once = clean_text(text, dictionary)
        assert clean_text(once, dictionary) == once

    from pressgauge.ingest.prominence import HomepageSnapshot

    rng = random.Random(12)
    for _ in range(200):
        n_urls = rng.randrange(1, 12)
        urls = [f"https://x.test/{i}" for i in range(n_urls)]
        snaps, appearances = [], {}
        for s in range(rng.randrange(1, 6)):
            captured = f"2024-08-01T{6 + 3 * s:02d}:00:00-04:00"
            chosen = rng.sample(urls, rng.randrange(1, n_urls + 1))
            ranked_items = tuple(
                SnapshotItem(url=u, title_text="t", y_offset=float(i), font_size=20.0, rank=rng.randrange(1, 31))
                for i, u in enumerate(chosen)
            )
            snaps.append(HomepageSnapshot(publisher_id="pub", captured_at=captured, items=ranked_items))
            for it in ranked_items:
                appearances.setdefault(it.url, []).append(it.rank)
        docs = {u: CleanDoc(title=u, body=f"Body {u}.") for u in urls}
        articles = dedupe_and_merge(snaps, docs)
        assert len(articles) == len(appearances)
        for article in articles:
            assert article.best_rank == min(appearances[article.canonical_url])
    passed(10, "prominence monotone x3, tie-break stable over shuffles, cleaning idempotent, dedup best_rank = min over 200 days")


# -- 11: crash safety -------------------------------------------------------------------


def test_11_crash_after_label_converges_to_uninterrupted_state(tmp_path):
    import os

    crashed_db = tmp_path / "crashed.db"
    clean_db = tmp_path / "clean.db"
    script = (
        "import sys; from dataclasses import replace\n"
        "from pressgauge.config import default_config\n"
        "from pressgauge.store.db import VersionedStore\n"
        "from pressgauge.store.runs import run_day\n"
        f"config = replace(default_config(), fixture_dir={str(FIXTURES / 'day')!r})\n"
        "store = VersionedStore(sys.argv[1])\n"
        f"report = run_day(config, store, {DAY!r}, provider_mode='fixture')\n"
        "assert report['status'] == 'done', report\n"
    )
    env = dict(os.environ, PRESSGAUGE_CRASH_AFTER_STAGE="label")
    crashed = subprocess.run([sys.executable, "-c", script, str(crashed_db)], env=env, capture_output=True, text=True)
    assert crashed.returncode == 3, f"crash hook did not fire: {crashed.stderr}"

    for db in (crashed_db, clean_db):
        result = subprocess.run([sys.executable, "-c", script, str(db)], capture_output=True, text=True)
        assert result.returncode == 0, result.stderr

    resumed, uninterrupted = VersionedStore(crashed_db), VersionedStore(clean_db)
    assert resumed.digest() == uninterrupted.digest(), "resumed store diverged from the uninterrupted run"
    resumed.close()
    uninterrupted.close()
    passed(11, "killed after the label stage; rerun digest equals an uninterrupted run's digest")
