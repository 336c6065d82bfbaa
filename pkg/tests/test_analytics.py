from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pressgauge.analytics.aggregate import AggregateQuery, aggregate, headline_delta, horserace_vs_policy
from pressgauge.analytics.focus import FocusScore, article_focus, focus_value
from pressgauge.core.types import SENTENCE_FOCUS, SentenceRecord


def record(focus, index=1, article_id="a1"):
    return SentenceRecord(article_id=article_id, index=index, text="t", type="fact", tone="neutral", focus=focus)


class TestArticleFocus:
    def test_symmetric_mix_cancels_to_zero(self):
        records = [record(f, i + 1) for i, f in enumerate(["republican", "democrat", "neither", "both"])]
        assert article_focus(records).value == 0.0

    def test_all_republican_is_plus_one(self):
        records = [record("republican", 1), record("republican", 2)]
        assert article_focus(records).value == 1.0

    def test_seven_label_fixture_matches_hand_sum(self):
        # (+1 +1 -1 +0 +0 -1 +1) / 7 = 1/7
        labels = ["republican", "republican", "democrat", "neither", "both", "democrat", "republican"]
        records = [record(f, i + 1) for i, f in enumerate(labels)]
        assert article_focus(records).value == pytest.approx(1 / 7, abs=1e-12)

    def test_empty_records_error(self):
        with pytest.raises(ValueError):
            article_focus([])

    def test_mixed_articles_rejected(self):
        with pytest.raises(ValueError):
            article_focus([record("both", 1, "a1"), record("both", 1, "a2")])

    @given(st.lists(st.sampled_from(SENTENCE_FOCUS), min_size=1, max_size=40))
    @settings(max_examples=200)
    def test_bounded_and_equals_brute_force(self, labels):
        records = [record(f, i + 1) for i, f in enumerate(labels)]
        score = article_focus(records)
        assert -1.0 <= score.value <= 1.0
        brute = sum({"republican": 1, "democrat": -1}.get(f, 0) for f in labels) / len(labels)
        assert score.value == pytest.approx(brute, abs=1e-12)

    def test_focus_score_bounds_enforced(self):
        with pytest.raises(ValueError):
            FocusScore(article_id="a", value=1.5)


def row(publisher="usa-today", date="2024-08-01", category="Politics", topic="Elections", subtopic="Presidential Horse Race", lean=0, tone=0, headline_lean=0, headline_tone=0, focus=None, event=None, article_id=None, best_rank=1):
    return {
        "article_id": article_id or f"{publisher}-{random.random()}",
        "publisher_id": publisher,
        "date": date,
        "category": category,
        "topic": topic,
        "subtopic": subtopic,
        "lean": lean,
        "tone": tone,
        "headline_lean": headline_lean,
        "headline_tone": headline_tone,
        "focus": focus,
        "event_id": event,
        "best_rank": best_rank,
    }


class TestAggregate:
    def test_mean_tone_by_publisher(self):
        rows = [row(tone=-2), row(tone=1), row(publisher="cnn", tone=4)]
        cells = aggregate(AggregateQuery(date_range=("2024-08-01", "2024-08-02"), group_by=("publisher",), measure="mean_tone"), rows)
        by_key = {c.key: c for c in cells}
        assert by_key[("usa-today",)].value == pytest.approx(-0.5, abs=1e-12)
        assert by_key[("usa-today",)].n == 2
        assert by_key[("cnn",)].value == 4.0

    def test_empty_range_yields_empty_table(self):
        rows = [row(date="2024-08-01")]
        cells = aggregate(AggregateQuery(date_range=("2024-09-01", "2024-09-02"), group_by=("publisher",), measure="count"), rows)
        assert cells == []

    def test_count_by_event(self):
        rows = [row(event="e1"), row(event="e1"), row(event="e2"), row(event=None)]
        cells = aggregate(AggregateQuery(date_range=("2024-08-01", "2024-08-01"), group_by=("event",), measure="count"), rows)
        assert {c.key[0]: c.n for c in cells} == {"e1": 2, "e2": 1}

    def test_publisher_filter(self):
        rows = [row(), row(publisher="cnn")]
        cells = aggregate(
            AggregateQuery(date_range=("2024-08-01", "2024-08-01"), publishers=frozenset({"cnn"}), group_by=("publisher",), measure="count"),
            rows,
        )
        assert [c.key for c in cells] == [("cnn",)]

    def test_invalid_group_by_rejected(self):
        with pytest.raises(ValueError):
            AggregateQuery(date_range=("2024-08-01", "2024-08-01"), group_by=("nonsense",), measure="count")

    def test_grouped_mean_requires_group(self):
        with pytest.raises(ValueError):
            AggregateQuery(date_range=("2024-08-01", "2024-08-01"), group_by=(), measure="mean_lean")

    def test_mean_stable_when_adding_value_equal_to_mean(self):
        rows = [row(lean=2), row(lean=4)]
        query = AggregateQuery(date_range=("2024-08-01", "2024-08-01"), group_by=("publisher",), measure="mean_lean")
        before = aggregate(query, rows)[0].value
        rows.append(row(lean=3))
        after = aggregate(query, rows)[0].value
        assert before == after == 3.0

    def test_rank_weighted_mean_behind_flag(self):
        rows = [row(lean=0, best_rank=1), row(lean=4, best_rank=4)]
        query = AggregateQuery(date_range=("2024-08-01", "2024-08-01"), group_by=("publisher",), measure="mean_lean", weight_by_rank=True)
        # weights 1 and 0.25 -> (0*1 + 4*0.25) / 1.25 = 0.8
        assert aggregate(query, rows)[0].value == pytest.approx(0.8, abs=1e-12)

    @settings(max_examples=60)
    @given(st.integers(0, 10_000))
    def test_matches_brute_force_on_random_stores(self, seed):
        rng = random.Random(seed)
        publishers = ["usa-today", "cnn", "fox-news"]
        topics = [("Politics", "Elections"), ("Sports", "Football"), ("Economy", "Economy")]
        rows = []
        for i in range(rng.randrange(1, 40)):
            category, topic = rng.choice(topics)
            rows.append(
                row(
                    publisher=rng.choice(publishers),
                    date=f"2024-08-{rng.randrange(1, 5):02d}",
                    category=category,
                    topic=topic,
                    lean=rng.randrange(-5, 6),
                    tone=rng.randrange(-5, 6),
                    article_id=f"a{i}",
                )
            )
        group_by = rng.choice([("publisher",), ("topic",), ("publisher", "category")])
        measure = rng.choice(["count", "mean_lean", "mean_tone"])
        start, end = "2024-08-01", f"2024-08-{rng.randrange(1, 5):02d}"
        if start > end:
            start, end = end, start
        query = AggregateQuery(date_range=(start, end), group_by=group_by, measure=measure)
        cells = {c.key: c for c in aggregate(query, rows)}

        fields = {"publisher": "publisher_id", "topic": "topic", "category": "category"}
        expected: dict[tuple, list] = {}
        for r in rows:
            if not (start <= r["date"] <= end):
                continue
            key = tuple(str(r[fields[g]]) for g in group_by)
            expected.setdefault(key, []).append(r)
        assert set(cells) == set(expected)
        for key, members in expected.items():
            if measure == "count":
                assert cells[key].n == len(members)
            else:
                field = measure.removeprefix("mean_")
                assert cells[key].value == pytest.approx(sum(m[field] for m in members) / len(members), abs=1e-12)

    def test_grouped_counts_sum_to_total(self):
        rows = [row(publisher=p) for p in ["usa-today", "cnn", "cnn", "fox-news"]]
        query = AggregateQuery(date_range=("2024-08-01", "2024-08-01"), group_by=("publisher",), measure="count")
        assert sum(c.n for c in aggregate(query, rows)) == len(rows)


class TestHeadlineDelta:
    def test_identity_when_headline_equals_article(self):
        rows = [row(lean=2, headline_lean=2, tone=-1, headline_tone=-1)]
        report = headline_delta(rows)
        assert report.overall.delta_lean == 0.0
        assert report.overall.delta_tone == 0.0

    def test_single_article_delta_arithmetic(self):
        # lean -1 vs headline 0 -> +1; tone -2 vs headline +4 -> +6
        rows = [row(lean=-1, headline_lean=0, tone=-2, headline_tone=4)]
        report = headline_delta(rows)
        point = report.by_category["Politics"]
        assert point.delta_lean == pytest.approx(1.0, abs=1e-12)
        assert point.delta_tone == pytest.approx(6.0, abs=1e-12)

    def test_missing_headline_labels_excluded_and_counted(self):
        rows = [row(), dict(row(), headline_lean=None)]
        report = headline_delta(rows)
        assert report.excluded == 1
        assert report.overall.n == 1

    def test_category_means_match_brute_force(self):
        rng = random.Random(11)
        rows = [
            row(category=rng.choice(["Politics", "Sports"]), lean=rng.randrange(-5, 6), headline_lean=rng.randrange(-5, 6), tone=rng.randrange(-5, 6), headline_tone=rng.randrange(-5, 6))
            for _ in range(30)
        ]
        report = headline_delta(rows)
        for category, point in report.by_category.items():
            members = [r for r in rows if r["category"] == category]
            assert point.mean_article_lean == pytest.approx(sum(m["lean"] for m in members) / len(members), abs=1e-12)
            assert point.mean_headline_lean == pytest.approx(sum(m["headline_lean"] for m in members) / len(members), abs=1e-12)


class TestHorseraceVsPolicy:
    def test_counts_per_side(self, hierarchy):
        rows = [
            row(subtopic="Presidential Horse Race"),
            row(subtopic="Presidential Horse Race"),
            row(subtopic="Presidential Horse Race"),
            row(topic="Immigration", subtopic="Border Security"),
        ]
        counts = horserace_vs_policy(rows, ["Presidential Horse Race"], ["Immigration"], hierarchy)
        assert counts["usa-today"] == {"horserace": 3, "policy": 1}

    def test_disjoint_sets_never_double_count(self, hierarchy):
        rows = [row(subtopic="Presidential Horse Race", topic="Elections")]
        counts = horserace_vs_policy(rows, ["Presidential Horse Race"], ["Immigration"], hierarchy)
        assert counts["usa-today"]["horserace"] + counts["usa-today"]["policy"] == 1

    def test_unknown_names_rejected(self, hierarchy):
        with pytest.raises(ValueError, match="unknown subtopic"):
            horserace_vs_policy([], ["Made Up Subtopic"], [], hierarchy)
        with pytest.raises(ValueError, match="unknown topic"):
            horserace_vs_policy([], [], ["Made Up Topic"], hierarchy)


def test_focus_value_rejects_unknown_label():
    with pytest.raises(ValueError):
        focus_value("independent")
