from __future__ import annotations

import math
import random

import pytest

from pressgauge.core.types import ValidationResponse, ValidationTask
from pressgauge.errors import SchemaError
from pressgauge.store.db import VersionedStore
from pressgauge.validation.corrections import apply_corrections
from pressgauge.validation.metrics import agreement_report, cluster_prf, confusion_matrix
from pressgauge.validation.sampling import BUCKETS, StratificationSpec, bucket_of, sample_validation_batch


def label_rows(per_pair=1):
    """One row for every (lean, tone) pair on the 11x11 grid."""
    rows = []
    for lean in range(-5, 6):
        for tone in range(-5, 6):
            for k in range(per_pair):
                rows.append(
                    {
                        "article_id": f"a{lean:+d}{tone:+d}-{k}",
                        "lean": lean,
                        "tone": tone,
                        "lean_reason": "r",
                        "tone_reason": "r",
                        "news_type": "news report",
                        "topic": "Elections",
                    }
                )
    return rows


class TestSampling:
    def test_full_store_yields_fifty_tasks(self):
        result = sample_validation_batch(label_rows(), StratificationSpec(), seed=7)
        assert len(result.tasks) == 50
        assert result.underfilled == {}

    def test_deterministic_for_a_seed(self):
        first = sample_validation_batch(label_rows(), StratificationSpec(), seed=13)
        second = sample_validation_batch(label_rows(), StratificationSpec(), seed=13)
        assert [t.task_id for t in first.tasks] == [t.task_id for t in second.tasks]

    def test_different_seeds_differ(self):
        a = sample_validation_batch(label_rows(2), StratificationSpec(), seed=1)
        b = sample_validation_batch(label_rows(2), StratificationSpec(), seed=2)
        assert [t.task_id for t in a.tasks] != [t.task_id for t in b.tasks]

    def test_underfilled_cell_reported(self):
        rows = [r for r in label_rows() if not (r["lean"] == -5 and r["tone"] == -5)]
        rows = [r for r in rows if not (r["lean"] == -4 and r["tone"] in (-5, -4))]
        rows = [r for r in rows if not (r["lean"] == -5 and r["tone"] == -4)]
        # the [-5,-4]x[-5,-4] cell now has zero candidates
        result = sample_validation_batch(rows, StratificationSpec(), seed=3)
        assert len(result.tasks) == 48
        assert result.underfilled == {"lean[-5,-4]xtone[-5,-4]": 2}

    def test_no_article_sampled_twice(self):
        result = sample_validation_batch(label_rows(), StratificationSpec(), seed=5)
        ids = [t.payload["article_id"] for t in result.tasks]
        assert len(set(ids)) == len(ids)

    def test_cell_quotas_respected(self):
        result = sample_validation_batch(label_rows(3), StratificationSpec(per_cell=2), seed=9)
        cells = {}
        for task in result.tasks:
            key = (bucket_of(task.payload["lean"]), bucket_of(task.payload["tone"]))
            cells[key] = cells.get(key, 0) + 1
        assert all(count == 2 for count in cells.values())
        assert len(cells) == 25

    def test_balanced_over_underlying_values_where_possible(self):
        # per_cell=2 in the wide middle cell should pick two distinct value pairs
        result = sample_validation_batch(label_rows(5), StratificationSpec(), seed=21)
        middle = [t for t in result.tasks if bucket_of(t.payload["lean"]) == (-1, 1) and bucket_of(t.payload["tone"]) == (-1, 1)]
        pairs = {(t.payload["lean"], t.payload["tone"]) for t in middle}
        assert len(pairs) == 2

    def test_buckets_partition_scale(self):
        covered = sorted(v for low, high in BUCKETS for v in range(low, high + 1))
        assert covered == list(range(-5, 6))

    def test_empty_store_rejected(self):
        with pytest.raises(ValueError):
            sample_validation_batch([], StratificationSpec(), seed=1)


class TestAgreementReport:
    def test_unanimous_agreement(self):
        responses = [("ann1", "Agree")] * 10 + [("ann2", "Agree")] * 10 + [("ann3", "Agree")] * 10
        report = agreement_report(responses, "article_tone")
        assert report.mean["Agree"] == 1.0
        assert report.sd["Agree"] == 0.0
        assert report.annotators == 3

    def test_hand_computed_mean_and_population_sd(self):
        # agree fractions 0.8, 0.7, 0.75 -> mean 0.75, population SD 0.040825
        responses = []
        for annotator, agree_count in (("a", 16), ("b", 14), ("c", 15)):
            responses += [(annotator, "Agree")] * agree_count
            responses += [(annotator, "Disagree")] * (20 - agree_count)
        report = agreement_report(responses, "article_lean")
        assert report.mean["Agree"] == pytest.approx(0.75, abs=1e-12)
        assert report.sd["Agree"] == pytest.approx(math.sqrt(0.0025 + 0.0025) / math.sqrt(3) , abs=1e-6)
        assert report.sd["Agree"] == pytest.approx(0.0408, abs=1e-4)

    def test_single_annotator_sd_zero(self):
        report = agreement_report([("solo", "Agree"), ("solo", "Somewhat Agree")], "article_tone")
        assert all(sd == 0.0 for sd in report.sd.values())

    def test_fractions_sum_to_one_per_annotator(self):
        rng = random.Random(4)
        levels = ["Agree", "Somewhat Agree", "Neither Agree nor Disagree", "Somewhat Disagree", "Disagree"]
        responses = [(f"ann{i % 3}", rng.choice(levels)) for i in range(60)]
        report = agreement_report(responses, "article_lean")
        assert sum(report.mean.values()) == pytest.approx(1.0, abs=1e-9)

    def test_unknown_dimension_rejected(self):
        with pytest.raises(ValueError):
            agreement_report([("a", "Agree")], "sentiment")

    def test_binary_dimension_rejects_scale_verdicts(self):
        with pytest.raises(ValueError):
            agreement_report([("a", "Somewhat Agree")], "article_type")


class TestConfusionMatrix:
    def test_all_agree_is_diagonal(self):
        pairs = [("news report", "news report")] * 5 + [("opinion", "opinion")] * 3
        matrix = confusion_matrix(pairs, ["news report", "news analysis", "opinion"])
        assert matrix.accuracy == 1.0
        assert matrix.matrix[0][0] == 5 and matrix.matrix[2][2] == 3

    def test_86_of_100_agreements(self):
        pairs = [("a", "a")] * 86 + [("a", "b")] * 14
        matrix = confusion_matrix(pairs, ["a", "b"])
        assert matrix.accuracy == pytest.approx(0.86, abs=1e-12)

    def test_accuracy_is_trace_over_total_randomized(self):
        rng = random.Random(8)
        labels = ["x", "y", "z"]
        for _ in range(25):
            pairs = [(rng.choice(labels), rng.choice(labels)) for _ in range(rng.randrange(1, 80))]
            matrix = confusion_matrix(pairs, labels)
            trace = sum(matrix.matrix[i][i] for i in range(3))
            assert matrix.accuracy == pytest.approx(trace / len(pairs), abs=1e-12)

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            confusion_matrix([], ["a"])

    def test_label_outside_space_rejected(self):
        with pytest.raises(ValueError):
            confusion_matrix([("a", "q")], ["a", "b"])


class TestClusterPrf:
    def test_perfect_clustering(self):
        assignments = {f"a{i}": "e1" for i in range(5)}
        verdicts = {f"a{i}": ("correct", None) for i in range(5)}
        result = cluster_prf(assignments, verdicts)
        assert (result.precision, result.recall, result.f1) == (1.0, 1.0, 1.0)

    def test_spec_example_nine_of_ten_and_twelve_true(self):
        assignments = {f"a{i}": "e1" for i in range(10)}
        assignments.update({f"m{i}": None for i in range(3)})
        verdicts = {f"a{i}": ("correct", None) for i in range(9)}
        verdicts["a9"] = ("no_event", None)
        verdicts.update({f"m{i}": ("other_event", "e1") for i in range(3)})
        result = cluster_prf(assignments, verdicts)
        assert result.precision == pytest.approx(0.9, abs=1e-9)
        assert result.recall == pytest.approx(0.75, abs=1e-9)
        assert result.f1 == pytest.approx(0.8182, abs=1e-4)

    def test_zero_clustered_members_error(self):
        with pytest.raises(ValueError, match="precision undefined"):
            cluster_prf({"a": None}, {"a": ("no_event", None)})

    def test_clustered_article_without_verdict_rejected(self):
        with pytest.raises(ValueError, match="no verdict"):
            cluster_prf({"a": "e1"}, {})


def _task(article_id="art1", dimension="article_lean", model_label=-2):
    return ValidationTask(
        task_id=f"{dimension}-{article_id}",
        kind=dimension if dimension in ("topic", "article_lean", "article_tone", "article_type") else "article_lean",
        payload={"article_id": article_id, "dimension": dimension, "model_label": model_label},
    )


def _response(task, verdict, corrected=None, annotator="ann1"):
    return ValidationResponse(
        task_id=task.task_id,
        annotator_id=annotator,
        verdict=verdict,
        submitted_at="2024-08-01T00:00:00Z",
        corrected_label=corrected,
    )


class TestApplyCorrections:
    def test_disagreement_writes_overlay_model_label_untouched(self, hierarchy):
        store = VersionedStore()
        store.put("label", "art1", {"topic": "Elections", "lean": {"lean": -2, "reason": "r"}})
        task = _task()
        log = apply_corrections([(task, _response(task, "Disagree", corrected=1))], store, hierarchy)
        assert log["written"] == ["art1/article_lean/ann1"]
        overlay = store.get("overlay", "art1/article_lean/ann1")
        assert overlay["corrected_label"] == 1
        assert store.get("label", "art1")["lean"]["lean"] == -2

    def test_agree_verdict_writes_nothing(self, hierarchy):
        store = VersionedStore()
        task = _task()
        log = apply_corrections([(task, _response(task, "Agree"))], store, hierarchy)
        assert log["written"] == [] and log["agreements_skipped"] == 1

    def test_duplicate_identical_corrections_idempotent(self, hierarchy):
        store = VersionedStore()
        task = _task()
        response = _response(task, "Disagree", corrected=1)
        apply_corrections([(task, response)], store, hierarchy)
        log = apply_corrections([(task, response)], store, hierarchy)
        assert log["written"] == []
        assert store.versions("overlay", "art1/article_lean/ann1") == [1]

    def test_conflicting_corrections_both_stored_and_flagged(self, hierarchy):
        store = VersionedStore()
        task = _task()
        apply_corrections([(task, _response(task, "Disagree", corrected=1, annotator="ann1"))], store, hierarchy)
        log = apply_corrections([(task, _response(task, "Disagree", corrected=3, annotator="ann2"))], store, hierarchy)
        assert len(store.ids("overlay")) == 2
        assert log["conflicts"] == [{"article_id": "art1", "dimension": "article_lean", "values": ["1", "3"]}]

    def test_corrected_score_out_of_range_rejected(self, hierarchy):
        store = VersionedStore()
        task = _task()
        with pytest.raises(SchemaError):
            apply_corrections([(task, _response(task, "Disagree", corrected=9))], store, hierarchy)

    def test_new_topic_routed_to_proposal_queue(self, hierarchy):
        store = VersionedStore()
        task = _task(dimension="topic", model_label="Elections")
        log = apply_corrections([(task, _response(task, "Disagree", corrected="Space Weather"))], store, hierarchy)
        assert log["written"] == []
        assert log["proposals"][0]["proposed_topic"] == "Space Weather"
        assert store.get("topic_proposal", "Space Weather") is not None

    def test_known_topic_correction_becomes_overlay(self, hierarchy):
        store = VersionedStore()
        task = _task(dimension="topic", model_label="Foreign Policy")
        log = apply_corrections(
            [(task, _response(task, "Disagree", corrected="War and International Conflict"))], store, hierarchy
        )
        assert log["written"] == ["art1/topic/ann1"]

    def test_analytics_with_overlays_off_reproduce_pre_correction_results(self, hierarchy):
        from pressgauge.store.views import article_rows
        from tests.conftest import make_article_doc, make_label_raw
        from pressgauge.core.schema import validate_label_set

        store = VersionedStore()
        article = make_article_doc()
        store.put("article", article["article_id"], article)
        labels = validate_label_set(make_label_raw(article["article_id"], lean=-2), hierarchy)
        store.put("label", article["article_id"], labels.to_doc())
        before = article_rows(store)

        task = _task(article_id=article["article_id"])
        apply_corrections([(task, _response(task, "Disagree", corrected=3))], store, hierarchy)

        assert article_rows(store) == before  # overlays off: bit-identical rows
        corrected = article_rows(store, use_corrections=True, hierarchy=hierarchy)
        assert corrected[0]["lean"] == 3
        assert store.get("label", article["article_id"])["lean"]["lean"] == -2


class TestSentenceCorrections:
    def _sentence_task(self):
        return ValidationTask(
            task_id="sentence-art1",
            kind="sentence",
            payload={"article_id": "art1", "dimension": "sentence"},
        )

    def test_valid_sentence_edits_become_an_overlay(self, hierarchy):
        store = VersionedStore()
        task = self._sentence_task()
        edits = [{"sentence": 3, "type": "opinion"}, {"sentence": 5, "tone": "negative", "focus": "democrat"}]
        log = apply_corrections([(task, _response(task, "Disagree", corrected=edits))], store, hierarchy)
        assert log["written"] == ["art1/sentence/ann1"]
        assert store.get("overlay", "art1/sentence/ann1")["corrected_label"] == edits

    def test_open_vocabulary_edit_rejected(self, hierarchy):
        store = VersionedStore()
        task = self._sentence_task()
        with pytest.raises(SchemaError, match="not in"):
            apply_corrections(
                [(task, _response(task, "Disagree", corrected=[{"sentence": 1, "type": "sarcasm"}]))], store, hierarchy
            )

    def test_empty_edit_rejected(self, hierarchy):
        store = VersionedStore()
        task = self._sentence_task()
        with pytest.raises(SchemaError, match="changes nothing"):
            apply_corrections([(task, _response(task, "Disagree", corrected=[{"sentence": 1}]))], store, hierarchy)

    def test_unknown_field_rejected(self, hierarchy):
        store = VersionedStore()
        task = self._sentence_task()
        with pytest.raises(SchemaError, match="unknown sentence field"):
            apply_corrections(
                [(task, _response(task, "Disagree", corrected=[{"sentence": 1, "lean": 2}]))], store, hierarchy
            )

    def test_sentence_batch_sampling(self):
        result = sample_validation_batch(label_rows(), StratificationSpec(), seed=4, kind="sentence")
        assert len(result.tasks) == 50
        assert all(t.kind == "sentence" for t in result.tasks)
        assert result.tasks[0].payload["model_label"] is None


def test_cluster_prf_rejects_unknown_event_reference():
    assignments = {"a1": "e1", "a2": None}
    verdicts = {"a1": ("correct", None), "a2": ("other_event", "ghost")}
    with pytest.raises(ValueError, match="unknown event"):
        cluster_prf(assignments, verdicts, known_events={"e1", "e2"})
    # without a known universe the reassignment is accepted as-is
    result = cluster_prf(assignments, verdicts)
    assert result.recall == pytest.approx(0.5)
