"""End-to-end pipeline wiring on the tiny hand-checkable corpus."""

from __future__ import annotations

import pytest

from clinicalqa import evalkit
from clinicalqa.config import PipelineConfig
from clinicalqa.pipeline import (
    Pipeline,
    PipelineError,
    build_all,
    cmd_classify_docs,
    cmd_eval,
    cmd_index,
    cmd_train,
    load_pipeline,
)
from clinicalqa.ranking import RankedAnswer

TRAINING = [
    ("What is the drug of choice for migraine?", True, 1),
    ("What is the drug of choice for gout?", True, 1),
    ("Name the drug of choice when headache strikes.", True, 1),
    ("What is the dose of ibuprofen?", True, 2),
    ("What is the usual dosage of aspirin?", True, 2),
    ("At what dose should sumatriptan be given?", True, 2),
    ("What is the best treatment for migraine?", True, 3),
    ("Which treatment works for gout?", True, 3),
    ("Is treatment of headache effective?", True, 3),
    ("Can aspirin cause an adverse effect?", True, 4),
    ("Does ibuprofen have an adverse effect on nausea?", True, 4),
    ("Is an adverse effect of sumatriptan known?", True, 4),
    ("Is the gene database complete?", False, None),
    ("Who funded the systematic review?", False, None),
    ("How long did the cohort study run?", False, None),
]

GOLD_TSV = (
    "q1\tWhat is the drug of choice for migraine?\td1\t1\n"
    "q2\tCan aspirin cause an adverse effect?\td3\t1\n"
)

REFUSAL_TRAINED = "Who funded the systematic review?"
REFUSAL_UNMAPPED = "What color is the sky?"


def questions_tsv() -> str:
    rows = []
    for text, answerable, focus_class in TRAINING:
        rows.append(f"{text}\t{1 if answerable else 0}\t{focus_class if focus_class else '-'}")
    return "\n".join(rows) + "\n"


def make_config(base, tiny_corpus_path, tiny_lexicon_path, *, gold=True) -> PipelineConfig:
    questions = base / "questions.tsv"
    questions.write_text(questions_tsv(), encoding="utf-8")
    gold_path = None
    if gold:
        gold_path = base / "gold.tsv"
        gold_path.write_text(GOLD_TSV, encoding="utf-8")
    return PipelineConfig(corpus=tiny_corpus_path, lexicon=tiny_lexicon_path,
                          workdir=base / "work", questions=questions, gold=gold_path)


@pytest.fixture(scope="module")
def config(tmp_path_factory, tiny_corpus_path, tiny_lexicon_path) -> PipelineConfig:
    base = tmp_path_factory.mktemp("pipe")
    return make_config(base, tiny_corpus_path, tiny_lexicon_path)


@pytest.fixture(scope="module")
def pipeline(config) -> Pipeline:
    return build_all(config)


class TestCommands:
    def test_index_persists_bundle(self, config, pipeline):
        assert config.index_path.exists()
        bundle = cmd_index(config)
        assert bundle.doc_ids == ["d1", "d2", "d3", "d4", "d5", "d6"]

    def test_train_requires_index(self, tmp_path, tiny_corpus_path, tiny_lexicon_path):
        fresh = make_config(tmp_path, tiny_corpus_path, tiny_lexicon_path)
        with pytest.raises(PipelineError, match="run the index command first"):
            cmd_train(fresh)

    def test_train_requires_questions(self, tmp_path, tiny_corpus_path, tiny_lexicon_path):
        fresh = make_config(tmp_path, tiny_corpus_path, tiny_lexicon_path)
        fresh.questions = None
        cmd_index(fresh)
        with pytest.raises(PipelineError, match="no questions file"):
            cmd_train(fresh)

    def test_train_summary_and_artifacts(self, config, pipeline):
        summary = cmd_train(config)
        assert summary.n_docs == 6
        assert summary.n_evidence == 4
        assert summary.evidence_fallback is False
        assert summary.n_questions == len(TRAINING)
        assert summary.n_answerable == 12
        for path in (config.doc_model_path, config.evidence_index_path,
                     config.gate_model_path, config.focus_model_path):
            assert path.exists()

    def test_evidence_index_excludes_reviews(self, pipeline):
        assert pipeline.retrieval_bundle.doc_ids == ["d1", "d2", "d3", "d4"]

    def test_load_requires_training(self, tmp_path, tiny_corpus_path, tiny_lexicon_path):
        fresh = make_config(tmp_path, tiny_corpus_path, tiny_lexicon_path)
        with pytest.raises(PipelineError, match="run the train command first"):
            load_pipeline(fresh)

    def test_classify_docs_reports_all(self, config, pipeline):
        body = cmd_classify_docs(config)
        lines = body.strip().splitlines()
        assert len(lines) == 6
        assert lines[0] == "d1\tintervention\tintervention"

    def test_classify_docs_requires_model(self, tmp_path, tiny_corpus_path, tiny_lexicon_path):
        fresh = make_config(tmp_path, tiny_corpus_path, tiny_lexicon_path)
        with pytest.raises(PipelineError, match="document model not found"):
            cmd_classify_docs(fresh)


class TestAsk:
    def test_answerable_payload(self, pipeline):
        payload = pipeline.ask("What is the drug of choice for migraine?")
        assert set(payload) == {"question", "answerable", "score", "class_number",
                                "focus_tags", "retrieval_fallback", "results"}
        assert payload["answerable"] is True
        assert payload["score"] > 0
        assert payload["class_number"] == 1
        assert payload["focus_tags"] == ["Pharmacologic substance", "clinical drug"]
        assert payload["retrieval_fallback"] is False
        assert payload["results"][0]["doc_id"] == "d1"

    def test_answer_sentence_highlighted(self, pipeline):
        payload = pipeline.ask("What is the drug of choice for migraine?")
        top = payload["results"][0]
        highlighted = [s["index"] for s in top["sentences"] if s["highlighted"]]
        assert highlighted == [1]
        assert top["sentences"][1]["line_score"] == 1.0

    def test_trained_refusal(self, pipeline):
        payload = pipeline.ask(REFUSAL_TRAINED)
        assert payload["answerable"] is False
        assert "results" not in payload
        assert "outside" in payload["reason"]

    def test_unmapped_refusal(self, pipeline):
        payload = pipeline.ask(REFUSAL_UNMAPPED)
        assert payload["answerable"] is False
        assert payload["score"] == 0.0
        assert payload["reason"] == "no medical phrases recognized in the question"

    def test_refusals_short_circuit_retrieval(self, config):
        fresh = load_pipeline(config)
        assert fresh.counters == {"asks": 0, "refusals": 0, "retrievals": 0}
        fresh.ask("What is the drug of choice for migraine?")
        assert fresh.counters == {"asks": 1, "refusals": 0, "retrievals": 1}
        fresh.ask(REFUSAL_TRAINED)
        assert fresh.counters == {"asks": 2, "refusals": 1, "retrievals": 1}
        fresh.ask(REFUSAL_UNMAPPED)
        assert fresh.counters == {"asks": 3, "refusals": 2, "retrievals": 1}

    def test_ranked_answer_none_on_refusal(self, pipeline):
        assert pipeline.ranked_answer(REFUSAL_TRAINED) is None
        ranked = pipeline.ranked_answer("What is the drug of choice for migraine?")
        assert isinstance(ranked, RankedAnswer)
        assert ranked.doc_ids()[0] == "d1"

    def test_top_k_override(self, pipeline):
        ranked = pipeline.ranked_answer("What is the drug of choice for migraine?", top_k=1)
        assert len(ranked) == 1


class TestDocPayload:
    def test_known_doc(self, pipeline):
        payload = pipeline.doc_payload("d1")
        assert payload["doc_id"] == "d1"
        assert payload["title"] == "Sumatriptan for migraine."
        assert payload["label"] == "intervention"
        assert [s["index"] for s in payload["sentences"]] == [0, 1, 2]

    def test_unknown_doc(self, pipeline):
        assert pipeline.doc_payload("ghost") is None


class TestEvaluate:
    def test_gold_answers_rank_first(self, pipeline):
        gold = [
            evalkit.GoldAnswer("q1", "What is the drug of choice for migraine?", "d1", 1),
            evalkit.GoldAnswer("q2", "Can aspirin cause an adverse effect?", "d3", 1),
        ]
        report = pipeline.evaluate(gold)
        assert [row.rank for row in report.rows] == [1, 1]
        assert report.mrr == 1.0
        assert report.answered_fraction == 1.0
        assert all(isinstance(row.effort, int) and row.effort > 0 for row in report.rows)

    def test_cmd_eval_writes_report(self, config, pipeline):
        report = cmd_eval(config)
        assert report.mrr == 1.0
        text = config.report_path.read_text(encoding="utf-8")
        assert "q1\t1\t" in text
        assert "mrr\t1.00000" in text

    def test_cmd_eval_requires_gold(self, tmp_path, tiny_corpus_path, tiny_lexicon_path):
        fresh = make_config(tmp_path, tiny_corpus_path, tiny_lexicon_path, gold=False)
        with pytest.raises(PipelineError, match="no gold file"):
            cmd_eval(fresh)

    def test_cmd_eval_rejects_empty_gold(self, tmp_path, tiny_corpus_path,
                                         tiny_lexicon_path, config):
        fresh = make_config(tmp_path, tiny_corpus_path, tiny_lexicon_path)
        fresh.gold.write_text("# nothing here\n", encoding="utf-8")
        build_all(fresh)
        with pytest.raises(PipelineError, match="holds no answers"):
            cmd_eval(fresh)


class TestDeterminism:
    def test_two_builds_are_byte_identical(self, tmp_path, tiny_corpus_path,
                                           tiny_lexicon_path):
        questions = [
            "What is the drug of choice for migraine?",
            "At what dose should sumatriptan be given?",
            REFUSAL_TRAINED,
        ]
        outputs = []
        for name in ("run_a", "run_b"):
            base = tmp_path / name
            base.mkdir()
            fresh = make_config(base, tiny_corpus_path, tiny_lexicon_path)
            pipeline = build_all(fresh)
            outputs.append({
                "index": fresh.index_path.read_bytes(),
                "evidence": fresh.evidence_index_path.read_bytes(),
                "gate": fresh.gate_model_path.read_bytes(),
                "focus": fresh.focus_model_path.read_bytes(),
                "answers": [pipeline.ask(q) for q in questions],
            })
        assert outputs[0]["index"] == outputs[1]["index"]
        assert outputs[0]["evidence"] == outputs[1]["evidence"]
        assert outputs[0]["gate"] == outputs[1]["gate"]
        assert outputs[0]["focus"] == outputs[1]["focus"]
        assert outputs[0]["answers"] == outputs[1]["answers"]
