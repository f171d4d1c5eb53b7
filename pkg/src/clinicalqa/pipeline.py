"""End-to-end wiring: build, train, load, ask, evaluate.

Build order matters: the full index fixes the feature vocabularies, the
document model restricts the corpus to evidence, and retrieval runs over an
index rebuilt on that evidence subset.  Everything persists to the config's
working directory; loading gives an immutable snapshot whose answers are
deterministic for a fixed config and seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from clinicalqa import conceptmap, docclass, evalkit, question as questionmod, ranking, retrieval
from clinicalqa.conceptmap import Lexicon, load_lexicon
from clinicalqa.config import PipelineConfig
from clinicalqa.corpus import AbstractDoc, parse_corpus
from clinicalqa.index import IndexBundle, build_index, load_bundle, save_bundle


class PipelineError(RuntimeError):
    """Raised when artifacts are missing or the pipeline is misused; the
    message says which command produces the missing piece."""


def cmd_index(config: PipelineConfig) -> IndexBundle:
    """Build the full-corpus index and persist it."""
    docs = parse_corpus(config.corpus)
    lexicon = load_lexicon(config.lexicon)
    bundle = build_index(docs, lexicon)
    config.workdir.mkdir(parents=True, exist_ok=True)
    save_bundle(bundle, config.index_path)
    return bundle


@dataclass
class TrainSummary:
    n_docs: int
    n_evidence: int
    evidence_fallback: bool
    n_questions: int
    n_answerable: int


def cmd_train(config: PipelineConfig) -> TrainSummary:
    """Train the three stage models and build the evidence retrieval index.

    Requires the full index (``index`` command) and a questions file.
    """
    if not config.index_path.exists():
        raise PipelineError(f"index not found at {config.index_path}; run the index command first")
    if config.questions is None:
        raise PipelineError("config has no questions file; gate/focus training needs one")
    docs = parse_corpus(config.corpus)
    lexicon = load_lexicon(config.lexicon)
    bundle = load_bundle(config.index_path)

    doc_model = docclass.train_doc_model(
        docs, lexicon, bundle,
        algorithm=config.doc_stage.algorithm,
        feature_set=config.doc_stage.feature_set,
        **config.doc_stage.hyper)
    docclass.save_doc_model(doc_model, config.doc_model_path)

    filtered = docclass.filter_evidence(docs, doc_model, lexicon)
    evidence_bundle = build_index(filtered.evidence, lexicon)
    save_bundle(evidence_bundle, config.evidence_index_path)

    training_questions = questionmod.parse_questions(config.questions)
    gate = questionmod.train_gate(
        training_questions, lexicon,
        algorithm=config.gate_stage.algorithm,
        feature_set=config.gate_stage.feature_set,
        **config.gate_stage.hyper)
    questionmod.save_question_model(gate, config.gate_model_path)
    focus = questionmod.train_focus(
        training_questions, lexicon,
        algorithm=config.focus_stage.algorithm,
        feature_set=config.focus_stage.feature_set,
        **config.focus_stage.hyper)
    questionmod.save_question_model(focus, config.focus_model_path)

    return TrainSummary(
        n_docs=len(docs),
        n_evidence=len(filtered.evidence),
        evidence_fallback=filtered.fallback,
        n_questions=len(training_questions),
        n_answerable=sum(1 for q in training_questions if q.answerable),
    )


def cmd_classify_docs(config: PipelineConfig) -> str:
    """Classify every corpus document; returns the TSV report body."""
    if not config.doc_model_path.exists():
        raise PipelineError(f"document model not found at {config.doc_model_path}; "
                            "run the train command first")
    docs = parse_corpus(config.corpus)
    lexicon = load_lexicon(config.lexicon)
    doc_model = docclass.load_doc_model(config.doc_model_path)
    decisions = docclass.classify_corpus(docs, doc_model, lexicon)
    return docclass.decisions_tsv(decisions)


@dataclass
class Pipeline:
    """Loaded, immutable snapshot of every artifact needed to answer."""

    config: PipelineConfig
    lexicon: Lexicon
    docs: list[AbstractDoc]
    docs_by_id: dict[str, AbstractDoc]
    retrieval_bundle: IndexBundle
    gate: questionmod.QuestionModel
    focus: questionmod.QuestionModel
    counters: dict = field(default_factory=lambda: {"asks": 0, "refusals": 0, "retrievals": 0})

    def ask(self, text: str, top_k: int | None = None) -> dict:
        """Answer one question; refusals short-circuit before retrieval."""
        self.counters["asks"] += 1
        mapping = conceptmap.map_text(text, self.lexicon)
        answerable, score = questionmod.is_answerable(text, self.gate, self.lexicon)
        if not answerable:
            self.counters["refusals"] += 1
            reason = ("no medical phrases recognized in the question"
                      if not mapping else
                      "the question looks patient-specific or otherwise outside "
                      "the scope of the literature")
            return {"question": text, "answerable": False, "score": score, "reason": reason}
        focus_class = questionmod.classify_focus(text, self.focus, self.lexicon)
        self.counters["retrievals"] += 1
        candidates = retrieval.retrieve(
            mapping, self.retrieval_bundle,
            top_k=top_k if top_k is not None else self.config.top_k,
            phrase_bias=self.config.phrase_bias, tag_bias=self.config.tag_bias)
        ranked = ranking.rank_candidates(candidates, mapping,
                                         focus_class.canonical_tags(),
                                         self.docs_by_id, self.lexicon)
        return {
            "question": text,
            "answerable": True,
            "score": score,
            "class_number": focus_class.class_number,
            "focus_tags": sorted(focus_class.focus_tags),
            "retrieval_fallback": candidates.fallback,
            "results": ranked.to_payload(),
        }

    def ranked_answer(self, text: str, top_k: int | None = None) -> ranking.RankedAnswer | None:
        """Library-level variant of ask(); None when the gate refuses."""
        answerable, _ = questionmod.is_answerable(text, self.gate, self.lexicon)
        if not answerable:
            return None
        mapping = conceptmap.map_text(text, self.lexicon)
        focus_class = questionmod.classify_focus(text, self.focus, self.lexicon)
        candidates = retrieval.retrieve(
            mapping, self.retrieval_bundle,
            top_k=top_k if top_k is not None else self.config.top_k,
            phrase_bias=self.config.phrase_bias, tag_bias=self.config.tag_bias)
        return ranking.rank_candidates(candidates, mapping, focus_class.canonical_tags(),
                                       self.docs_by_id, self.lexicon)

    def doc_payload(self, doc_id: str) -> dict | None:
        doc = self.docs_by_id.get(doc_id)
        if doc is None:
            return None
        payload = {
            "doc_id": doc.doc_id,
            "title": doc.title,
            "abstract": doc.body,
            "sentences": [{"index": s.index, "text": s.text} for s in doc.sentences],
        }
        if doc.label is not None:
            payload["label"] = doc.label.value
        return payload

    def evaluate(self, gold: list[evalkit.GoldAnswer],
                 cutoffs: tuple[int, ...] = evalkit.DEFAULT_CUTOFFS) -> evalkit.EvalReport:
        """Run every gold question through the pipeline and score it."""
        evalkit.check_gold(gold, self.docs_by_id)
        rows = []
        for entry in gold:
            ranked = self.ranked_answer(entry.question_text)
            if ranked is None:
                rank = None
                effort = evalkit.NOT_FOUND
            else:
                rank = evalkit.find_rank(ranked, entry.doc_id)
                effort = evalkit.user_effort(ranked, entry, self.docs_by_id)
            rows.append(evalkit.EvalRow(
                question_id=entry.question_id,
                question_text=entry.question_text,
                rank=rank,
                rr=evalkit.reciprocal_rank(rank),
                effort=effort,
            ))
        return evalkit.build_report(rows, cutoffs)


def load_pipeline(config: PipelineConfig) -> Pipeline:
    """Load persisted artifacts read-only; says what to run if one is missing."""
    for path, producer in ((config.evidence_index_path, "train"),
                           (config.gate_model_path, "train"),
                           (config.focus_model_path, "train")):
        if not path.exists():
            raise PipelineError(f"{path} not found; run the {producer} command first "
                                "(index before train)")
    docs = parse_corpus(config.corpus)
    lexicon = load_lexicon(config.lexicon)
    return Pipeline(
        config=config,
        lexicon=lexicon,
        docs=docs,
        docs_by_id={d.doc_id: d for d in docs},
        retrieval_bundle=load_bundle(config.evidence_index_path),
        gate=questionmod.load_question_model(config.gate_model_path),
        focus=questionmod.load_question_model(config.focus_model_path),
    )


def build_all(config: PipelineConfig) -> Pipeline:
    """index + train + load in one call (used by tests and admin reindex)."""
    cmd_index(config)
    cmd_train(config)
    return load_pipeline(config)


def cmd_eval(config: PipelineConfig, out_path: str | Path | None = None) -> evalkit.EvalReport:
    """Evaluate the pipeline against the configured gold file; writes the
    report and returns it."""
    if config.gold is None:
        raise PipelineError("config has no gold file; evaluation needs one")
    pipeline = load_pipeline(config)
    gold = evalkit.parse_gold(config.gold)
    if not gold:
        raise PipelineError(f"gold file {config.gold} holds no answers")
    report = pipeline.evaluate(gold)
    target = Path(out_path) if out_path is not None else config.report_path
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(evalkit.report_text(report), encoding="utf-8")
    return report
