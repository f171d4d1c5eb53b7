"""Evidence-taxonomy document classification.

Abstracts are sorted into three classes (intervention, non-intervention,
non-evidence) from raw phrase/tag occurrence counts, and the knowledge base
is restricted to the two evidence-based classes before retrieval.  Gold
labels present in the corpus override model predictions, which supports
scoring the classifier against expert labels and building clean fixtures.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from clinicalqa.classifiers import (
    LabeledDataset,
    LineReader,
    ModelFormatError,
    emit_model,
    make_classifier,
    read_model,
)
from clinicalqa.conceptmap import Lexicon, map_document
from clinicalqa.corpus import AbstractDoc, DocClass
from clinicalqa.index import IndexBundle

FEATURE_SETS = ("phrases", "tags", "phrases+tags")

FORMAT_MAGIC = "qadocmodel"
FORMAT_VERSION = 1

# taxonomy order; classifier tie-breaks resolve to the earliest class here
CLASS_ORDER = (DocClass.NON_EVIDENCE, DocClass.INTERVENTION, DocClass.NON_INTERVENTION)


def feature_terms(bundle: IndexBundle, feature_set: str) -> tuple[list[str], list[str]]:
    """(phrase_terms, tag_terms) vocabulary blocks for a feature set; either
    block may be empty depending on the selection."""
    if feature_set == "phrases":
        return list(bundle.phrase_tf.terms), []
    if feature_set == "tags":
        return [], list(bundle.tag_tf.terms)
    if feature_set == "phrases+tags":
        return list(bundle.phrase_tf.terms), list(bundle.tag_tf.terms)
    raise ValueError(f"unknown feature set {feature_set!r}; choose from {FEATURE_SETS}")


def _project(counts: dict[str, int], terms: list[str]) -> np.ndarray:
    vec = np.zeros(len(terms))
    for j, term in enumerate(terms):
        if term in counts:
            vec[j] = float(counts[term])
    return vec


def doc_features(doc: AbstractDoc, lexicon: Lexicon, phrase_terms: list[str],
                 tag_terms: list[str]) -> np.ndarray:
    """Raw occurrence counts projected onto the fixed vocabulary blocks.

    Terms of the document outside the vocabulary contribute nothing, so the
    vector is independent of corpus order and of other documents.
    """
    mapping = map_document(doc, lexicon)
    parts = []
    if phrase_terms:
        parts.append(_project(dict(mapping.phrases), phrase_terms))
    if tag_terms:
        parts.append(_project(dict(mapping.tags), tag_terms))
    if not parts:
        return np.zeros(0)
    return np.concatenate(parts)


@dataclass
class DocModel:
    """A trained document classifier plus the vocabulary it was fit over."""

    algorithm: str
    feature_set: str
    phrase_terms: list[str]
    tag_terms: list[str]
    classifier: object

    def features(self, doc: AbstractDoc, lexicon: Lexicon) -> np.ndarray:
        return doc_features(doc, lexicon, self.phrase_terms, self.tag_terms)


def train_doc_model(docs: list[AbstractDoc], lexicon: Lexicon, bundle: IndexBundle,
                    algorithm: str = "svm", feature_set: str = "phrases+tags",
                    **hyper) -> DocModel:
    """Fit a 3-class model on the labeled documents of ``docs``.

    Unlabeled documents are skipped.  Classes observed in the labels are
    ordered non_evidence, intervention, non_intervention so tie-breaks are
    stable.
    """
    phrase_terms, tag_terms = feature_terms(bundle, feature_set)
    labeled = [d for d in docs if d.label is not None]
    if not labeled:
        raise ValueError("no labeled documents to train on")
    x = np.vstack([doc_features(d, lexicon, phrase_terms, tag_terms) for d in labeled])
    y = [d.label.value for d in labeled]
    observed = {label for label in y}
    classes = [c.value for c in CLASS_ORDER if c.value in observed]
    dataset = LabeledDataset(x=x, y=y, classes=classes)
    classifier = make_classifier(algorithm, **hyper).fit(dataset)
    return DocModel(algorithm=algorithm, feature_set=feature_set,
                    phrase_terms=phrase_terms, tag_terms=tag_terms,
                    classifier=classifier)


def classify_document(doc: AbstractDoc, model: DocModel, lexicon: Lexicon) -> DocClass:
    vec = model.features(doc, lexicon)
    return DocClass(model.classifier.predict(vec))


@dataclass
class Decision:
    doc_id: str
    predicted: DocClass
    gold: DocClass | None

    @property
    def effective(self) -> DocClass:
        """Gold label when present, else the prediction."""
        return self.gold if self.gold is not None else self.predicted


@dataclass
class EvidenceFilterResult:
    evidence: list[AbstractDoc]
    decisions: list[Decision]
    fallback: bool  # True when no evidence remained and the full corpus is used


def classify_corpus(docs: list[AbstractDoc], model: DocModel, lexicon: Lexicon) -> list[Decision]:
    return [Decision(doc_id=d.doc_id, predicted=classify_document(d, model, lexicon),
                     gold=d.label) for d in docs]


def filter_evidence(docs: list[AbstractDoc], model: DocModel,
                    lexicon: Lexicon) -> EvidenceFilterResult:
    """Keep intervention / non-intervention documents.

    An empty evidence subset falls back to the full corpus with a warning so
    retrieval still has something to search; the result is flagged.
    """
    decisions = classify_corpus(docs, model, lexicon)
    evidence = [doc for doc, decision in zip(docs, decisions)
                if decision.effective.is_evidence]
    if not evidence:
        warnings.warn("no evidence-based documents found; retrieval falls back "
                      "to the full corpus", stacklevel=2)
        return EvidenceFilterResult(evidence=list(docs), decisions=decisions, fallback=True)
    return EvidenceFilterResult(evidence=evidence, decisions=decisions, fallback=False)


def decisions_tsv(decisions: list[Decision]) -> str:
    """`doc_id \\t predicted \\t gold?` rows for the classify-docs verb."""
    lines = []
    for d in decisions:
        gold = d.gold.value if d.gold is not None else ""
        lines.append(f"{d.doc_id}\t{d.predicted.value}\t{gold}")
    return "\n".join(lines) + "\n"


def save_doc_model(model: DocModel, path: str | Path) -> None:
    out = [f"{FORMAT_MAGIC} {FORMAT_VERSION}",
           f"algorithm {model.algorithm}",
           f"feature_set {model.feature_set}",
           f"phrase_terms {len(model.phrase_terms)}"]
    out.extend(json.dumps(t) for t in model.phrase_terms)
    out.append(f"tag_terms {len(model.tag_terms)}")
    out.extend(json.dumps(t) for t in model.tag_terms)
    out.extend(emit_model(model.classifier))
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")


def load_doc_model(path: str | Path) -> DocModel:
    reader = LineReader(Path(path).read_text(encoding="utf-8").splitlines())
    header = reader.next().split(" ")
    if header[0] != FORMAT_MAGIC:
        raise ModelFormatError(f"not a document model file: header {header!r}")
    if int(header[1]) != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported document model version {header[1]}")
    algorithm = reader.scalar("algorithm")
    feature_set = reader.scalar("feature_set")
    phrase_terms = [json.loads(reader.next()) for _ in range(int(reader.scalar("phrase_terms")))]
    tag_terms = [json.loads(reader.next()) for _ in range(int(reader.scalar("tag_terms")))]
    classifier = read_model(reader)
    return DocModel(algorithm=algorithm, feature_set=feature_set,
                    phrase_terms=phrase_terms, tag_terms=tag_terms, classifier=classifier)
