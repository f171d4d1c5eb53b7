"""Two-stage question handling: the answerable gate and the focus classes.

Questions become binary feature vectors over a vocabulary collected from the
training questions (presence/absence of each medical phrase and semantic
tag).  Stage one decides whether the question is answerable at all; stage
two assigns one of four focus classes, each tied to the semantic tags an
answer sentence should contain:

    1  What is the drug choice for condition X?      clinical drug, Pharmacologic substance
    2  What is the dosage of drug X?                 Laboratory or Test results, Sign or symptom
    3  How should I treat or manage condition X?     Therapeutic or preventive procedure; Diagnostic procedure
    4  Can drug X cause (adverse) finding Y?         Qualitative Concept
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from clinicalqa import conceptmap
from clinicalqa.classifiers import (
    LabeledDataset,
    LineReader,
    ModelFormatError,
    SvmBinary,
    emit_model,
    make_classifier,
    read_model,
)
from clinicalqa.conceptmap import ConceptMapping, Lexicon, tag_vocabulary

FEATURE_SETS = ("phrases", "tags", "phrases+tags")

FORMAT_MAGIC = "qaqmodel"
FORMAT_VERSION = 1


@dataclass(frozen=True)
class FocusClass:
    class_number: int
    question_form: str
    focus_tags: frozenset[str]

    def canonical_tags(self) -> frozenset[str]:
        """Focus tags resolved to the bundled tag vocabulary's spelling."""
        canon = {t.casefold(): t for t in tag_vocabulary()}
        return frozenset(canon.get(t.casefold(), t) for t in self.focus_tags)


FOCUS_CLASSES: dict[int, FocusClass] = {
    1: FocusClass(1, "What is the drug choice for condition X?",
                  frozenset({"clinical drug", "Pharmacologic substance"})),
    2: FocusClass(2, "What is the dosage of drug X?",
                  frozenset({"Laboratory or Test results", "Sign or symptom"})),
    3: FocusClass(3, "How should I treat or manage condition X?",
                  frozenset({"Therapeutic or preventive procedure", "Diagnostic procedure"})),
    4: FocusClass(4, "Can drug X cause (adverse) finding Y?",
                  frozenset({"Qualitative Concept"})),
}


def focus_tags_for(class_number: int) -> frozenset[str]:
    if class_number not in FOCUS_CLASSES:
        raise ValueError(f"focus class must be 1..4, got {class_number}")
    return FOCUS_CLASSES[class_number].focus_tags


class QuestionFileError(ValueError):
    """Raised for malformed question training files."""


@dataclass(frozen=True)
class TrainingQuestion:
    text: str
    answerable: bool
    focus_class: int | None  # 1..4 for answerable questions, else None


def parse_questions(path: str | Path) -> list[TrainingQuestion]:
    """Read the TSV training file: `question_text \\t answerable \\t class`.

    ``answerable`` is 0/1; ``class`` is 1..4 or ``-`` for unanswerable rows.
    ``#`` lines are comments.
    """
    questions: list[TrainingQuestion] = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise QuestionFileError(
                    f"line {lineno}: expected 3 tab-separated fields, got {len(parts)}")
            text, answerable_s, class_s = (p.strip() for p in parts)
            if answerable_s not in ("0", "1"):
                raise QuestionFileError(f"line {lineno}: answerable must be 0 or 1")
            answerable = answerable_s == "1"
            if class_s == "-":
                focus_class = None
            else:
                try:
                    focus_class = int(class_s)
                except ValueError:
                    raise QuestionFileError(f"line {lineno}: class must be 1..4 or '-'") from None
                if focus_class not in FOCUS_CLASSES:
                    raise QuestionFileError(f"line {lineno}: class must be 1..4 or '-'")
            if answerable and focus_class is None:
                raise QuestionFileError(f"line {lineno}: answerable question needs a class")
            questions.append(TrainingQuestion(text=text, answerable=answerable,
                                              focus_class=focus_class))
    return questions


@dataclass
class QuestionVocabulary:
    """Ordered phrase and tag blocks the binary features are laid out over."""

    phrases: list[str] = field(default_factory=list)
    tags: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.phrases) + len(self.tags)


def build_question_vocabulary(texts: list[str], lexicon: Lexicon,
                              feature_set: str = "phrases+tags") -> QuestionVocabulary:
    if feature_set not in FEATURE_SETS:
        raise ValueError(f"unknown feature set {feature_set!r}; choose from {FEATURE_SETS}")
    phrases: set[str] = set()
    tags: set[str] = set()
    for text in texts:
        mapping = conceptmap.map_text(text, lexicon)
        phrases.update(mapping.phrases)
        tags.update(mapping.tags)
    return QuestionVocabulary(
        phrases=sorted(phrases) if "phrases" in feature_set else [],
        tags=sorted(tags) if "tags" in feature_set else [],
    )


def features_from_mapping(mapping: ConceptMapping, vocab: QuestionVocabulary) -> np.ndarray:
    """Presence/absence bits; a phrase occurring twice still contributes 1."""
    vec = np.zeros(vocab.size)
    for j, phrase in enumerate(vocab.phrases):
        if phrase in mapping.phrases:
            vec[j] = 1.0
    offset = len(vocab.phrases)
    for j, tag in enumerate(vocab.tags):
        if tag in mapping.tags:
            vec[offset + j] = 1.0
    return vec


def question_features(text: str, lexicon: Lexicon, vocab: QuestionVocabulary) -> np.ndarray:
    return features_from_mapping(conceptmap.map_text(text, lexicon), vocab)


@dataclass
class QuestionModel:
    """A trained stage model (gate or focus) plus its feature vocabulary."""

    stage: str  # "gate" or "focus"
    algorithm: str
    feature_set: str
    vocabulary: QuestionVocabulary
    classifier: object

    def features(self, text: str, lexicon: Lexicon) -> np.ndarray:
        return question_features(text, lexicon, self.vocabulary)


def train_gate(questions: list[TrainingQuestion], lexicon: Lexicon,
               algorithm: str = "svm", feature_set: str = "phrases+tags",
               **hyper) -> QuestionModel:
    """Fit the answerable/unanswerable gate on all training questions.

    With the default SVM the gate is a single binary machine whose decision
    value is the answerability score; other algorithms report +/-1.
    """
    if not any(q.answerable for q in questions) or not any(not q.answerable for q in questions):
        raise ValueError("gate training needs both answerable and unanswerable questions")
    vocab = build_question_vocabulary([q.text for q in questions], lexicon, feature_set)
    x = np.vstack([question_features(q.text, lexicon, vocab) for q in questions])
    y = [int(q.answerable) for q in questions]
    dataset = LabeledDataset(x=x, y=y, classes=[0, 1])
    if algorithm == "svm":
        classifier = SvmBinary(**hyper).fit(dataset)
    else:
        classifier = make_classifier(algorithm, **hyper).fit(dataset)
    return QuestionModel(stage="gate", algorithm=algorithm, feature_set=feature_set,
                         vocabulary=vocab, classifier=classifier)


def train_focus(questions: list[TrainingQuestion], lexicon: Lexicon,
                algorithm: str = "svm", feature_set: str = "phrases+tags",
                **hyper) -> QuestionModel:
    """Fit the 4-class focus model on the answerable training questions."""
    answerable = [q for q in questions if q.answerable]
    if not answerable:
        raise ValueError("focus training needs answerable questions")
    vocab = build_question_vocabulary([q.text for q in answerable], lexicon, feature_set)
    x = np.vstack([question_features(q.text, lexicon, vocab) for q in answerable])
    y = [q.focus_class for q in answerable]
    classes = [c for c in (1, 2, 3, 4) if c in set(y)]
    dataset = LabeledDataset(x=x, y=y, classes=classes)
    classifier = make_classifier(algorithm, **hyper).fit(dataset)
    return QuestionModel(stage="focus", algorithm=algorithm, feature_set=feature_set,
                         vocabulary=vocab, classifier=classifier)


def is_answerable(text: str, gate: QuestionModel, lexicon: Lexicon) -> tuple[bool, float]:
    """(answerable, score).  A question mapping to no features at all is
    unanswerable by convention: nothing medical was recognized, so the
    pipeline has nothing to retrieve with."""
    if gate.stage != "gate":
        raise ValueError(f"expected a gate model, got stage {gate.stage!r}")
    vec = gate.features(text, lexicon)
    if not np.any(vec):
        return False, 0.0
    if isinstance(gate.classifier, SvmBinary):
        score = gate.classifier.decision(vec)
        return score > 0, float(score)
    predicted = gate.classifier.predict(vec)
    return predicted == 1, 1.0 if predicted == 1 else -1.0


def classify_focus(text: str, focus: QuestionModel, lexicon: Lexicon) -> FocusClass:
    if focus.stage != "focus":
        raise ValueError(f"expected a focus model, got stage {focus.stage!r}")
    vec = focus.features(text, lexicon)
    return FOCUS_CLASSES[int(focus.classifier.predict(vec))]


def save_question_model(model: QuestionModel, path: str | Path) -> None:
    out = [f"{FORMAT_MAGIC} {FORMAT_VERSION}",
           f"stage {model.stage}",
           f"algorithm {model.algorithm}",
           f"feature_set {model.feature_set}",
           f"phrases {len(model.vocabulary.phrases)}"]
    out.extend(json.dumps(p) for p in model.vocabulary.phrases)
    out.append(f"tags {len(model.vocabulary.tags)}")
    out.extend(json.dumps(t) for t in model.vocabulary.tags)
    out.extend(emit_model(model.classifier))
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")


def load_question_model(path: str | Path) -> QuestionModel:
    reader = LineReader(Path(path).read_text(encoding="utf-8").splitlines())
    header = reader.next().split(" ")
    if header[0] != FORMAT_MAGIC:
        raise ModelFormatError(f"not a question model file: header {header!r}")
    if int(header[1]) != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported question model version {header[1]}")
    stage = reader.scalar("stage")
    algorithm = reader.scalar("algorithm")
    feature_set = reader.scalar("feature_set")
    phrases = [json.loads(reader.next()) for _ in range(int(reader.scalar("phrases")))]
    tags = [json.loads(reader.next()) for _ in range(int(reader.scalar("tags")))]
    classifier = read_model(reader)
    return QuestionModel(stage=stage, algorithm=algorithm, feature_set=feature_set,
                         vocabulary=QuestionVocabulary(phrases=phrases, tags=tags),
                         classifier=classifier)
