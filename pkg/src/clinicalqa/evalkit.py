"""Evaluation measures: user effort, reciprocal rank, recall vs effort.

User effort counts how much a reader must read before reaching the correct
answer: the full word counts of every abstract ranked above the gold one,
plus the words of the gold abstract itself up to and including the answer
sentence.  Word counts are in content tokens (title included), the same
units the corpus module exposes.  Reciprocal rank is 1/rank with 0 for
questions whose gold abstract never shows up, and the recall-vs-effort curve
reports the fraction of questions answered within each effort budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from clinicalqa.corpus import AbstractDoc
from clinicalqa.ranking import RankedAnswer

# effort value for questions whose gold abstract is not in the ranked list
NOT_FOUND = None

DEFAULT_CUTOFFS = (25, 50, 75, 100, 150, 200, 300, 500, 750, 1000)


class GoldFileError(ValueError):
    """Raised for malformed or unresolvable gold answer files."""


@dataclass(frozen=True)
class GoldAnswer:
    question_id: str
    question_text: str
    doc_id: str
    sentence_index: int


def parse_gold(path: str | Path) -> list[GoldAnswer]:
    """Read the gold TSV: `question_id \\t question_text \\t doc_id \\t sentence_index`."""
    answers: list[GoldAnswer] = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4:
                raise GoldFileError(
                    f"line {lineno}: expected 4 tab-separated fields, got {len(parts)}")
            qid, text, doc_id, sentence_s = (p.strip() for p in parts)
            try:
                sentence_index = int(sentence_s)
            except ValueError:
                raise GoldFileError(f"line {lineno}: sentence_index must be an integer") from None
            if sentence_index < 0:
                raise GoldFileError(f"line {lineno}: sentence_index must be >= 0")
            answers.append(GoldAnswer(question_id=qid, question_text=text,
                                      doc_id=doc_id, sentence_index=sentence_index))
    return answers


def check_gold(answers: list[GoldAnswer], docs_by_id: dict[str, AbstractDoc]) -> None:
    """Verify every gold reference resolves inside the corpus."""
    for gold in answers:
        doc = docs_by_id.get(gold.doc_id)
        if doc is None:
            raise GoldFileError(f"question {gold.question_id}: unknown doc {gold.doc_id!r}")
        if gold.sentence_index >= len(doc.sentences):
            raise GoldFileError(
                f"question {gold.question_id}: sentence {gold.sentence_index} out of range "
                f"for doc {gold.doc_id} ({len(doc.sentences)} sentences)")


def find_rank(ranked: RankedAnswer, gold_doc_id: str) -> int | None:
    """1-based rank of the gold abstract, or None when absent."""
    for position, abstract in enumerate(ranked.abstracts, start=1):
        if abstract.doc_id == gold_doc_id:
            return position
    return None


def words_to_sentence(doc: AbstractDoc, sentence_index: int) -> int:
    """Tokens read from the top of the abstract (title first) through the end
    of the given sentence."""
    if sentence_index >= len(doc.sentences):
        raise GoldFileError(
            f"sentence {sentence_index} out of range for doc {doc.doc_id} "
            f"({len(doc.sentences)} sentences)")
    sentence = doc.sentences[sentence_index]
    return len(doc.title_tokens) + sentence.word_offset + len(sentence.tokens)


def user_effort(ranked: RankedAnswer, gold: GoldAnswer,
                docs_by_id: dict[str, AbstractDoc]) -> int | None:
    """Words read before finishing the answer sentence, or NOT_FOUND."""
    rank = find_rank(ranked, gold.doc_id)
    if rank is None:
        return NOT_FOUND
    effort = 0
    for abstract in ranked.abstracts[: rank - 1]:
        doc = docs_by_id.get(abstract.doc_id)
        if doc is None:
            raise GoldFileError(f"ranked doc {abstract.doc_id!r} not in the corpus")
        effort += doc.word_count
    gold_doc = docs_by_id.get(gold.doc_id)
    if gold_doc is None:
        raise GoldFileError(f"gold doc {gold.doc_id!r} not in the corpus")
    return effort + words_to_sentence(gold_doc, gold.sentence_index)


def reciprocal_rank(rank: int | None) -> float:
    if rank is None:
        return 0.0
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    return 1.0 / rank


def mrr(ranks: list[int | None]) -> float:
    """Mean reciprocal rank over the question set; unanswered count as 0."""
    if not ranks:
        raise ValueError("cannot average an empty rank list")
    return sum(reciprocal_rank(r) for r in ranks) / len(ranks)


def recall_effort_curve(efforts: list[int | None],
                        cutoffs: tuple[int, ...] = DEFAULT_CUTOFFS) -> list[tuple[int, float]]:
    """(cutoff, recall) points; recall(E) = fraction of questions with
    effort <= E.  NOT_FOUND efforts never count, so the curve is bounded by
    the answered fraction."""
    if not efforts:
        return [(cutoff, 0.0) for cutoff in sorted(cutoffs)]
    n = len(efforts)
    points = []
    for cutoff in sorted(cutoffs):
        hits = sum(1 for e in efforts if e is not NOT_FOUND and e <= cutoff)
        points.append((cutoff, hits / n))
    return points


@dataclass
class EvalRow:
    question_id: str
    question_text: str
    rank: int | None
    rr: float
    effort: int | None


@dataclass
class EvalReport:
    rows: list[EvalRow]
    mrr: float
    answered_fraction: float
    curve: list[tuple[int, float]]


def build_report(rows: list[EvalRow],
                 cutoffs: tuple[int, ...] = DEFAULT_CUTOFFS) -> EvalReport:
    if not rows:
        raise ValueError("cannot build a report from zero evaluated questions")
    ranks = [row.rank for row in rows]
    efforts = [row.effort for row in rows]
    answered = sum(1 for r in ranks if r is not None) / len(rows)
    return EvalReport(rows=rows, mrr=mrr(ranks), answered_fraction=answered,
                      curve=recall_effort_curve(efforts, cutoffs))


def report_text(report: EvalReport) -> str:
    """Human-readable report with per-question rows and aggregates."""
    lines = ["question_id\trank\trr\teffort\tquestion"]
    for row in report.rows:
        rank_s = str(row.rank) if row.rank is not None else "-"
        effort_s = str(row.effort) if row.effort is not None else "-"
        lines.append(f"{row.question_id}\t{rank_s}\t{row.rr:.5f}\t{effort_s}\t{row.question_text}")
    lines.append("")
    lines.append(f"questions\t{len(report.rows)}")
    lines.append(f"answered_fraction\t{report.answered_fraction:.5f}")
    lines.append(f"mrr\t{report.mrr:.5f}")
    lines.append("")
    lines.append("effort_cutoff\trecall")
    for cutoff, recall in report.curve:
        lines.append(f"{cutoff}\t{recall:.5f}")
    return "\n".join(lines) + "\n"
