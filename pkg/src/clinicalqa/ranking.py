"""Focus-driven answer ranking.

Each candidate abstract is scored sentence by sentence: a sentence gets flag
1 when it contains at least one phrase whose semantic tag belongs to the
question's focus, and its line score is that flag times the fraction of the
question's distinct phrases it contains.  An abstract's score is the sum of
its line scores.  Ordering: abstract score descending, then best single
line score descending, then doc_id ascending; the sentences achieving an
abstract's best (positive) line score are the ones highlighted for the
reader.  Scores stay as fractions in [0, 1] internally; percentage rendering
belongs to UIs and reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from clinicalqa.conceptmap import ConceptMapping, Lexicon, map_sentence_tokens
from clinicalqa.corpus import AbstractDoc
from clinicalqa.retrieval import CandidateSet


def sentence_flag(sentence_mapping: ConceptMapping, focus_tags: frozenset[str] | set[str]) -> int:
    """1 iff the sentence contains a phrase tagged with a focus tag."""
    focus = {t.casefold() for t in focus_tags}
    return int(any(tag.casefold() in focus for tag in sentence_mapping.tags))


def line_score(sentence_mapping: ConceptMapping, question_phrases: set[str],
               flag: int) -> float:
    """flag times the fraction of distinct question phrases in the sentence.

    A question with no recognized phrases has no overlap to measure; the
    score is pinned to 0.
    """
    if flag == 0 or not question_phrases:
        return 0.0
    present = sum(1 for p in question_phrases if p in sentence_mapping.phrases)
    return present / len(question_phrases)


@dataclass(frozen=True)
class SentenceScore:
    index: int
    text: str
    flag: int
    line_score: float
    highlighted: bool = False


@dataclass
class ScoredAbstract:
    doc_id: str
    title: str
    abstract_score: float
    max_line_score: float
    sentences: list[SentenceScore]
    combined_score: float = 0.0  # retrieval score, carried along for reports

    def to_payload(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "title": self.title,
            "abstract_score": self.abstract_score,
            "max_line_score": self.max_line_score,
            "combined_score": self.combined_score,
            "sentences": [
                {"index": s.index, "text": s.text, "line_score": s.line_score,
                 "highlighted": s.highlighted}
                for s in self.sentences
            ],
        }


@dataclass
class RankedAnswer:
    abstracts: list[ScoredAbstract] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.abstracts)

    def doc_ids(self) -> list[str]:
        return [a.doc_id for a in self.abstracts]

    def to_payload(self) -> list[dict]:
        return [a.to_payload() for a in self.abstracts]


def score_abstract(doc: AbstractDoc, question_phrases: set[str],
                   focus_tags: frozenset[str] | set[str], lexicon: Lexicon) -> ScoredAbstract:
    """Per-sentence flags and line scores for one abstract."""
    scored: list[SentenceScore] = []
    for sentence in doc.sentences:
        mapping = map_sentence_tokens(sentence.tokens, lexicon, sentence.index)
        flag = sentence_flag(mapping, focus_tags)
        scored.append(SentenceScore(index=sentence.index, text=sentence.text, flag=flag,
                                    line_score=line_score(mapping, question_phrases, flag)))
    total = sum(s.line_score for s in scored)
    best = max((s.line_score for s in scored), default=0.0)
    if best > 0:
        scored = [
            SentenceScore(index=s.index, text=s.text, flag=s.flag,
                          line_score=s.line_score, highlighted=s.line_score == best)
            for s in scored
        ]
    return ScoredAbstract(doc_id=doc.doc_id, title=doc.title, abstract_score=total,
                          max_line_score=best, sentences=scored)


def rank_candidates(candidates: CandidateSet, question_mapping: ConceptMapping,
                    focus_tags: frozenset[str] | set[str], docs_by_id: dict[str, AbstractDoc],
                    lexicon: Lexicon) -> RankedAnswer:
    """Order the candidate abstracts for presentation.

    Every highlighted sentence carries flag 1 (a positive line score requires
    the flag), and the ordering is fully deterministic.
    """
    question_phrases = set(question_mapping.phrases)
    scored: list[ScoredAbstract] = []
    for candidate in candidates.candidates:
        doc = docs_by_id.get(candidate.doc_id)
        if doc is None:
            raise KeyError(f"candidate doc {candidate.doc_id!r} not in the corpus")
        entry = score_abstract(doc, question_phrases, focus_tags, lexicon)
        entry.combined_score = candidate.combined_score
        scored.append(entry)
    scored.sort(key=lambda a: (-a.abstract_score, -a.max_line_score, a.doc_id))
    return RankedAnswer(abstracts=scored)
