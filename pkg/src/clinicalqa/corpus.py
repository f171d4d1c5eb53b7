"""Abstract collections: parsing, sentence segmentation, word counts.

The corpus file format is JSON lines, one record per abstract:

    {"id": str, "title": str, "abstract": str, "label": str?}

``label``, when present, is one of ``non_evidence`` / ``intervention`` /
``non_intervention`` and is treated as gold truth downstream.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from pathlib import Path

from clinicalqa import textproc


class DocClass(enum.Enum):
    """Evidence taxonomy: the two evidence-based classes and everything else."""

    NON_EVIDENCE = "non_evidence"
    INTERVENTION = "intervention"
    NON_INTERVENTION = "non_intervention"

    @property
    def is_evidence(self) -> bool:
        return self is not DocClass.NON_EVIDENCE


class CorpusError(ValueError):
    """Raised for malformed corpus files (missing fields, duplicate ids)."""


@dataclass(frozen=True)
class Sentence:
    index: int
    text: str
    tokens: tuple[str, ...]
    word_offset: int  # stemmed tokens preceding this sentence within the body


@dataclass(frozen=True)
class AbstractDoc:
    doc_id: str
    title: str
    body: str
    sentences: tuple[Sentence, ...] = field(repr=False)
    label: DocClass | None = None

    @property
    def title_tokens(self) -> tuple[str, ...]:
        return tuple(textproc.tokenize_and_stem(self.title))

    @property
    def body_word_count(self) -> int:
        return sum(len(s.tokens) for s in self.sentences)

    @property
    def word_count(self) -> int:
        """Tokens in title + body; the unit of the reading-effort metric."""
        return len(self.title_tokens) + self.body_word_count


def make_doc(doc_id: str, title: str, body: str, label: DocClass | None = None) -> AbstractDoc:
    sentences = []
    offset = 0
    for i, text in enumerate(textproc.segment_sentences(body)):
        tokens = tuple(textproc.tokenize_and_stem(text))
        sentences.append(Sentence(index=i, text=text, tokens=tokens, word_offset=offset))
        offset += len(tokens)
    return AbstractDoc(doc_id=doc_id, title=title, body=body,
                       sentences=tuple(sentences), label=label)


def _parse_label(raw, record_name: str) -> DocClass | None:
    if raw is None:
        return None
    try:
        return DocClass(raw)
    except ValueError:
        raise CorpusError(f"record {record_name}: unknown label {raw!r}") from None


def parse_corpus(path: str | Path) -> list[AbstractDoc]:
    """Load a JSON-lines corpus file, order preserved.

    Raises :class:`CorpusError` naming the offending record on duplicate ids
    or records missing ``id``/``abstract``.
    """
    path = Path(path)
    docs: list[AbstractDoc] = []
    seen: set[str] = set()
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {lineno}: invalid JSON ({exc})") from None
            name = record.get("id") or f"line {lineno}"
            doc_id = record.get("id")
            if not doc_id:
                raise CorpusError(f"record at line {lineno}: missing id")
            if "abstract" not in record:
                raise CorpusError(f"record {name}: missing abstract")
            if doc_id in seen:
                raise CorpusError(f"record {name}: duplicate doc_id")
            seen.add(doc_id)
            docs.append(make_doc(
                doc_id=doc_id,
                title=record.get("title", ""),
                body=record["abstract"],
                label=_parse_label(record.get("label"), name),
            ))
    return docs


def serialize_corpus(docs: list[AbstractDoc], path: str | Path) -> None:
    """Inverse of :func:`parse_corpus` on the data model."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for doc in docs:
            record = {"id": doc.doc_id, "title": doc.title, "abstract": doc.body}
            if doc.label is not None:
                record["label"] = doc.label.value
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
