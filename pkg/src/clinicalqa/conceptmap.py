"""Lexicon-based concept mapping: free text to medical phrases + semantic tags.

Stands in for a full terminology mapper with the same output contract: each
text span that matches a lexicon surface form contributes one canonical
phrase and that phrase's semantic tag.  Matching is greedy longest-match from
the left within each sentence, over stemmed tokens, with no overlaps — a
deterministic substitute for candidate scoring.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from clinicalqa import textproc
from clinicalqa.corpus import AbstractDoc

# spans in the title are recorded under this pseudo sentence index
TITLE_SEGMENT = -1


class LexiconError(ValueError):
    """Raised for malformed lexicon files."""


@lru_cache(maxsize=1)
def tag_vocabulary() -> tuple[str, ...]:
    """The closed set of semantic tag names shipped with the package."""
    text = resources.files("clinicalqa.data").joinpath("semantic_tags.txt").read_text("utf-8")
    return tuple(line.strip() for line in text.splitlines()
                 if line.strip() and not line.startswith("#"))


@dataclass(frozen=True)
class LexiconEntry:
    surface: tuple[str, ...]  # stemmed token sequence
    canonical: str
    tag: str


@dataclass(frozen=True)
class Span:
    sentence: int  # Sentence.index for body text, TITLE_SEGMENT for the title
    start: int     # token range within the sentence's stemmed token list
    end: int
    phrase: str


@dataclass
class ConceptMapping:
    phrases: Counter = field(default_factory=Counter)
    tags: Counter = field(default_factory=Counter)
    spans: list[Span] = field(default_factory=list)

    def merge(self, other: "ConceptMapping") -> None:
        self.phrases.update(other.phrases)
        self.tags.update(other.tags)
        self.spans.extend(other.spans)

    def __bool__(self) -> bool:
        return bool(self.phrases)


class Lexicon:
    """Surface-form table indexed for longest-match lookup."""

    def __init__(self, entries: list[LexiconEntry]):
        self.entries = entries
        self._by_surface: dict[tuple[str, ...], LexiconEntry] = {}
        for entry in entries:
            if entry.surface in self._by_surface:
                raise LexiconError(f"duplicate surface form {' '.join(entry.surface)!r}")
            self._by_surface[entry.surface] = entry
        self.max_len = max((len(e.surface) for e in entries), default=0)
        self.phrase_tag: dict[str, str] = {e.canonical: e.tag for e in entries}

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, tokens: tuple[str, ...]) -> LexiconEntry | None:
        return self._by_surface.get(tokens)


def load_lexicon(path: str | Path) -> Lexicon:
    """Read a tab-separated lexicon file.

    Columns: surface_form, canonical_phrase, semantic_tag.  ``#`` lines are
    comments.  Surface forms are stemmed on load so they match document
    tokens; duplicates (after stemming) and unknown tags are rejected with
    the offending line number.
    """
    path = Path(path)
    known_tags = {t.casefold(): t for t in tag_vocabulary()}
    entries: list[LexiconEntry] = []
    surfaces: dict[tuple[str, ...], int] = {}
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise LexiconError(f"line {lineno}: expected 3 tab-separated fields, got {len(parts)}")
            surface_text, canonical, tag = (p.strip() for p in parts)
            tokens = tuple(textproc.tokenize_and_stem(surface_text))
            if not tokens:
                raise LexiconError(f"line {lineno}: surface form reduces to no tokens")
            if tag.casefold() not in known_tags:
                raise LexiconError(f"line {lineno}: unknown semantic tag {tag!r}")
            if tokens in surfaces:
                raise LexiconError(
                    f"line {lineno}: duplicate surface form (first seen at line {surfaces[tokens]})")
            surfaces[tokens] = lineno
            entries.append(LexiconEntry(surface=tokens, canonical=canonical,
                                        tag=known_tags[tag.casefold()]))
    return Lexicon(entries)


def _map_tokens(tokens: tuple[str, ...], sentence_index: int, lexicon: Lexicon,
                mapping: ConceptMapping) -> None:
    pos = 0
    n = len(tokens)
    while pos < n:
        hit = None
        for length in range(min(lexicon.max_len, n - pos), 0, -1):
            entry = lexicon.lookup(tokens[pos:pos + length])
            if entry is not None:
                hit = (length, entry)
                break
        if hit is None:
            pos += 1
            continue
        length, entry = hit
        mapping.phrases[entry.canonical] += 1
        mapping.tags[entry.tag] += 1
        mapping.spans.append(Span(sentence=sentence_index, start=pos,
                                  end=pos + length, phrase=entry.canonical))
        pos += length


def map_text(text: str, lexicon: Lexicon) -> ConceptMapping:
    """Map free text (a question, or any prose) against the lexicon.

    The text is segmented into sentences and each sentence scanned greedily
    left to right; matched spans never overlap.
    """
    mapping = ConceptMapping()
    for i, sentence in enumerate(textproc.segment_sentences(text)):
        tokens = tuple(textproc.tokenize_and_stem(sentence))
        _map_tokens(tokens, i, lexicon, mapping)
    return mapping


def map_sentence_tokens(tokens: tuple[str, ...], lexicon: Lexicon,
                        sentence_index: int = 0) -> ConceptMapping:
    """Map one pre-tokenized sentence (used for per-sentence answer scoring)."""
    mapping = ConceptMapping()
    _map_tokens(tokens, sentence_index, lexicon, mapping)
    return mapping


def map_document(doc: AbstractDoc, lexicon: Lexicon) -> ConceptMapping:
    """Map an abstract: title (as segment ``TITLE_SEGMENT``) plus each body
    sentence under its own index, so answer scoring can address sentences."""
    mapping = ConceptMapping()
    _map_tokens(doc.title_tokens, TITLE_SEGMENT, lexicon, mapping)
    for sentence in doc.sentences:
        _map_tokens(sentence.tokens, lexicon=lexicon, sentence_index=sentence.index,
                    mapping=mapping)
    return mapping
