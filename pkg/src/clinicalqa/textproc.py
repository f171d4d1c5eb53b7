"""Tokenization, rule-based stemming, and sentence segmentation.

All text entering the system — documents, lexicon surface forms, and
questions — goes through the same :func:`tokenize_and_stem` so that token
sequences are comparable everywhere.  The stemmer is a deterministic suffix
stripper driven by a rule table bundled with the package; no statistical
stemming is involved, so rebuilding an index always reproduces it.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

_TOKEN_RE = re.compile(r"[a-z0-9]+(?:-[a-z0-9]+)*")

# Sentence boundary: terminal punctuation, whitespace, then an uppercase
# letter or digit.  Candidate boundaries ending an abbreviation are skipped.
_BOUNDARY_RE = re.compile(r"[.!?]+(?=\s+[A-Z0-9])")


def _data_text(name: str) -> str:
    return resources.files("clinicalqa.data").joinpath(name).read_text("utf-8")


def _data_lines(name: str) -> list[str]:
    lines = []
    for raw in _data_text(name).splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    return lines


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    return frozenset(_data_lines("stopwords.txt"))


@lru_cache(maxsize=1)
def _abbreviations() -> frozenset[str]:
    # stored with the trailing period; compared lowercased
    return frozenset(a.lower() for a in _data_lines("abbreviations.txt"))


class StemRule:
    __slots__ = ("suffix", "replacement", "min_remaining", "terminal")

    def __init__(self, suffix: str, replacement: str, min_remaining: int):
        self.suffix = suffix
        self.terminal = replacement == "="
        self.replacement = "" if self.terminal else replacement
        self.min_remaining = min_remaining
        if not self.terminal and len(self.replacement) >= len(suffix):
            raise ValueError(
                f"rule {suffix!r}->{replacement!r} does not shorten the token"
            )


@lru_cache(maxsize=1)
def stem_rules() -> tuple[StemRule, ...]:
    rules = []
    for line in _data_text("stem_rules.tsv").splitlines():
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"malformed stem rule line: {line!r}")
        suffix, replacement, min_remaining = parts
        rules.append(StemRule(suffix, replacement, int(min_remaining)))
    return tuple(rules)


def stem(token: str) -> str:
    """Strip suffixes until no rule fires.

    Rules are tried in file order each pass; the first applicable rule wins.
    Terminal guard rules ("=") stop stemming outright, every other rule
    strictly shortens the token, so the loop always terminates and the result
    is a fixpoint (stemming is idempotent).
    """
    rules = stem_rules()
    while True:
        for rule in rules:
            if not token.endswith(rule.suffix):
                continue
            if len(token) - len(rule.suffix) < rule.min_remaining:
                continue
            if rule.terminal:
                return token
            token = token[: -len(rule.suffix)] + rule.replacement
            break
        else:
            return token


def tokenize(text: str) -> list[str]:
    """Lowercase and split on anything that is not a letter, digit, or
    intra-word hyphen, so terms like "K-ras" survive as one token."""
    return _TOKEN_RE.findall(text.lower())


def tokenize_and_stem(text: str) -> list[str]:
    """Shared preprocessing: lowercase, drop stopwords, stem.

    Stems that land back on the stopword list are dropped too, which keeps
    the function idempotent on its own output.
    """
    stops = stopwords()
    out = []
    for token in tokenize(text):
        if token in stops:
            continue
        stemmed = stem(token)
        if stemmed and stemmed not in stops:
            out.append(stemmed)
    return out


def segment_sentences(body: str) -> list[str]:
    """Split text into sentences at {. ! ?} + whitespace + uppercase/digit.

    A bundled abbreviation list ("e.g.", "vs.", ...) suppresses boundaries.
    Returns the raw sentence strings in order; concatenating them recovers
    the body modulo surrounding whitespace.
    """
    abbrevs = _abbreviations()
    pieces: list[str] = []
    start = 0
    for match in _BOUNDARY_RE.finditer(body):
        end = match.end()
        # word immediately before (and including) the punctuation
        prefix = body[start:end]
        last_word = prefix.rsplit(None, 1)[-1] if prefix.split() else prefix
        if last_word.lower().lstrip("(").rstrip(")") in abbrevs:
            continue
        pieces.append(body[start:end].strip())
        start = end
    tail = body[start:].strip()
    if tail:
        pieces.append(tail)
    return [p for p in pieces if p]
