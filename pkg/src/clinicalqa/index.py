"""Documents-by-terms matrices under TF / TF-IDF / normalized weighting.

Three vocabularies are indexed: medical phrases, semantic tags, and their
concatenation.  The normalized scheme divides each document's TF*IDF weights
by the row's Euclidean length, which removes the document-length advantage:
a document with every term count multiplied by a constant gets an identical
normalized row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from clinicalqa.conceptmap import ConceptMapping, Lexicon, map_document
from clinicalqa.corpus import AbstractDoc

SCHEMES = ("TF", "TFIDF", "NORMALIZED")

FORMAT_MAGIC = "qaindex"
FORMAT_VERSION = 1


class IndexError_(ValueError):
    """Raised for invalid index construction or a malformed index file."""


def term_frequency(mapping: ConceptMapping, kind: str = "phrases") -> dict[str, int]:
    """Occurrence counts per canonical phrase (``phrases``) or tag (``tags``)."""
    if kind == "phrases":
        return dict(mapping.phrases)
    if kind == "tags":
        return dict(mapping.tags)
    raise ValueError(f"unknown term kind {kind!r}")


def idf(n_docs: int, df: int, base: float = math.e) -> float:
    """log(N/DF); DF outside [1, N] is a domain error."""
    if n_docs < 1:
        raise ValueError(f"document count must be >= 1, got {n_docs}")
    if df < 1 or df > n_docs:
        raise ValueError(f"DF must satisfy 1 <= DF <= N, got DF={df}, N={n_docs}")
    return math.log(n_docs / df) / math.log(base) if base != math.e else math.log(n_docs / df)


def normalize(weights: np.ndarray) -> tuple[np.ndarray, bool]:
    """Scale a weight vector to unit Euclidean length.

    A zero vector is returned unchanged with ``zero_norm=True``.
    """
    weights = np.asarray(weights, dtype=float)
    norm = math.sqrt(float(np.dot(weights, weights)))
    if norm == 0.0:
        return weights.copy(), True
    return weights / norm, False


@dataclass
class WeightedMatrix:
    """Sparse documents-by-terms matrix under one weighting scheme."""

    scheme: str
    doc_ids: list[str]
    terms: list[str]
    rows: list[dict[int, float]]  # row-major sparse: column index -> weight
    df: list[int]
    zero_rows: list[bool] = field(default_factory=list)
    _term_index: dict[str, int] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise IndexError_(f"unknown scheme {self.scheme!r}")
        if not self.zero_rows:
            self.zero_rows = [not row for row in self.rows]

    @property
    def n_docs(self) -> int:
        return len(self.doc_ids)

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def term_index(self, term: str) -> int | None:
        if self._term_index is None:
            self._term_index = {t: i for i, t in enumerate(self.terms)}
        return self._term_index.get(term)

    def row_vector(self, i: int) -> np.ndarray:
        vec = np.zeros(self.n_terms)
        for j, w in self.rows[i].items():
            vec[j] = w
        return vec

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.n_docs, self.n_terms))
        for i, row in enumerate(self.rows):
            for j, w in row.items():
                dense[i, j] = w
        return dense

    def row_norm(self, i: int) -> float:
        return math.sqrt(sum(w * w for w in self.rows[i].values()))


def _tf_matrix(doc_ids: list[str], counts: list[dict[str, int]]) -> WeightedMatrix:
    vocab = sorted({term for c in counts for term in c})
    col = {t: j for j, t in enumerate(vocab)}
    rows = [{col[t]: float(n) for t, n in c.items()} for c in counts]
    df = [0] * len(vocab)
    for row in rows:
        for j in row:
            df[j] += 1
    return WeightedMatrix(scheme="TF", doc_ids=list(doc_ids), terms=vocab, rows=rows, df=df)


def tfidf_from_tf(tf: WeightedMatrix, log_base: float = math.e) -> WeightedMatrix:
    """TF*IDF rows without normalization (the middle weighting scheme)."""
    n = tf.n_docs
    idf_by_col = [idf(n, tf.df[j], base=log_base) for j in range(tf.n_terms)]
    rows = [{j: w * idf_by_col[j] for j, w in sparse.items()} for sparse in tf.rows]
    return WeightedMatrix(scheme="TFIDF", doc_ids=list(tf.doc_ids), terms=list(tf.terms),
                          rows=rows, df=list(tf.df))


def _normalized_from_tf(tf: WeightedMatrix, log_base: float) -> WeightedMatrix:
    weighted = tfidf_from_tf(tf, log_base)
    rows: list[dict[int, float]] = []
    zero_rows: list[bool] = []
    for sparse in weighted.rows:
        norm = math.sqrt(sum(v * v for v in sparse.values()))
        if norm == 0.0:
            rows.append(dict(sparse))
            zero_rows.append(True)
        else:
            rows.append({j: v / norm for j, v in sparse.items()})
            zero_rows.append(False)
    return WeightedMatrix(scheme="NORMALIZED", doc_ids=list(tf.doc_ids), terms=list(tf.terms),
                          rows=rows, df=list(tf.df), zero_rows=zero_rows)


def _concat_tf(phrase_tf: WeightedMatrix, tag_tf: WeightedMatrix) -> WeightedMatrix:
    """Combined matrix: phrase columns followed by tag columns."""
    offset = phrase_tf.n_terms
    rows = []
    for prow, trow in zip(phrase_tf.rows, tag_tf.rows):
        row = dict(prow)
        row.update({offset + j: w for j, w in trow.items()})
        rows.append(row)
    return WeightedMatrix(scheme="TF",
                          doc_ids=list(phrase_tf.doc_ids),
                          terms=list(phrase_tf.terms) + list(tag_tf.terms),
                          rows=rows,
                          df=list(phrase_tf.df) + list(tag_tf.df))


@dataclass
class IndexBundle:
    """The six matrices for one document collection.

    ``phrase`` / ``tag`` / ``combined`` are NORMALIZED; the ``*_tf`` variants
    keep raw counts for classifier features.
    """

    phrase_tf: WeightedMatrix
    tag_tf: WeightedMatrix
    combined_tf: WeightedMatrix
    phrase: WeightedMatrix
    tag: WeightedMatrix
    combined: WeightedMatrix

    MATRIX_NAMES = ("phrase_tf", "tag_tf", "combined_tf", "phrase", "tag", "combined")

    @property
    def doc_ids(self) -> list[str]:
        return self.phrase_tf.doc_ids

    def matrix(self, name: str) -> WeightedMatrix:
        if name not in self.MATRIX_NAMES:
            raise IndexError_(f"unknown matrix {name!r}")
        return getattr(self, name)


def build_index(docs: list[AbstractDoc], lexicon: Lexicon,
                log_base: float = math.e) -> IndexBundle:
    """Build all six matrices for a corpus.

    Vocabularies are the distinct phrases/tags occurring in at least one
    document, in lexicographic column order.  The combined matrix is the
    column concatenation of the phrase and tag matrices, normalized jointly
    over the concatenated row.
    """
    if not docs:
        raise IndexError_("cannot index an empty corpus")
    doc_ids = [d.doc_id for d in docs]
    mappings = [map_document(d, lexicon) for d in docs]
    phrase_counts = [dict(m.phrases) for m in mappings]
    tag_counts = [dict(m.tags) for m in mappings]

    phrase_tf = _tf_matrix(doc_ids, phrase_counts)
    tag_tf = _tf_matrix(doc_ids, tag_counts)
    combined_tf = _concat_tf(phrase_tf, tag_tf)
    return IndexBundle(
        phrase_tf=phrase_tf,
        tag_tf=tag_tf,
        combined_tf=combined_tf,
        phrase=_normalized_from_tf(phrase_tf, log_base),
        tag=_normalized_from_tf(tag_tf, log_base),
        combined=_normalized_from_tf(combined_tf, log_base),
    )


# ---------------------------------------------------------------------------
# persistence: versioned plain-text format, weights written with repr() so a
# round trip reproduces every float bit-for-bit
# ---------------------------------------------------------------------------


def _write_matrix(fh, name: str, m: WeightedMatrix) -> None:
    fh.write(f"matrix {name}\n")
    fh.write(f"scheme {m.scheme}\n")
    fh.write(f"docs {m.n_docs}\n")
    fh.write(f"terms {m.n_terms}\n")
    for doc_id in m.doc_ids:
        fh.write(f"D {doc_id}\n")
    for term, df in zip(m.terms, m.df):
        fh.write(f"T {df} {term}\n")
    for i, row in enumerate(m.rows):
        for j in sorted(row):
            fh.write(f"C {i} {j} {row[j]!r}\n")
    fh.write("end\n")


def save_bundle(bundle: IndexBundle, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{FORMAT_MAGIC} {FORMAT_VERSION}\n")
        for name in IndexBundle.MATRIX_NAMES:
            _write_matrix(fh, name, bundle.matrix(name))


def _read_matrix(lines, name: str) -> WeightedMatrix:
    header = next(lines)
    if header != f"matrix {name}":
        raise IndexError_(f"expected 'matrix {name}', got {header!r}")
    scheme = next(lines).split(" ", 1)[1]
    n_docs = int(next(lines).split(" ", 1)[1])
    n_terms = int(next(lines).split(" ", 1)[1])
    doc_ids, terms, df = [], [], []
    for _ in range(n_docs):
        doc_ids.append(next(lines).split(" ", 1)[1])
    for _ in range(n_terms):
        _, df_s, term = next(lines).split(" ", 2)
        df.append(int(df_s))
        terms.append(term)
    rows: list[dict[int, float]] = [{} for _ in range(n_docs)]
    line = next(lines)
    while line != "end":
        _, i, j, w = line.split(" ", 3)
        rows[int(i)][int(j)] = float(w)
        line = next(lines)
    return WeightedMatrix(scheme=scheme, doc_ids=doc_ids, terms=terms, rows=rows, df=df)


def load_bundle(path: str | Path) -> IndexBundle:
    path = Path(path)
    text = path.read_text("utf-8")
    lines = iter(text.splitlines())
    header = next(lines, "")
    parts = header.split()
    if len(parts) != 2 or parts[0] != FORMAT_MAGIC:
        raise IndexError_(f"not an index file: {path}")
    if int(parts[1]) != FORMAT_VERSION:
        raise IndexError_(f"unsupported index version {parts[1]}")
    matrices = {}
    try:
        for name in IndexBundle.MATRIX_NAMES:
            matrices[name] = _read_matrix(lines, name)
    except StopIteration:
        raise IndexError_(f"truncated index file: {path}") from None
    except ValueError as exc:
        raise IndexError_(f"malformed index file {path}: {exc}") from None
    return IndexBundle(**matrices)
