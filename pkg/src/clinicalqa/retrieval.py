"""Vector-space retrieval: binary query vectors, similarity scoring, and
consensus candidate extraction.

Queries carry binary weights; documents carry normalized TF*IDF weights, so
the inner product Sim(Q, D) ranks documents exactly as the full cosine does
(the query norm is constant across documents and each document norm is 1).
Candidates must score positive against both the phrase vector and the tag
vector; the two scores are added without bias and the top ten survive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from clinicalqa.accel import dot_products
from clinicalqa.conceptmap import ConceptMapping
from clinicalqa.index import IndexBundle, WeightedMatrix

TOP_K = 10


@dataclass
class QueryVectors:
    """Binary query vectors over the index's phrase and tag vocabularies."""

    phrase_q: np.ndarray
    tag_q: np.ndarray

    @property
    def empty(self) -> bool:
        return not (np.any(self.phrase_q) or np.any(self.tag_q))


def formulate_query(mapping: ConceptMapping, bundle: IndexBundle) -> QueryVectors:
    """Set a bit per question phrase/tag found in the index vocabulary.

    Terms outside the vocabulary are dropped; repeats still set a single 1.
    """
    phrase_q = np.zeros(bundle.phrase.n_terms)
    for phrase in mapping.phrases:
        j = bundle.phrase.term_index(phrase)
        if j is not None:
            phrase_q[j] = 1.0
    tag_q = np.zeros(bundle.tag.n_terms)
    for tag in mapping.tags:
        j = bundle.tag.term_index(tag)
        if j is not None:
            tag_q[j] = 1.0
    return QueryVectors(phrase_q=phrase_q, tag_q=tag_q)


def cosine(q: np.ndarray, d: np.ndarray) -> float:
    """Inner product over the product of Euclidean norms; 0 if either vector
    is zero (the undefined case is pinned to no similarity)."""
    q = np.asarray(q, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    if q.shape != d.shape:
        raise ValueError(f"dimensionality mismatch: {q.shape} vs {d.shape}")
    qn = float(np.linalg.norm(q))
    dn = float(np.linalg.norm(d))
    if qn == 0.0 or dn == 0.0:
        return 0.0
    return float(q @ d) / (qn * dn)


def sim(q_binary: np.ndarray, d_normalized: np.ndarray) -> float:
    """Simplified similarity: the plain inner product.  Equivalent to cosine
    up to a constant factor when the document row is normalized."""
    q_binary = np.asarray(q_binary, dtype=np.float64)
    d_normalized = np.asarray(d_normalized, dtype=np.float64)
    if q_binary.shape != d_normalized.shape:
        raise ValueError(f"dimensionality mismatch: {q_binary.shape} vs {d_normalized.shape}")
    return float(q_binary @ d_normalized)


def score_matrix(q: np.ndarray, matrix: WeightedMatrix) -> np.ndarray:
    """Sim of the query against every document row of one matrix."""
    q = np.ascontiguousarray(q, dtype=np.float64)
    if q.shape != (matrix.n_terms,):
        raise ValueError(f"query has {q.shape[0]} terms, matrix has {matrix.n_terms}")
    if matrix.n_docs == 0:
        return np.zeros(0)
    dense = np.ascontiguousarray(matrix.to_dense())
    return dot_products(q, dense)


@dataclass(frozen=True)
class Candidate:
    doc_id: str
    combined_score: float
    phrase_score: float
    tag_score: float


@dataclass
class CandidateSet:
    candidates: list[Candidate] = field(default_factory=list)
    fallback: bool = False  # True when the intersection rule found nothing

    def __len__(self) -> int:
        return len(self.candidates)

    def doc_ids(self) -> list[str]:
        return [c.doc_id for c in self.candidates]


def extract_candidates(phrase_sims: np.ndarray, tag_sims: np.ndarray,
                       doc_ids: list[str], top_k: int = TOP_K,
                       phrase_bias: float = 1.0, tag_bias: float = 1.0) -> CandidateSet:
    """Consensus selection over the two similarity vectors.

    Documents scoring positive on both vectors are kept; each keeps
    phrase_bias*phrase + tag_bias*tag as its combined score (biases default
    to 1, i.e. plain addition).  Sorted by combined score descending, doc_id
    ascending on ties, truncated to ``top_k``.  When no document passes both
    filters the union of single-vector hits is used instead and the result
    is flagged as a fallback.
    """
    if len(phrase_sims) != len(tag_sims) or len(phrase_sims) != len(doc_ids):
        raise ValueError("similarity vectors and doc_ids must align")
    if not doc_ids:
        raise ValueError("cannot extract candidates from an empty corpus")
    if top_k < 1:
        raise ValueError("top_k must be >= 1")

    chosen = [i for i in range(len(doc_ids)) if phrase_sims[i] > 0 and tag_sims[i] > 0]
    fallback = False
    if not chosen:
        fallback = True
        chosen = [i for i in range(len(doc_ids)) if phrase_sims[i] > 0 or tag_sims[i] > 0]
    candidates = [
        Candidate(doc_id=doc_ids[i],
                  combined_score=phrase_bias * float(phrase_sims[i]) + tag_bias * float(tag_sims[i]),
                  phrase_score=float(phrase_sims[i]),
                  tag_score=float(tag_sims[i]))
        for i in chosen
    ]
    candidates.sort(key=lambda c: (-c.combined_score, c.doc_id))
    return CandidateSet(candidates=candidates[:top_k], fallback=fallback)


def retrieve(mapping: ConceptMapping, bundle: IndexBundle, top_k: int = TOP_K,
             phrase_bias: float = 1.0, tag_bias: float = 1.0) -> CandidateSet:
    """Full retrieval pass: query formulation, scoring, candidate extraction."""
    query = formulate_query(mapping, bundle)
    phrase_sims = score_matrix(query.phrase_q, bundle.phrase)
    tag_sims = score_matrix(query.tag_q, bundle.tag)
    return extract_candidates(phrase_sims, tag_sims, bundle.doc_ids, top_k=top_k,
                              phrase_bias=phrase_bias, tag_bias=tag_bias)
