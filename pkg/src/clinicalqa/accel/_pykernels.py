"""Numpy implementations of the distance/kernel primitives.

Fallback backend used when the compiled extension is unavailable; the
compiled module exposes the same three functions with identical semantics.
"""

from __future__ import annotations

import numpy as np


def pairwise_sq_distances(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances between every row of x and every row of y.

    Computed row-by-row as sum((x_i - y_j)^2) rather than via the expanded
    |x|^2 + |y|^2 - 2xy form, which loses precision for nearby points.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if x.ndim != 2 or y.ndim != 2 or x.shape[1] != y.shape[1]:
        raise ValueError("expected 2-D arrays with matching column counts")
    out = np.empty((x.shape[0], y.shape[0]))
    for i in range(x.shape[0]):
        diff = y - x[i]
        out[i] = np.einsum("ij,ij->i", diff, diff)
    return out


def erbf_kernel_matrix(x: np.ndarray, y: np.ndarray, gamma: float) -> np.ndarray:
    """exp(-gamma * ||x_i - y_j||) for every row pair (non-squared distance)."""
    return np.exp(-gamma * np.sqrt(pairwise_sq_distances(x, y)))


def dot_products(q: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Inner product of a query vector against each matrix row."""
    q = np.asarray(q, dtype=np.float64)
    rows = np.asarray(rows, dtype=np.float64)
    if q.ndim != 1 or rows.ndim != 2 or rows.shape[1] != q.shape[0]:
        raise ValueError("expected query of length matching row width")
    return rows @ q
