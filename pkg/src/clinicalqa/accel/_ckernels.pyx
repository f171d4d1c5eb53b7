# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled distance/kernel primitives.

Same contract as ``_pykernels``; tight C loops instead of numpy temporaries.
"""

import numpy as np

cimport cython
from libc.math cimport exp, sqrt


def pairwise_sq_distances(x, y):
    """Squared Euclidean distances between every row of x and every row of y."""
    cdef double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[:, ::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    if xv.shape[1] != yv.shape[1]:
        raise ValueError("expected 2-D arrays with matching column counts")
    cdef Py_ssize_t n = xv.shape[0], m = yv.shape[0], l = xv.shape[1]
    out_arr = np.empty((n, m))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, k
    cdef double acc, d
    for i in range(n):
        for j in range(m):
            acc = 0.0
            for k in range(l):
                d = xv[i, k] - yv[j, k]
                acc += d * d
            out[i, j] = acc
    return out_arr


def erbf_kernel_matrix(x, y, double gamma):
    """exp(-gamma * ||x_i - y_j||) for every row pair (non-squared distance)."""
    cdef double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[:, ::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    if xv.shape[1] != yv.shape[1]:
        raise ValueError("expected 2-D arrays with matching column counts")
    cdef Py_ssize_t n = xv.shape[0], m = yv.shape[0], l = xv.shape[1]
    out_arr = np.empty((n, m))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, k
    cdef double acc, d
    for i in range(n):
        for j in range(m):
            acc = 0.0
            for k in range(l):
                d = xv[i, k] - yv[j, k]
                acc += d * d
            out[i, j] = exp(-gamma * sqrt(acc))
    return out_arr


def dot_products(q, rows):
    """Inner product of a query vector against each matrix row."""
    cdef double[::1] qv = np.ascontiguousarray(q, dtype=np.float64)
    cdef double[:, ::1] rv = np.ascontiguousarray(rows, dtype=np.float64)
    if rv.shape[1] != qv.shape[0]:
        raise ValueError("expected query of length matching row width")
    cdef Py_ssize_t n = rv.shape[0], l = qv.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double acc
    for i in range(n):
        acc = 0.0
        for k in range(l):
            acc += rv[i, k] * qv[k]
        out[i] = acc
    return out_arr
