"""Backend agreement: the compiled kernels must match numpy formulas exactly."""

from __future__ import annotations

import importlib
import math

import numpy as np
import pytest

import clinicalqa.accel as accel
from clinicalqa.accel import _pykernels

try:
    from clinicalqa.accel import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = [("python", _pykernels)]
if _ckernels is not None:
    BACKENDS.append(("cython", _ckernels))


@pytest.fixture(params=BACKENDS, ids=[name for name, _ in BACKENDS])
def backend(request):
    return request.param[1]


def random_pair(seed, n=7, m=5, d=4):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(n, d)), rng.normal(size=(m, d))


class TestPairwiseSqDistances:
    def test_matches_naive_loops(self, backend):
        x, y = random_pair(0)
        got = backend.pairwise_sq_distances(x, y)
        for i in range(x.shape[0]):
            for j in range(y.shape[0]):
                expected = float(np.sum((x[i] - y[j]) ** 2))
                assert got[i, j] == pytest.approx(expected, abs=1e-12)

    def test_diagonal_zero_on_self(self, backend):
        x, _ = random_pair(1)
        got = backend.pairwise_sq_distances(x, x)
        assert np.allclose(np.diag(got), 0.0, atol=1e-12)

    def test_shape_mismatch_rejected(self, backend):
        with pytest.raises(ValueError):
            backend.pairwise_sq_distances(np.zeros((2, 3)), np.zeros((2, 4)))

    def test_one_dimensional_rejected(self, backend):
        with pytest.raises(ValueError):
            backend.pairwise_sq_distances(np.zeros(3), np.zeros((2, 3)))


class TestErbfKernelMatrix:
    def test_matches_hand_formula(self, backend):
        x, y = random_pair(2)
        gamma = 0.25
        got = backend.erbf_kernel_matrix(x, y, gamma)
        for i in range(x.shape[0]):
            for j in range(y.shape[0]):
                dist = math.sqrt(float(np.sum((x[i] - y[j]) ** 2)))
                assert got[i, j] == pytest.approx(math.exp(-gamma * dist), abs=1e-12)

    def test_identical_points_score_one(self, backend):
        x, _ = random_pair(3)
        got = backend.erbf_kernel_matrix(x, x, 0.5)
        assert np.allclose(np.diag(got), 1.0, atol=1e-12)

    def test_uses_distance_not_squared_distance(self, backend):
        # at distance 2 with gamma 1: exp(-2), not exp(-4)
        x = np.array([[0.0]])
        y = np.array([[2.0]])
        got = backend.erbf_kernel_matrix(x, y, 1.0)
        assert got[0, 0] == pytest.approx(math.exp(-2.0), abs=1e-15)


class TestDotProducts:
    def test_matches_matmul(self, backend):
        rng = np.random.default_rng(4)
        rows = rng.normal(size=(9, 6))
        q = rng.normal(size=6)
        assert backend.dot_products(q, rows) == pytest.approx(rows @ q, abs=1e-12)

    def test_length_mismatch_rejected(self, backend):
        with pytest.raises(ValueError):
            backend.dot_products(np.zeros(3), np.zeros((2, 4)))


@pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")
class TestBackendAgreement:
    def test_all_three_functions_agree(self):
        for seed in range(10):
            x, y = random_pair(seed, n=11, m=8, d=5)
            q = x[0]
            assert np.allclose(_ckernels.pairwise_sq_distances(x, y),
                               _pykernels.pairwise_sq_distances(x, y), atol=1e-12)
            assert np.allclose(_ckernels.erbf_kernel_matrix(x, y, 0.005),
                               _pykernels.erbf_kernel_matrix(x, y, 0.005), atol=1e-12)
            assert np.allclose(_ckernels.dot_products(q, y),
                               _pykernels.dot_products(q, y), atol=1e-12)


class TestSelection:
    def test_backend_name_reflects_loaded_module(self):
        assert accel.BACKEND in ("cython", "python")
        if _ckernels is not None:
            assert accel.BACKEND == "cython"
            assert accel.erbf_kernel_matrix is _ckernels.erbf_kernel_matrix

    def test_reimport_is_stable(self):
        module = importlib.reload(accel)
        assert module.BACKEND == accel.BACKEND
