"""Support vector machine with an exponential RBF kernel, trained by
sequential pairwise optimization on the dual problem.

The kernel is K(x, x') = exp(-gamma * |x - x'|) with |.| the plain (not
squared) Euclidean distance.  Training maximizes the usual dual of

    minimize 1/2 w.w + D * sum(xi)   s.t.  y_i (w.phi(x_i) + theta) >= 1 - xi_i

by repeatedly picking the sample with the largest KKT violation (ties to the
lowest index) and pairing it with the sample of maximal error difference, so
a run is fully deterministic for a fixed sample order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from clinicalqa.accel import erbf_kernel_matrix
from clinicalqa.classifiers.dataset import LabeledDataset

DEFAULT_D = 500.0
DEFAULT_GAMMA = 0.005

_EPS = 1e-12


def erbf_kernel(x: np.ndarray, x2: np.ndarray, gamma: float) -> float:
    """exp(-gamma * ||x - x2||) for a single vector pair."""
    x = np.asarray(x, dtype=np.float64)
    x2 = np.asarray(x2, dtype=np.float64)
    if x.shape != x2.shape:
        raise ValueError(f"vector length mismatch: {x.shape} vs {x2.shape}")
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    return math.exp(-gamma * math.dist(x, x2))


@dataclass
class SvmModel:
    """Binary model: decision f(x) = sum_i lambda_i y_i K(x, x_i) + theta."""

    support_x: np.ndarray
    support_y: np.ndarray      # +/-1
    lambdas: np.ndarray        # all training multipliers, 0 <= lambda <= D
    theta: float
    gamma: float
    d_penalty: float
    slack: np.ndarray = field(default=None)  # type: ignore[assignment]

    def decision(self, x: np.ndarray) -> float:
        return float(self.decision_many(np.asarray(x, dtype=np.float64)[None, :])[0])

    def decision_many(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape[1] != self.support_x.shape[1]:
            raise ValueError("feature dimension mismatch")
        k = erbf_kernel_matrix(x, self.support_x, self.gamma)
        return k @ (self.lambdas * self.support_y) + self.theta

    def predict_sign(self, x: np.ndarray) -> int:
        return 1 if self.decision(x) > 0 else -1


def svm_train(x: np.ndarray, y: np.ndarray, d_penalty: float = DEFAULT_D,
              gamma: float = DEFAULT_GAMMA, tol: float = 1e-3,
              max_steps: int | None = None) -> SvmModel:
    """Train a binary SVM; ``y`` must contain both +1 and -1.

    Returns a model whose multipliers satisfy 0 <= lambda <= D and
    sum(lambda*y) = 0, with every KKT violation below ``tol``.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if set(np.unique(y)) != {-1.0, 1.0}:
        raise ValueError("binary SVM needs both classes (+1 and -1) present")
    if d_penalty <= 0:
        raise ValueError("penalty D must be positive")
    n = x.shape[0]
    if max_steps is None:
        max_steps = max(10_000, 300 * n)

    k = erbf_kernel_matrix(x, x, gamma)
    lam = np.zeros(n)
    theta = 0.0
    errors = -y.copy()  # E_i = f(x_i) - y_i, f = 0 initially

    for _ in range(max_steps):
        r = y * errors  # y_i f(x_i) - 1
        can_grow = lam < d_penalty - _EPS
        can_shrink = lam > _EPS
        viol = np.maximum(np.where(can_grow, -r, 0.0), np.where(can_shrink, r, 0.0))
        i = int(np.argmax(viol))  # argmax takes the lowest index on ties
        if viol[i] <= tol:
            break
        # second index: largest |E_i - E_j| first, then ascending index
        order = np.lexsort((np.arange(n), -np.abs(errors[i] - errors)))
        stepped = False
        for j in order:
            j = int(j)
            if j == i:
                continue
            if _take_step(i, j, lam, y, k, errors, d_penalty):
                theta_delta = _update_theta(i, j, lam, y, k, errors, d_penalty)
                theta += theta_delta
                stepped = True
                break
        if not stepped:
            break

    slack = np.maximum(0.0, 1.0 - y * (errors + y))  # f = E + y
    return SvmModel(support_x=x.copy(), support_y=y.copy(), lambdas=lam,
                    theta=theta, gamma=gamma, d_penalty=d_penalty, slack=slack)


def _take_step(i: int, j: int, lam, y, k, errors, d_penalty) -> bool:
    """One pairwise update; returns False if the pair cannot move."""
    if y[i] != y[j]:
        low = max(0.0, lam[j] - lam[i])
        high = min(d_penalty, d_penalty + lam[j] - lam[i])
    else:
        low = max(0.0, lam[i] + lam[j] - d_penalty)
        high = min(d_penalty, lam[i] + lam[j])
    if high - low < _EPS:
        return False
    eta = k[i, i] + k[j, j] - 2.0 * k[i, j]
    if eta <= _EPS:
        return False
    lam_j_new = lam[j] + y[j] * (errors[i] - errors[j]) / eta
    lam_j_new = min(high, max(low, lam_j_new))
    delta_j = lam_j_new - lam[j]
    if abs(delta_j) < _EPS * (lam_j_new + lam[j] + _EPS):
        return False
    delta_i = -y[i] * y[j] * delta_j
    lam[i] += delta_i
    lam[j] = lam_j_new
    errors += y[i] * delta_i * k[i] + y[j] * delta_j * k[j]
    return True


def _update_theta(i: int, j: int, lam, y, k, errors, d_penalty) -> float:
    """Shift theta so an unbound member of the pair sits exactly on its margin."""
    for idx in (i, j):
        if _EPS < lam[idx] < d_penalty - _EPS:
            delta = -errors[idx]
            errors += delta
            return delta
    delta = -(errors[i] + errors[j]) / 2.0
    errors += delta
    return delta


def svm_predict(model: SvmModel, x: np.ndarray) -> int:
    """Sign of the decision function: +1 or -1."""
    return model.predict_sign(x)


class SvmBinary:
    """fit/predict wrapper over svm_train for arbitrary two-class labels."""

    def __init__(self, d_penalty: float = DEFAULT_D, gamma: float = DEFAULT_GAMMA,
                 tol: float = 1e-3):
        self.d_penalty = d_penalty
        self.gamma = gamma
        self.tol = tol
        self.model: SvmModel | None = None
        self.classes: list | None = None

    def fit(self, dataset: LabeledDataset) -> "SvmBinary":
        if len(set(dataset.y)) < 2:
            raise ValueError("binary SVM needs both classes present")
        if dataset.n_classes != 2:
            raise ValueError(f"expected a 2-class dataset, got {dataset.n_classes}")
        self.classes = list(dataset.classes)
        y = dataset.binary_labels(positive=self.classes[1])
        self.model = svm_train(dataset.x, y, self.d_penalty, self.gamma, self.tol)
        return self

    def decision(self, x: np.ndarray) -> float:
        assert self.model is not None, "fit first"
        return self.model.decision(x)

    def predict(self, x: np.ndarray):
        assert self.classes is not None and self.model is not None, "fit first"
        return self.classes[1] if self.model.decision(x) > 0 else self.classes[0]


class SvmMulticlass:
    """One-vs-rest ensemble; predicts the argmax decision value, ties going
    to the lowest class index."""

    def __init__(self, d_penalty: float = DEFAULT_D, gamma: float = DEFAULT_GAMMA,
                 tol: float = 1e-3):
        self.d_penalty = d_penalty
        self.gamma = gamma
        self.tol = tol
        self.classes: list | None = None
        self.members: list[SvmModel] | None = None

    def fit(self, dataset: LabeledDataset) -> "SvmMulticlass":
        if len(set(dataset.y)) < 2:
            raise ValueError("SVM training needs at least two classes present")
        self.classes = list(dataset.classes)
        self.members = []
        for cls in self.classes:
            y = dataset.binary_labels(positive=cls)
            if len(set(y.tolist())) < 2:
                raise ValueError(f"class {cls!r} has no counterexamples in the dataset")
            self.members.append(svm_train(dataset.x, y, self.d_penalty, self.gamma, self.tol))
        return self

    def decision_values(self, x: np.ndarray) -> np.ndarray:
        assert self.members is not None, "fit first"
        return np.asarray([m.decision(x) for m in self.members])

    def predict(self, x: np.ndarray):
        assert self.classes is not None, "fit first"
        values = self.decision_values(x)
        return self.classes[int(np.argmax(values))]

    def predict_many(self, x: np.ndarray) -> list:
        assert self.classes is not None and self.members is not None, "fit first"
        values = np.column_stack([m.decision_many(x) for m in self.members])
        return [self.classes[int(k)] for k in np.argmax(values, axis=1)]
