"""Fisher linear discriminant.

The binary discriminant direction is w = (S0 + S1)^-1 (mu1 - mu0) with S_c
the biased (divide by n) covariance of class c.  Samples project onto w and
the decision threshold sits at the midpoint of the projected class means.
Since w is derived from (mu1 - mu0), the class-1 mean always projects at or
above the class-0 mean, so no extra orientation step is needed.  When the
pooled scatter matrix is singular the pseudo-inverse is used and the model
is flagged.  Multiclass runs one-vs-rest on the margin-scaled projection,
ties to the lowest class index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from clinicalqa.classifiers.dataset import LabeledDataset

_COND_LIMIT = 1e12


def biased_covariance(x: np.ndarray) -> np.ndarray:
    """Covariance with the 1/n convention (zero matrix for a single row)."""
    x = np.asarray(x, dtype=np.float64)
    centered = x - x.mean(axis=0)
    return centered.T @ centered / x.shape[0]


@dataclass
class FisherModel:
    w: np.ndarray
    threshold: float
    mean0_proj: float
    mean1_proj: float
    used_pinv: bool

    def score(self, x: np.ndarray) -> float:
        """Signed distance of the projection from the threshold; positive
        means class 1, scaled so each class mean sits at +/-1 when the
        means are separated."""
        proj = float(np.asarray(x, dtype=np.float64) @ self.w)
        half_gap = (self.mean1_proj - self.mean0_proj) / 2.0
        if half_gap > 0:
            return (proj - self.threshold) / half_gap
        return proj - self.threshold

    def predict_side(self, x: np.ndarray) -> int:
        """1 if on the class-1 side of the threshold, else 0."""
        proj = float(np.asarray(x, dtype=np.float64) @ self.w)
        return 1 if proj > self.threshold else 0


def fisher_train(x0: np.ndarray, x1: np.ndarray) -> FisherModel:
    """Fit the discriminant for class 0 samples ``x0`` vs class 1 ``x1``."""
    x0 = np.asarray(x0, dtype=np.float64)
    x1 = np.asarray(x1, dtype=np.float64)
    if x0.ndim != 2 or x1.ndim != 2 or x0.shape[1] != x1.shape[1]:
        raise ValueError("class sample blocks must be 2-D with equal feature counts")
    if len(x0) == 0 or len(x1) == 0:
        raise ValueError("both classes need at least one sample")
    mu0 = x0.mean(axis=0)
    mu1 = x1.mean(axis=0)
    scatter = biased_covariance(x0) + biased_covariance(x1)
    used_pinv = False
    if scatter.size and np.linalg.cond(scatter) < _COND_LIMIT:
        w = np.linalg.solve(scatter, mu1 - mu0)
    else:
        w = np.linalg.pinv(scatter) @ (mu1 - mu0)
        used_pinv = True
    mean0_proj = float(mu0 @ w)
    mean1_proj = float(mu1 @ w)
    threshold = (mean0_proj + mean1_proj) / 2.0
    return FisherModel(w=w, threshold=threshold, mean0_proj=mean0_proj,
                       mean1_proj=mean1_proj, used_pinv=used_pinv)


class FisherClassifier:
    """One-vs-rest Fisher discriminant for two or more classes."""

    def __init__(self):
        self.classes: list | None = None
        self.members: list[FisherModel] | None = None
        self.binary: FisherModel | None = None

    def fit(self, dataset: LabeledDataset) -> "FisherClassifier":
        if len(set(dataset.y)) < 2:
            raise ValueError("Fisher discriminant needs at least two classes present")
        self.classes = list(dataset.classes)
        x = np.asarray(dataset.x, dtype=np.float64)
        if len(self.classes) == 2:
            x0 = x[[label == self.classes[0] for label in dataset.y]]
            x1 = x[[label == self.classes[1] for label in dataset.y]]
            self.binary = fisher_train(x0, x1)
            self.members = None
            return self
        self.members = []
        for cls in self.classes:
            mask = [label == cls for label in dataset.y]
            inside = x[mask]
            outside = x[[not m for m in mask]]
            if len(inside) == 0 or len(outside) == 0:
                raise ValueError(f"class {cls!r} has no counterexamples in the dataset")
            self.members.append(fisher_train(outside, inside))
        return self

    def predict(self, x: np.ndarray):
        assert self.classes is not None, "fit first"
        if self.binary is not None:
            return self.classes[self.binary.predict_side(x)]
        assert self.members is not None
        scores = [m.score(x) for m in self.members]
        return self.classes[int(np.argmax(scores))]

    def predict_many(self, x: np.ndarray) -> list:
        x = np.asarray(x, dtype=np.float64)
        return [self.predict(row) for row in x]
