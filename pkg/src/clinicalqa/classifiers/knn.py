"""k-nearest-neighbour classifier (Euclidean distance, majority vote).

Tie handling is fixed so results are reproducible: equal distances rank by
ascending training index, and a tied vote goes to the class of the nearest
neighbour among the tied classes.
"""

from __future__ import annotations

import numpy as np

from clinicalqa.accel import pairwise_sq_distances
from clinicalqa.classifiers.dataset import LabeledDataset

DEFAULT_K = 3


class KnnClassifier:
    def __init__(self, k: int = DEFAULT_K):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self.x: np.ndarray | None = None
        self.y: list | None = None
        self.classes: list | None = None

    def fit(self, dataset: LabeledDataset) -> "KnnClassifier":
        if len(dataset) < self.k:
            raise ValueError(f"need at least k={self.k} training samples, got {len(dataset)}")
        self.x = np.ascontiguousarray(dataset.x, dtype=np.float64)
        self.y = list(dataset.y)
        self.classes = list(dataset.classes)
        return self

    def _neighbours(self, x: np.ndarray) -> list[int]:
        assert self.x is not None, "fit first"
        q = np.ascontiguousarray(np.asarray(x, dtype=np.float64)[None, :])
        sq = pairwise_sq_distances(q, self.x)[0]
        order = np.lexsort((np.arange(len(sq)), sq))  # distance, then index
        return [int(i) for i in order[: self.k]]

    def predict(self, x: np.ndarray):
        assert self.y is not None, "fit first"
        neighbours = self._neighbours(x)
        votes: dict = {}
        for idx in neighbours:
            label = self.y[idx]
            votes[label] = votes.get(label, 0) + 1
        best = max(votes.values())
        tied = {label for label, count in votes.items() if count == best}
        if len(tied) == 1:
            return next(iter(tied))
        for idx in neighbours:  # nearest first
            if self.y[idx] in tied:
                return self.y[idx]
        raise AssertionError("unreachable: tie set drawn from the neighbour list")

    def predict_many(self, x: np.ndarray) -> list:
        x = np.asarray(x, dtype=np.float64)
        return [self.predict(row) for row in x]
