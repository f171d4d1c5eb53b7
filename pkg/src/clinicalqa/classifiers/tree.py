"""Binary decision tree on numeric features, split by information gain.

Candidate thresholds are the midpoints between consecutive distinct values of
each feature.  A node keeps splitting while it is impure and some candidate
separates the samples into two non-empty sides, taking the highest-gain
split (ties: lowest feature index, then lowest threshold).  Splitting
proceeds even when the best gain is zero, so datasets like XOR are still
fit exactly.  Leaves predict their majority class, ties to the lowest
class index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from clinicalqa.classifiers.dataset import LabeledDataset


def entropy(labels: list) -> float:
    """Shannon entropy in bits of the label multiset."""
    n = len(labels)
    if n == 0:
        return 0.0
    counts: dict = {}
    for label in labels:
        counts[label] = counts.get(label, 0) + 1
    return -sum((c / n) * math.log2(c / n) for c in counts.values())


def information_gain(labels: list, left: list, right: list) -> float:
    n = len(labels)
    return entropy(labels) - (len(left) / n) * entropy(left) - (len(right) / n) * entropy(right)


def candidate_thresholds(values: np.ndarray) -> list[float]:
    """Midpoints between consecutive distinct values, ascending."""
    distinct = sorted(set(float(v) for v in values))
    return [(a + b) / 2.0 for a, b in zip(distinct, distinct[1:])]


def best_split(x: np.ndarray, y: list) -> tuple[int, float, float] | None:
    """(feature, threshold, gain) of the best valid split, or None.

    A split sends value <= threshold left.  With midpoint thresholds both
    sides are always non-empty, so validity reduces to a feature having at
    least two distinct values.
    """
    best: tuple[int, float, float] | None = None
    for feature in range(x.shape[1]):
        for threshold in candidate_thresholds(x[:, feature]):
            mask = x[:, feature] <= threshold
            left = [label for label, m in zip(y, mask) if m]
            right = [label for label, m in zip(y, mask) if not m]
            gain = information_gain(y, left, right)
            if best is None or gain > best[2] + 1e-12:
                best = (feature, threshold, gain)
    return best


@dataclass
class TreeNode:
    feature: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    label: object = None  # set on leaves

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    def depth(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(self.left.depth(), self.right.depth())

    def leaf_count(self) -> int:
        if self.is_leaf:
            return 1
        return self.left.leaf_count() + self.right.leaf_count()


class DecisionTreeClassifier:
    def __init__(self, max_depth: int | None = None):
        self.max_depth = max_depth
        self.root: TreeNode | None = None
        self.classes: list | None = None

    def fit(self, dataset: LabeledDataset) -> "DecisionTreeClassifier":
        self.classes = list(dataset.classes)
        x = np.asarray(dataset.x, dtype=np.float64)
        self.root = self._grow(x, list(dataset.y), depth=0)
        return self

    def _majority(self, y: list):
        assert self.classes is not None
        counts: dict = {}
        for label in y:
            counts[label] = counts.get(label, 0) + 1
        best = max(counts.values())
        for cls in self.classes:  # lowest class index wins ties
            if counts.get(cls, 0) == best:
                return cls
        raise AssertionError("unreachable: some class attains the max count")

    def _grow(self, x: np.ndarray, y: list, depth: int) -> TreeNode:
        if len(set(y)) == 1:
            return TreeNode(label=y[0])
        if self.max_depth is not None and depth >= self.max_depth:
            return TreeNode(label=self._majority(y))
        split = best_split(x, y)
        if split is None:
            return TreeNode(label=self._majority(y))
        feature, threshold, _gain = split
        mask = x[:, feature] <= threshold
        node = TreeNode(feature=feature, threshold=threshold)
        node.left = self._grow(x[mask], [l for l, m in zip(y, mask) if m], depth + 1)
        node.right = self._grow(x[~mask], [l for l, m in zip(y, mask) if not m], depth + 1)
        return node

    def predict(self, x: np.ndarray):
        node = self.root
        assert node is not None, "fit first"
        x = np.asarray(x, dtype=np.float64)
        while not node.is_leaf:
            node = node.left if x[node.feature] <= node.threshold else node.right
        return node.label

    def predict_many(self, x: np.ndarray) -> list:
        x = np.asarray(x, dtype=np.float64)
        return [self.predict(row) for row in x]
