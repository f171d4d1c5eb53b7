"""Labeled feature-vector datasets shared by all five classifiers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class LabeledDataset:
    """Feature matrix plus labels.

    ``classes`` fixes the label order used for one-vs-rest reductions and
    for "lowest class index" tie-breaking; it defaults to the sorted set of
    labels seen in ``y``.
    """

    x: np.ndarray
    y: list
    classes: list = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=np.float64)
        if self.x.ndim != 2:
            raise ValueError("feature matrix must be 2-D")
        if len(self.y) != self.x.shape[0]:
            raise ValueError("feature matrix and labels disagree on sample count")
        if self.classes is None:
            self.classes = sorted(set(self.y), key=str)
        missing = set(self.y) - set(self.classes)
        if missing:
            raise ValueError(f"labels not in declared classes: {sorted(missing, key=str)}")

    def __len__(self) -> int:
        return self.x.shape[0]

    @property
    def n_features(self) -> int:
        return self.x.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def class_index(self, label) -> int:
        return self.classes.index(label)

    def subset(self, indices) -> "LabeledDataset":
        indices = list(indices)
        return LabeledDataset(self.x[indices], [self.y[i] for i in indices],
                              classes=list(self.classes))

    def binary_labels(self, positive) -> np.ndarray:
        """+1 for the positive class, -1 for the rest."""
        return np.where(np.asarray([label == positive for label in self.y]), 1.0, -1.0)
