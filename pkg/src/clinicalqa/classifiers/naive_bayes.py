"""Multinomial naive Bayes with add-one smoothing.

Features are non-negative counts (or count-like weights).  Scoring is done in
log space:

    score(c) = log P(c) + sum_k x_k * log P(k | c)

with P(k | c) = (count(k, c) + 1) / (total(c) + n_features).  Prediction is
the argmax score; exact ties go to the lowest class index.
"""

from __future__ import annotations

import numpy as np

from clinicalqa.classifiers.dataset import LabeledDataset


class NaiveBayesClassifier:
    def __init__(self):
        self.classes: list | None = None
        self.log_prior: np.ndarray | None = None
        self.log_cond: np.ndarray | None = None  # (n_classes, n_features)

    def fit(self, dataset: LabeledDataset) -> "NaiveBayesClassifier":
        x = np.asarray(dataset.x, dtype=np.float64)
        if np.any(x < 0):
            raise ValueError("naive Bayes features must be non-negative counts")
        self.classes = list(dataset.classes)
        n_classes = len(self.classes)
        n_features = x.shape[1]
        counts = np.zeros((n_classes, n_features))
        class_sizes = np.zeros(n_classes)
        for row, label in zip(x, dataset.y):
            c = self.classes.index(label)
            counts[c] += row
            class_sizes[c] += 1
        if np.any(class_sizes == 0):
            missing = [self.classes[i] for i in np.flatnonzero(class_sizes == 0)]
            raise ValueError(f"classes without training samples: {missing}")
        self.log_prior = np.log(class_sizes / class_sizes.sum())
        totals = counts.sum(axis=1, keepdims=True)
        self.log_cond = np.log((counts + 1.0) / (totals + n_features))
        return self

    def log_scores(self, x: np.ndarray) -> np.ndarray:
        assert self.log_prior is not None and self.log_cond is not None, "fit first"
        x = np.asarray(x, dtype=np.float64)
        if np.any(x < 0):
            raise ValueError("naive Bayes features must be non-negative counts")
        return self.log_prior + self.log_cond @ x

    def predict(self, x: np.ndarray):
        assert self.classes is not None, "fit first"
        return self.classes[int(np.argmax(self.log_scores(x)))]

    def predict_many(self, x: np.ndarray) -> list:
        x = np.asarray(x, dtype=np.float64)
        return [self.predict(row) for row in x]
