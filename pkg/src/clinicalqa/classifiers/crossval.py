"""Stratified k-fold cross-validation.

Folds are dealt deterministically for a given seed: within each class (taken
in dataset class order) the sample indices are shuffled once with
numpy's default_rng, then dealt round robin to folds 0..k-1.  The reported
score is the plain mean of the per-fold accuracies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Protocol, Sequence

import numpy as np

from clinicalqa.classifiers.dataset import LabeledDataset

DEFAULT_FOLDS = 10


class Classifier(Protocol):
    def fit(self, dataset: LabeledDataset) -> "Classifier": ...
    def predict_many(self, x: np.ndarray) -> list: ...


def stratified_folds(dataset: LabeledDataset, n_folds: int = DEFAULT_FOLDS,
                     seed: int = 0) -> list[list[int]]:
    """Index lists for each fold; every class is spread across folds."""
    if n_folds < 2:
        raise ValueError("need at least 2 folds")
    if n_folds > len(dataset):
        raise ValueError(f"cannot make {n_folds} folds from {len(dataset)} samples")
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(n_folds)]
    cursor = 0
    for cls in dataset.classes:
        indices = np.asarray([i for i, label in enumerate(dataset.y) if label == cls])
        rng.shuffle(indices)
        for idx in indices:
            folds[cursor % n_folds].append(int(idx))
            cursor += 1
    return [sorted(fold) for fold in folds]


def accuracy(truth: Sequence, predicted: Sequence) -> float:
    if len(truth) != len(predicted):
        raise ValueError("length mismatch between truth and predictions")
    if not truth:
        raise ValueError("cannot score an empty evaluation set")
    hits = sum(1 for t, p in zip(truth, predicted) if t == p)
    return hits / len(truth)


@dataclass
class CrossValResult:
    fold_accuracies: list[float]
    mean_accuracy: float
    fold_sizes: list[int]


def cross_validate(make_classifier: Callable[[], Classifier], dataset: LabeledDataset,
                   n_folds: int = DEFAULT_FOLDS, seed: int = 0) -> CrossValResult:
    """Train on k-1 folds, score on the held-out fold, average the accuracies."""
    folds = stratified_folds(dataset, n_folds, seed)
    fold_accuracies: list[float] = []
    for held_out in folds:
        held_set = set(held_out)
        train_idx = [i for i in range(len(dataset)) if i not in held_set]
        train = dataset.subset(train_idx)
        test = dataset.subset(held_out)
        model = make_classifier().fit(train)
        fold_accuracies.append(accuracy(test.y, model.predict_many(test.x)))
    return CrossValResult(
        fold_accuracies=fold_accuracies,
        # fsum keeps the mean correctly rounded (ten folds of 0.6 average to
        # exactly 0.6, not 0.5999...)
        mean_accuracy=math.fsum(fold_accuracies) / len(fold_accuracies),
        fold_sizes=[len(f) for f in folds],
    )
