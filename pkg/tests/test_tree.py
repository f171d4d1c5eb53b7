"""Decision tree: entropy/gain hand values and an exhaustive root-split oracle."""

from __future__ import annotations

import math
from collections import Counter

import numpy as np
import pytest

from clinicalqa.classifiers.dataset import LabeledDataset
from clinicalqa.classifiers.tree import (
    DecisionTreeClassifier,
    best_split,
    candidate_thresholds,
    entropy,
    information_gain,
)


def oracle_entropy(labels):
    n = len(labels)
    return -sum((c / n) * math.log2(c / n) for c in Counter(labels).values())


def oracle_root_split(x, y):
    """Exhaustive scan over every feature and midpoint threshold.

    Ties keep the first candidate in (feature, threshold) order, matching the
    documented rule.
    """
    best = None
    for feature in range(x.shape[1]):
        values = sorted(set(float(v) for v in x[:, feature]))
        for a, b in zip(values, values[1:]):
            threshold = (a + b) / 2.0
            mask = x[:, feature] <= threshold
            left = [label for label, m in zip(y, mask) if m]
            right = [label for label, m in zip(y, mask) if not m]
            gain = (oracle_entropy(y) - len(left) / len(y) * oracle_entropy(left)
                    - len(right) / len(y) * oracle_entropy(right))
            if best is None or gain > best[2] + 1e-12:
                best = (feature, threshold, gain)
    return best


class TestEntropy:
    def test_empty_and_pure(self):
        assert entropy([]) == 0.0
        assert entropy(["a", "a", "a"]) == 0.0

    def test_even_binary_split_is_one_bit(self):
        assert entropy(["a", "b", "a", "b"]) == pytest.approx(1.0)

    def test_uniform_three_way(self):
        assert entropy(["a", "a", "b", "b", "c", "c"]) == pytest.approx(math.log2(3))

    def test_skewed_hand_value(self):
        # 3:1 split: -(3/4)log2(3/4) - (1/4)log2(1/4)
        expected = -(0.75 * math.log2(0.75) + 0.25 * math.log2(0.25))
        assert entropy(["a", "a", "a", "b"]) == pytest.approx(expected)


class TestInformationGain:
    def test_perfect_split_gains_full_entropy(self):
        labels = ["a", "a", "b", "b"]
        assert information_gain(labels, ["a", "a"], ["b", "b"]) == pytest.approx(1.0)

    def test_useless_split_gains_nothing(self):
        labels = ["a", "b", "a", "b"]
        assert information_gain(labels, ["a", "b"], ["a", "b"]) == pytest.approx(0.0)


class TestCandidateThresholds:
    def test_midpoints_between_distinct_values(self):
        assert candidate_thresholds(np.array([1.0, 2.0, 2.0, 4.0])) == [1.5, 3.0]

    def test_constant_feature_has_no_candidates(self):
        assert candidate_thresholds(np.array([5.0, 5.0])) == []


class TestRootSplitOracle:
    def test_hand_fixture_prefers_informative_feature(self):
        # feature 0 is noise, feature 1 separates the classes at 0.5
        x = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        y = ["a", "a", "b", "b"]
        feature, threshold, gain = best_split(x, y)
        assert (feature, threshold) == (1, 0.5)
        assert gain == pytest.approx(1.0)

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_exhaustive_scan_on_random_fixtures(self, seed):
        rng = np.random.default_rng(seed)
        x = rng.integers(0, 4, size=(30, 3)).astype(float)
        y = [["a", "b", "c"][i] for i in rng.integers(0, 3, size=30)]
        got = best_split(x, y)
        expected = oracle_root_split(x, y)
        assert got[0] == expected[0]
        assert got[1] == pytest.approx(expected[1], abs=1e-12)
        assert got[2] == pytest.approx(expected[2], abs=1e-12)

    def test_fitted_root_uses_the_oracle_split(self):
        rng = np.random.default_rng(99)
        x = rng.integers(0, 3, size=(24, 2)).astype(float)
        y = [["a", "b"][i] for i in rng.integers(0, 2, size=24)]
        tree = DecisionTreeClassifier().fit(LabeledDataset(x, y))
        feature, threshold, _ = oracle_root_split(x, y)
        assert tree.root.feature == feature
        assert tree.root.threshold == pytest.approx(threshold, abs=1e-12)

    def test_no_split_on_constant_features(self):
        x = np.ones((4, 2))
        assert best_split(x, ["a", "b", "a", "b"]) is None


class TestFitting:
    def test_xor_is_fit_exactly(self):
        x = np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]])
        y = ["same", "same", "diff", "diff"]
        tree = DecisionTreeClassifier().fit(LabeledDataset(x, y))
        assert tree.predict_many(x) == y
        assert tree.root.depth() == 2

    def test_training_accuracy_on_random_distinct_points(self):
        rng = np.random.default_rng(3)
        x = rng.normal(size=(40, 3))
        y = [["a", "b"][i] for i in rng.integers(0, 2, size=40)]
        tree = DecisionTreeClassifier().fit(LabeledDataset(x, y))
        assert tree.predict_many(x) == y

    def test_max_depth_zero_gives_majority_leaf(self):
        x = np.array([[0.0], [1.0], [2.0]])
        tree = DecisionTreeClassifier(max_depth=0).fit(LabeledDataset(x, ["b", "b", "a"]))
        assert tree.root.is_leaf
        assert tree.predict(np.array([5.0])) == "b"

    def test_max_depth_caps_growth(self):
        rng = np.random.default_rng(4)
        x = rng.normal(size=(30, 2))
        y = [["a", "b"][i] for i in rng.integers(0, 2, size=30)]
        tree = DecisionTreeClassifier(max_depth=2).fit(LabeledDataset(x, y))
        assert tree.root.depth() <= 2

    def test_majority_tie_takes_lowest_class_index(self):
        x = np.array([[0.0], [0.0]])  # unsplittable, 1-1 vote
        tree = DecisionTreeClassifier().fit(LabeledDataset(x, ["b", "a"]))
        assert tree.predict(np.array([0.0])) == "a"

    def test_pure_node_stops_immediately(self):
        x = np.array([[0.0], [1.0]])
        tree = DecisionTreeClassifier().fit(LabeledDataset(x, ["a", "a"]))
        assert tree.root.is_leaf
        assert tree.root.leaf_count() == 1

    def test_predict_many_matches_predict(self):
        rng = np.random.default_rng(5)
        x = rng.normal(size=(20, 2))
        y = [["a", "b", "c"][i] for i in rng.integers(0, 3, size=20)]
        tree = DecisionTreeClassifier().fit(LabeledDataset(x, y))
        queries = rng.normal(size=(10, 2))
        assert tree.predict_many(queries) == [tree.predict(q) for q in queries]
