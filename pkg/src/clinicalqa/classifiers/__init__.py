"""Classifier suite: SVM, k-NN, naive Bayes, decision tree, Fisher LDA,
plus stratified cross-validation and text persistence."""

from clinicalqa.classifiers.crossval import CrossValResult, accuracy, cross_validate, stratified_folds
from clinicalqa.classifiers.dataset import LabeledDataset
from clinicalqa.classifiers.fisher import FisherClassifier, FisherModel, biased_covariance, fisher_train
from clinicalqa.classifiers.knn import KnnClassifier
from clinicalqa.classifiers.naive_bayes import NaiveBayesClassifier
from clinicalqa.classifiers.persist import (
    LineReader,
    ModelFormatError,
    emit_model,
    load_model,
    read_model,
    save_model,
)
from clinicalqa.classifiers.svm import (
    SvmBinary,
    SvmModel,
    SvmMulticlass,
    erbf_kernel,
    svm_predict,
    svm_train,
)
from clinicalqa.classifiers.tree import (
    DecisionTreeClassifier,
    TreeNode,
    best_split,
    candidate_thresholds,
    entropy,
    information_gain,
)

CLASSIFIER_NAMES = ("svm", "knn", "naive_bayes", "tree", "fisher")


def make_classifier(name: str, **kwargs):
    """Factory for the five classifier families by short name."""
    if name == "svm":
        return SvmMulticlass(**kwargs)
    if name == "knn":
        return KnnClassifier(**kwargs)
    if name == "naive_bayes":
        return NaiveBayesClassifier(**kwargs)
    if name == "tree":
        return DecisionTreeClassifier(**kwargs)
    if name == "fisher":
        return FisherClassifier(**kwargs)
    raise ValueError(f"unknown classifier {name!r}; choose from {CLASSIFIER_NAMES}")


__all__ = [
    "CLASSIFIER_NAMES",
    "CrossValResult",
    "DecisionTreeClassifier",
    "FisherClassifier",
    "FisherModel",
    "KnnClassifier",
    "LabeledDataset",
    "LineReader",
    "ModelFormatError",
    "emit_model",
    "read_model",
    "NaiveBayesClassifier",
    "SvmBinary",
    "SvmModel",
    "SvmMulticlass",
    "TreeNode",
    "accuracy",
    "best_split",
    "biased_covariance",
    "candidate_thresholds",
    "cross_validate",
    "entropy",
    "erbf_kernel",
    "fisher_train",
    "information_gain",
    "load_model",
    "make_classifier",
    "save_model",
    "stratified_folds",
    "svm_predict",
    "svm_train",
]
