"""Text persistence for trained classifiers.

Files begin with the header line ``qamodel 1`` and a ``kind`` line naming the
classifier.  Floats are written with repr() so a load reproduces the exact
bit pattern and predictions match the saved model everywhere.  Class labels
are stored as JSON scalars so str and int labels round-trip with their type.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from clinicalqa.classifiers.fisher import FisherClassifier, FisherModel
from clinicalqa.classifiers.knn import KnnClassifier
from clinicalqa.classifiers.naive_bayes import NaiveBayesClassifier
from clinicalqa.classifiers.svm import SvmBinary, SvmModel, SvmMulticlass
from clinicalqa.classifiers.tree import DecisionTreeClassifier, TreeNode

FORMAT_MAGIC = "qamodel"
FORMAT_VERSION = 1


class ModelFormatError(ValueError):
    pass


def _write_matrix(out: list[str], name: str, arr: np.ndarray) -> None:
    arr = np.asarray(arr, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[None, :]
    out.append(f"matrix {name} {arr.shape[0]} {arr.shape[1]}")
    for row in arr:
        out.append(" ".join(repr(float(v)) for v in row))


def _write_labels(out: list[str], name: str, labels: list) -> None:
    out.append(f"labels {name} {len(labels)}")
    for label in labels:
        out.append(json.dumps(label))


class _Reader:
    def __init__(self, lines: list[str]):
        self.lines = lines
        self.pos = 0

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise ModelFormatError("unexpected end of model file")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def expect(self, keyword: str) -> list[str]:
        line = self.next()
        parts = line.split(" ")
        if parts[0] != keyword:
            raise ModelFormatError(f"expected {keyword!r} at line {self.pos}, got {line!r}")
        return parts[1:]

    def scalar(self, keyword: str) -> str:
        parts = self.expect(keyword)
        if len(parts) != 1:
            raise ModelFormatError(f"{keyword!r} line needs exactly one value")
        return parts[0]

    def matrix(self, name: str) -> np.ndarray:
        parts = self.expect("matrix")
        if parts[0] != name:
            raise ModelFormatError(f"expected matrix {name!r}, got {parts[0]!r}")
        rows, cols = int(parts[1]), int(parts[2])
        data = np.empty((rows, cols))
        for i in range(rows):
            values = self.next().split(" ")
            if len(values) != cols:
                raise ModelFormatError(f"matrix {name!r} row {i} has {len(values)} values, wanted {cols}")
            data[i] = [float(v) for v in values]
        return data

    def labels(self, name: str) -> list:
        parts = self.expect("labels")
        if parts[0] != name:
            raise ModelFormatError(f"expected labels {name!r}, got {parts[0]!r}")
        return [json.loads(self.next()) for _ in range(int(parts[1]))]


LineReader = _Reader  # public name for composite formats that embed a model


def _emit_svm_member(out: list[str], model: SvmModel) -> None:
    out.append(f"theta {repr(float(model.theta))}")
    _write_matrix(out, "lambdas", model.lambdas)
    _write_matrix(out, "support_y", model.support_y)
    _write_matrix(out, "support_x", model.support_x)


def _read_svm_member(reader: _Reader, gamma: float, d_penalty: float) -> SvmModel:
    theta = float(reader.scalar("theta"))
    lambdas = reader.matrix("lambdas")[0]
    support_y = reader.matrix("support_y")[0]
    support_x = reader.matrix("support_x")
    return SvmModel(support_x=support_x, support_y=support_y, lambdas=lambdas,
                    theta=theta, gamma=gamma, d_penalty=d_penalty)


def _emit_tree(out: list[str], node: TreeNode) -> None:
    if node.is_leaf:
        out.append(f"leaf {json.dumps(node.label)}")
    else:
        out.append(f"node {node.feature} {repr(float(node.threshold))}")
        _emit_tree(out, node.left)
        _emit_tree(out, node.right)


def _read_tree(reader: _Reader) -> TreeNode:
    line = reader.next()
    keyword, _, rest = line.partition(" ")
    if keyword == "leaf":
        return TreeNode(label=json.loads(rest))
    if keyword == "node":
        feature_s, _, threshold_s = rest.partition(" ")
        node = TreeNode(feature=int(feature_s), threshold=float(threshold_s))
        node.left = _read_tree(reader)
        node.right = _read_tree(reader)
        return node
    raise ModelFormatError(f"bad tree line: {line!r}")


def emit_model(model) -> list[str]:
    """Serialize a fitted classifier to text lines (header included)."""
    out: list[str] = [f"{FORMAT_MAGIC} {FORMAT_VERSION}"]
    if isinstance(model, SvmMulticlass):
        assert model.members is not None, "fit first"
        out.append("kind svm_multiclass")
        out.append(f"gamma {repr(float(model.gamma))}")
        out.append(f"d_penalty {repr(float(model.d_penalty))}")
        _write_labels(out, "classes", model.classes)
        out.append(f"members {len(model.members)}")
        for member in model.members:
            _emit_svm_member(out, member)
    elif isinstance(model, SvmBinary):
        assert model.model is not None, "fit first"
        out.append("kind svm_binary")
        out.append(f"gamma {repr(float(model.gamma))}")
        out.append(f"d_penalty {repr(float(model.d_penalty))}")
        _write_labels(out, "classes", model.classes)
        _emit_svm_member(out, model.model)
    elif isinstance(model, KnnClassifier):
        assert model.x is not None, "fit first"
        out.append("kind knn")
        out.append(f"k {model.k}")
        _write_labels(out, "classes", model.classes)
        _write_labels(out, "y", model.y)
        _write_matrix(out, "x", model.x)
    elif isinstance(model, NaiveBayesClassifier):
        assert model.log_prior is not None, "fit first"
        out.append("kind naive_bayes")
        _write_labels(out, "classes", model.classes)
        _write_matrix(out, "log_prior", model.log_prior)
        _write_matrix(out, "log_cond", model.log_cond)
    elif isinstance(model, DecisionTreeClassifier):
        assert model.root is not None, "fit first"
        out.append("kind tree")
        _write_labels(out, "classes", model.classes)
        _emit_tree(out, model.root)
    elif isinstance(model, FisherClassifier):
        out.append("kind fisher")
        _write_labels(out, "classes", model.classes)
        members = [model.binary] if model.binary is not None else model.members
        assert members is not None, "fit first"
        out.append(f"members {len(members)}")
        for member in members:
            out.append(f"threshold {repr(float(member.threshold))}")
            out.append(f"mean0_proj {repr(float(member.mean0_proj))}")
            out.append(f"mean1_proj {repr(float(member.mean1_proj))}")
            out.append(f"used_pinv {int(member.used_pinv)}")
            _write_matrix(out, "w", member.w)
    else:
        raise ModelFormatError(f"cannot persist {type(model).__name__}")
    return out


def save_model(model, path: str | Path) -> None:
    Path(path).write_text("\n".join(emit_model(model)) + "\n", encoding="utf-8")


def read_model(reader: _Reader):
    """Inverse of emit_model, consuming lines from a reader."""
    header = reader.next().split(" ")
    if header[0] != FORMAT_MAGIC:
        raise ModelFormatError(f"not a model file: header {header!r}")
    if int(header[1]) != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format version {header[1]}")
    kind = reader.scalar("kind")
    if kind == "svm_multiclass":
        gamma = float(reader.scalar("gamma"))
        d_penalty = float(reader.scalar("d_penalty"))
        model = SvmMulticlass(d_penalty=d_penalty, gamma=gamma)
        model.classes = reader.labels("classes")
        count = int(reader.scalar("members"))
        model.members = [_read_svm_member(reader, gamma, d_penalty) for _ in range(count)]
        return model
    if kind == "svm_binary":
        gamma = float(reader.scalar("gamma"))
        d_penalty = float(reader.scalar("d_penalty"))
        model = SvmBinary(d_penalty=d_penalty, gamma=gamma)
        model.classes = reader.labels("classes")
        model.model = _read_svm_member(reader, gamma, d_penalty)
        return model
    if kind == "knn":
        model = KnnClassifier(k=int(reader.scalar("k")))
        model.classes = reader.labels("classes")
        model.y = reader.labels("y")
        model.x = np.ascontiguousarray(reader.matrix("x"))
        return model
    if kind == "naive_bayes":
        model = NaiveBayesClassifier()
        model.classes = reader.labels("classes")
        model.log_prior = reader.matrix("log_prior")[0]
        model.log_cond = reader.matrix("log_cond")
        return model
    if kind == "tree":
        model = DecisionTreeClassifier()
        model.classes = reader.labels("classes")
        model.root = _read_tree(reader)
        return model
    if kind == "fisher":
        model = FisherClassifier()
        model.classes = reader.labels("classes")
        count = int(reader.scalar("members"))
        members = []
        for _ in range(count):
            threshold = float(reader.scalar("threshold"))
            mean0 = float(reader.scalar("mean0_proj"))
            mean1 = float(reader.scalar("mean1_proj"))
            used_pinv = bool(int(reader.scalar("used_pinv")))
            w = reader.matrix("w")[0]
            members.append(FisherModel(w=w, threshold=threshold, mean0_proj=mean0,
                                       mean1_proj=mean1, used_pinv=used_pinv))
        if count == 1 and len(model.classes) == 2:
            model.binary = members[0]
        else:
            model.members = members
        return model
    raise ModelFormatError(f"unknown model kind {kind!r}")


def load_model(path: str | Path):
    text = Path(path).read_text(encoding="utf-8")
    return read_model(_Reader(text.splitlines()))
