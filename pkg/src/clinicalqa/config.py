"""Pipeline configuration.

Configs live in JSON files.  Relative paths are resolved against the config
file's directory, so a config can travel with its data.  Derived artifact
paths (index, models, reports) all land in ``workdir``.

    {
      "corpus": "mini_corpus.jsonl",
      "lexicon": "lexicon.tsv",
      "questions": "questions.tsv",
      "gold": "gold.tsv",
      "workdir": "build",
      "top_k": 10,
      "phrase_bias": 1.0,
      "tag_bias": 1.0,
      "seed": 7,
      "doc_stage":   {"algorithm": "svm", "feature_set": "phrases+tags", "hyper": {}},
      "gate_stage":  {"algorithm": "svm", "feature_set": "phrases+tags", "hyper": {}},
      "focus_stage": {"algorithm": "svm", "feature_set": "phrases+tags", "hyper": {}}
    }

Hyperparameter defaults come from the classifier modules (D=500,
gamma=0.005 for the SVM; k=3 for KNN) and the retrieval module (top 10).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from clinicalqa.classifiers import CLASSIFIER_NAMES


class ConfigError(ValueError):
    """Raised for unreadable or invalid configuration."""


@dataclass
class StageConfig:
    algorithm: str = "svm"
    feature_set: str = "phrases+tags"
    hyper: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.algorithm not in CLASSIFIER_NAMES:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}; "
                              f"choose from {CLASSIFIER_NAMES}")

    def to_json(self) -> dict:
        return {"algorithm": self.algorithm, "feature_set": self.feature_set,
                "hyper": dict(self.hyper)}


@dataclass
class PipelineConfig:
    corpus: Path
    lexicon: Path
    workdir: Path
    questions: Path | None = None
    gold: Path | None = None
    top_k: int = 10
    phrase_bias: float = 1.0
    tag_bias: float = 1.0
    seed: int = 7
    doc_stage: StageConfig = field(default_factory=StageConfig)
    gate_stage: StageConfig = field(default_factory=StageConfig)
    focus_stage: StageConfig = field(default_factory=StageConfig)

    def __post_init__(self):
        if self.top_k < 1:
            raise ConfigError(f"top_k must be >= 1, got {self.top_k}")

    # artifact locations, all inside the working directory
    @property
    def index_path(self) -> Path:
        return self.workdir / "index.qaidx"

    @property
    def evidence_index_path(self) -> Path:
        return self.workdir / "evidence_index.qaidx"

    @property
    def doc_model_path(self) -> Path:
        return self.workdir / "doc_model.txt"

    @property
    def gate_model_path(self) -> Path:
        return self.workdir / "gate_model.txt"

    @property
    def focus_model_path(self) -> Path:
        return self.workdir / "focus_model.txt"

    @property
    def report_path(self) -> Path:
        return self.workdir / "eval_report.txt"

    def to_json(self) -> dict:
        payload = {
            "corpus": str(self.corpus),
            "lexicon": str(self.lexicon),
            "workdir": str(self.workdir),
            "top_k": self.top_k,
            "phrase_bias": self.phrase_bias,
            "tag_bias": self.tag_bias,
            "seed": self.seed,
            "doc_stage": self.doc_stage.to_json(),
            "gate_stage": self.gate_stage.to_json(),
            "focus_stage": self.focus_stage.to_json(),
        }
        if self.questions is not None:
            payload["questions"] = str(self.questions)
        if self.gold is not None:
            payload["gold"] = str(self.gold)
        return payload


def _stage(raw: dict | None, name: str) -> StageConfig:
    if raw is None:
        return StageConfig()
    if not isinstance(raw, dict):
        raise ConfigError(f"{name} must be an object")
    unknown = set(raw) - {"algorithm", "feature_set", "hyper"}
    if unknown:
        raise ConfigError(f"{name}: unknown keys {sorted(unknown)}")
    return StageConfig(algorithm=raw.get("algorithm", "svm"),
                       feature_set=raw.get("feature_set", "phrases+tags"),
                       hyper=dict(raw.get("hyper", {})))


def load_config(path: str | Path) -> PipelineConfig:
    """Parse and validate a JSON config; input paths must exist."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    known = {"corpus", "lexicon", "workdir", "questions", "gold", "top_k",
             "phrase_bias", "tag_bias", "seed", "doc_stage", "gate_stage",
             "focus_stage"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"config {path}: unknown keys {sorted(unknown)}")
    for key in ("corpus", "lexicon", "workdir"):
        if key not in raw:
            raise ConfigError(f"config {path} is missing required key {key!r}")

    base = path.parent

    def resolve(p: str) -> Path:
        candidate = Path(p)
        return candidate if candidate.is_absolute() else (base / candidate)

    config = PipelineConfig(
        corpus=resolve(raw["corpus"]),
        lexicon=resolve(raw["lexicon"]),
        workdir=resolve(raw["workdir"]),
        questions=resolve(raw["questions"]) if "questions" in raw else None,
        gold=resolve(raw["gold"]) if "gold" in raw else None,
        top_k=int(raw.get("top_k", 10)),
        phrase_bias=float(raw.get("phrase_bias", 1.0)),
        tag_bias=float(raw.get("tag_bias", 1.0)),
        seed=int(raw.get("seed", 7)),
        doc_stage=_stage(raw.get("doc_stage"), "doc_stage"),
        gate_stage=_stage(raw.get("gate_stage"), "gate_stage"),
        focus_stage=_stage(raw.get("focus_stage"), "focus_stage"),
    )
    for name, p in (("corpus", config.corpus), ("lexicon", config.lexicon)):
        if not p.exists():
            raise ConfigError(f"{name} file not found: {p}")
    for name, p in (("questions", config.questions), ("gold", config.gold)):
        if p is not None and not p.exists():
            raise ConfigError(f"{name} file not found: {p}")
    return config


def save_config(config: PipelineConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(config.to_json(), indent=2) + "\n", encoding="utf-8")


def bundled_config(workdir: str | Path) -> PipelineConfig:
    """A config over the data files shipped inside the package, with
    artifacts going to ``workdir``; handy for demos and tests."""
    data = resources.files("clinicalqa.data")
    return PipelineConfig(
        corpus=Path(str(data.joinpath("mini_corpus.jsonl"))),
        lexicon=Path(str(data.joinpath("lexicon.tsv"))),
        questions=Path(str(data.joinpath("questions.tsv"))),
        gold=Path(str(data.joinpath("gold.tsv"))),
        workdir=Path(workdir),
    )
