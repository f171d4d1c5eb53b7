"""Configuration loading, validation, and path resolution."""

from __future__ import annotations

import json

import pytest

from clinicalqa.config import (
    ConfigError,
    PipelineConfig,
    StageConfig,
    bundled_config,
    load_config,
    save_config,
)


def write_inputs(base):
    (base / "data").mkdir(parents=True, exist_ok=True)
    corpus = base / "data" / "docs.jsonl"
    corpus.write_text('{"id": "d1", "title": "T.", "abstract": "Body."}\n',
                      encoding="utf-8")
    lexicon = base / "data" / "lexicon.tsv"
    lexicon.write_text("aspirin\taspirin\tPharmacologic Substance\n", encoding="utf-8")
    return corpus, lexicon


def write_config(base, payload):
    path = base / "config.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


class TestStageConfig:
    def test_defaults(self):
        stage = StageConfig()
        assert stage.algorithm == "svm"
        assert stage.feature_set == "phrases+tags"
        assert stage.hyper == {}

    def test_unknown_algorithm_rejected(self):
        with pytest.raises(ConfigError, match="unknown algorithm"):
            StageConfig(algorithm="boosting")


class TestPipelineConfig:
    def test_artifacts_live_in_workdir(self, tmp_path):
        config = PipelineConfig(corpus=tmp_path / "c", lexicon=tmp_path / "l",
                                workdir=tmp_path / "work")
        for path in (config.index_path, config.evidence_index_path,
                     config.doc_model_path, config.gate_model_path,
                     config.focus_model_path, config.report_path):
            assert path.parent == tmp_path / "work"

    def test_top_k_validated(self, tmp_path):
        with pytest.raises(ConfigError, match="top_k"):
            PipelineConfig(corpus=tmp_path, lexicon=tmp_path,
                           workdir=tmp_path, top_k=0)


class TestLoadConfig:
    def test_relative_paths_resolve_against_config_directory(self, tmp_path):
        write_inputs(tmp_path)
        path = write_config(tmp_path, {"corpus": "data/docs.jsonl",
                                       "lexicon": "data/lexicon.tsv",
                                       "workdir": "build"})
        config = load_config(path)
        assert config.corpus == tmp_path / "data" / "docs.jsonl"
        assert config.lexicon == tmp_path / "data" / "lexicon.tsv"
        assert config.workdir == tmp_path / "build"
        assert config.questions is None and config.gold is None

    def test_absolute_paths_kept(self, tmp_path):
        corpus, lexicon = write_inputs(tmp_path)
        path = write_config(tmp_path, {"corpus": str(corpus),
                                       "lexicon": str(lexicon),
                                       "workdir": str(tmp_path / "w")})
        config = load_config(path)
        assert config.corpus == corpus

    def test_full_round_trip(self, tmp_path):
        corpus, lexicon = write_inputs(tmp_path)
        original = PipelineConfig(
            corpus=corpus, lexicon=lexicon, workdir=tmp_path / "work",
            top_k=5, phrase_bias=2.0, tag_bias=0.5, seed=99,
            doc_stage=StageConfig(algorithm="tree"),
            gate_stage=StageConfig(algorithm="svm", hyper={"gamma": 0.1}),
            focus_stage=StageConfig(algorithm="knn", hyper={"k": 5}))
        path = tmp_path / "saved.json"
        save_config(original, path)
        loaded = load_config(path)
        assert loaded == original

    def test_missing_required_key_rejected(self, tmp_path):
        path = write_config(tmp_path, {"corpus": "x"})
        with pytest.raises(ConfigError, match="missing required key"):
            load_config(path)

    def test_unknown_top_level_key_rejected(self, tmp_path):
        write_inputs(tmp_path)
        path = write_config(tmp_path, {"corpus": "data/docs.jsonl",
                                       "lexicon": "data/lexicon.tsv",
                                       "workdir": "build",
                                       "topk": 3})
        with pytest.raises(ConfigError, match="unknown keys.*topk"):
            load_config(path)

    def test_unknown_stage_key_rejected(self, tmp_path):
        write_inputs(tmp_path)
        path = write_config(tmp_path, {"corpus": "data/docs.jsonl",
                                       "lexicon": "data/lexicon.tsv",
                                       "workdir": "build",
                                       "gate_stage": {"kernel": "linear"}})
        with pytest.raises(ConfigError, match="gate_stage: unknown keys"):
            load_config(path)

    def test_stage_must_be_object(self, tmp_path):
        write_inputs(tmp_path)
        path = write_config(tmp_path, {"corpus": "data/docs.jsonl",
                                       "lexicon": "data/lexicon.tsv",
                                       "workdir": "build",
                                       "doc_stage": "svm"})
        with pytest.raises(ConfigError, match="must be an object"):
            load_config(path)

    def test_invalid_json_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError, match="not valid JSON"):
            load_config(path)

    def test_non_object_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ConfigError, match="JSON object"):
            load_config(path)

    def test_missing_config_file_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_config(tmp_path / "nowhere.json")

    def test_missing_input_file_rejected(self, tmp_path):
        path = write_config(tmp_path, {"corpus": "data/docs.jsonl",
                                       "lexicon": "data/lexicon.tsv",
                                       "workdir": "build"})
        with pytest.raises(ConfigError, match="corpus file not found"):
            load_config(path)


class TestBundledConfig:
    def test_bundled_inputs_exist(self, tmp_path):
        config = bundled_config(tmp_path / "work")
        assert config.corpus.exists()
        assert config.lexicon.exists()
        assert config.questions is not None and config.questions.exists()
        assert config.gold is not None and config.gold.exists()
        assert config.workdir == tmp_path / "work"
