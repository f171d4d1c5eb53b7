"""Command-line verbs, exit codes, and output formats."""

from __future__ import annotations

import json

import pytest

from clinicalqa import cli

QUESTIONS_TSV = """\
What is the drug of choice for migraine?\t1\t1
What is the drug of choice for gout?\t1\t1
Name the drug of choice when headache strikes.\t1\t1
What is the dose of ibuprofen?\t1\t2
What is the usual dosage of aspirin?\t1\t2
At what dose should sumatriptan be given?\t1\t2
What is the best treatment for migraine?\t1\t3
Which treatment works for gout?\t1\t3
Is treatment of headache effective?\t1\t3
Can aspirin cause an adverse effect?\t1\t4
Does ibuprofen have an adverse effect on nausea?\t1\t4
Is an adverse effect of sumatriptan known?\t1\t4
Is the gene database complete?\t0\t-
Who funded the systematic review?\t0\t-
How long did the cohort study run?\t0\t-
"""

GOLD_TSV = (
    "q1\tWhat is the drug of choice for migraine?\td1\t1\n"
    "q2\tCan aspirin cause an adverse effect?\td3\t1\n"
)


def write_project(base, tiny_corpus_path, tiny_lexicon_path) -> str:
    (base / "questions.tsv").write_text(QUESTIONS_TSV, encoding="utf-8")
    (base / "gold.tsv").write_text(GOLD_TSV, encoding="utf-8")
    config_path = base / "config.json"
    config_path.write_text(json.dumps({
        "corpus": str(tiny_corpus_path),
        "lexicon": str(tiny_lexicon_path),
        "workdir": "work",
        "questions": "questions.tsv",
        "gold": "gold.tsv",
    }), encoding="utf-8")
    return str(config_path)


@pytest.fixture(scope="module")
def trained_config(tmp_path_factory, tiny_corpus_path, tiny_lexicon_path) -> str:
    base = tmp_path_factory.mktemp("cli")
    config_path = write_project(base, tiny_corpus_path, tiny_lexicon_path)
    assert cli.main(["index", "--config", config_path]) == 0
    assert cli.main(["train", "--config", config_path]) == 0
    return config_path


class TestIndexAndTrain:
    def test_index_reports_counts(self, tmp_path, tiny_corpus_path,
                                  tiny_lexicon_path, capsys):
        config_path = write_project(tmp_path, tiny_corpus_path, tiny_lexicon_path)
        assert cli.main(["index", "--config", config_path]) == 0
        out = capsys.readouterr().out
        assert "indexed 6 documents" in out

    def test_train_before_index_fails(self, tmp_path, tiny_corpus_path,
                                      tiny_lexicon_path, capsys):
        config_path = write_project(tmp_path, tiny_corpus_path, tiny_lexicon_path)
        assert cli.main(["train", "--config", config_path]) == 1
        err = capsys.readouterr().err
        assert err.startswith("error:")
        assert "run the index command first" in err

    def test_train_reports_summary(self, trained_config, capsys):
        assert cli.main(["train", "--config", trained_config]) == 0
        out = capsys.readouterr().out
        assert "trained on 6 documents; 4 kept as evidence" in out
        assert "questions: 15 total, 12 answerable" in out


class TestClassifyDocs:
    def test_stdout_tsv(self, trained_config, capsys):
        assert cli.main(["classify-docs", "--config", trained_config]) == 0
        out = capsys.readouterr().out
        lines = out.strip().splitlines()
        assert len(lines) == 6
        assert lines[0] == "d1\tintervention\tintervention"

    def test_out_file(self, trained_config, tmp_path, capsys):
        target = tmp_path / "decisions.tsv"
        assert cli.main(["classify-docs", "--config", trained_config,
                         "--out", str(target)]) == 0
        assert "wrote" in capsys.readouterr().out
        assert target.read_text(encoding="utf-8").startswith("d1\t")


class TestAsk:
    def test_json_payload(self, trained_config, capsys):
        assert cli.main(["ask", "--config", trained_config, "--json",
                         "What is the drug of choice for migraine?"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["answerable"] is True
        assert payload["results"][0]["doc_id"] == "d1"

    def test_text_rendering(self, trained_config, capsys):
        assert cli.main(["ask", "--config", trained_config,
                         "What is the drug of choice for migraine?"]) == 0
        out = capsys.readouterr().out
        assert "answerable: yes" in out
        assert "#1  [d1]  Sumatriptan for migraine." in out
        assert ">> Sumatriptan is the drug of choice for migraine." in out

    def test_refusal_rendering(self, trained_config, capsys):
        assert cli.main(["ask", "--config", trained_config,
                         "Who funded the systematic review?"]) == 0
        out = capsys.readouterr().out
        assert "answerable: no" in out
        assert "reason:" in out

    def test_bad_top_k_exits_2(self, trained_config, capsys):
        assert cli.main(["ask", "--config", trained_config, "--top-k", "0",
                         "anything"]) == 2
        assert "--top-k must be >= 1" in capsys.readouterr().err

    def test_before_training_fails(self, tmp_path, tiny_corpus_path,
                                   tiny_lexicon_path, capsys):
        config_path = write_project(tmp_path, tiny_corpus_path, tiny_lexicon_path)
        assert cli.main(["ask", "--config", config_path, "anything"]) == 1
        assert "run the train command first" in capsys.readouterr().err


class TestEval:
    def test_eval_writes_report(self, trained_config, tmp_path, capsys):
        target = tmp_path / "report.txt"
        assert cli.main(["eval", "--config", trained_config, "--out", str(target)]) == 0
        out = capsys.readouterr().out
        assert "MRR 1.00000" in out
        assert target.exists()


class TestErrors:
    def test_missing_config_exits_1(self, tmp_path, capsys):
        assert cli.main(["index", "--config", str(tmp_path / "none.json")]) == 1
        assert "error:" in capsys.readouterr().err

    def test_unknown_verb_exits_2(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["frobnicate"])
        assert excinfo.value.code == 2


class TestServe:
    def test_port_env_var_overrides_flag(self, trained_config, monkeypatch):
        import uvicorn

        captured = {}

        def fake_run(app, host, port, log_level):
            captured.update(host=host, port=port)

        monkeypatch.setattr(uvicorn, "run", fake_run)
        monkeypatch.setenv(cli.PORT_ENV_VAR, "7777")
        assert cli.main(["serve", "--config", trained_config, "--port", "9999"]) == 0
        assert captured == {"host": "127.0.0.1", "port": 7777}

    def test_port_flag_used_without_env(self, trained_config, monkeypatch):
        import uvicorn

        captured = {}

        def fake_run(app, host, port, log_level):
            captured.update(port=port)

        monkeypatch.setattr(uvicorn, "run", fake_run)
        monkeypatch.delenv(cli.PORT_ENV_VAR, raising=False)
        assert cli.main(["serve", "--config", trained_config, "--host", "0.0.0.0",
                         "--port", "9999"]) == 0
        assert captured == {"port": 9999}
