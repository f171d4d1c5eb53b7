"""Shared fixtures: a tiny lexicon and corpus small enough to hand-check."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from clinicalqa import conceptmap, corpus

TINY_LEXICON = """\
# surface\tcanonical\ttag
aspirin\taspirin\tPharmacologic Substance
ibuprofen\tibuprofen\tPharmacologic Substance
sumatriptan\tsumatriptan\tPharmacologic Substance
drug of choice\tdrug of choice\tPharmacologic Substance
headache\theadache\tSign or Symptom
nausea\tnausea\tSign or Symptom
migraine\tmigraine\tFinding
gout\tgout\tFinding
dose\tdose\tQuantitative Concept
dosage\tdose\tQuantitative Concept
treatment\ttreatment\tTherapeutic or Preventive Procedure
blood pressure\tblood pressure\tLaboratory or Test Results
adverse effect\tadverse effect\tQualitative Concept
randomized controlled trial\trandomized controlled trial\tResearch Activity
cohort study\tcohort study\tResearch Activity
systematic review\tsystematic review\tIntellectual Product
gene\tgene\tGene or Genome
"""

TINY_DOCS = [
    {"id": "d1", "label": "intervention",
     "title": "Sumatriptan for migraine.",
     "abstract": "We ran a randomized controlled trial of sumatriptan for migraine. "
                 "Sumatriptan is the drug of choice for migraine. "
                 "Headache scores fell by half."},
    {"id": "d2", "label": "intervention",
     "title": "Ibuprofen dosing in migraine.",
     "abstract": "A randomized controlled trial compared two ibuprofen regimens. "
                 "The usual dose of ibuprofen for migraine is 400 mg. "
                 "Nausea was the main complaint."},
    {"id": "d3", "label": "non_intervention",
     "title": "Aspirin and blood pressure: a cohort study.",
     "abstract": "In a cohort study of aspirin users, blood pressure was tracked. "
                 "No adverse effect on blood pressure was seen."},
    {"id": "d4", "label": "non_intervention",
     "title": "Headache frequency in a gout cohort study.",
     "abstract": "This cohort study followed gout patients. "
                 "Headache frequency did not differ from controls."},
    {"id": "d5", "label": "non_evidence",
     "title": "A systematic review of migraine genetics.",
     "abstract": "This systematic review covers every gene linked to migraine. "
                 "No treatment conclusions can be drawn."},
    {"id": "d6", "label": "non_evidence",
     "title": "Gene panels in headache research: systematic review.",
     "abstract": "A systematic review of gene panels. "
                 "Methods varied widely."},
]


@pytest.fixture(scope="session")
def tiny_lexicon_path(tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("lex") / "lexicon.tsv"
    path.write_text(TINY_LEXICON, encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def tiny_lexicon(tiny_lexicon_path) -> conceptmap.Lexicon:
    return conceptmap.load_lexicon(tiny_lexicon_path)


@pytest.fixture(scope="session")
def tiny_corpus_path(tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("corpus") / "docs.jsonl"
    path.write_text("\n".join(json.dumps(d) for d in TINY_DOCS) + "\n", encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def tiny_docs(tiny_corpus_path) -> list[corpus.AbstractDoc]:
    return corpus.parse_corpus(tiny_corpus_path)


@pytest.fixture(scope="session")
def bundled_data_dir() -> Path:
    import clinicalqa.data

    return Path(list(clinicalqa.data.__path__)[0])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one pass/fail line per acceptance criterion after the run."""
    rows = []
    for outcome, label in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py::" in nodeid and getattr(report, "when", "call") == "call":
                name = nodeid.split("::")[-1]
                criterion = name.removeprefix("test_").replace("_", " ")
                rows.append((criterion, label))
    if not rows:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for criterion, label in sorted(rows):
        terminalreporter.write_line(f"[{label}] {criterion}")
