"""Shared fixtures: the seven-PI aggregate table and a small scored corpus."""

import json

import pytest

from citefrac import load_corpus

# Published aggregate columns for the seven research units: label, paper count,
# citation count, mean citations/paper (+sem), journal-normalized mean of
# ratios (+sem), journal ratio-of-sums, fractional citation sum, fractional
# mean (+sem), field ratio-of-sums.
SEVEN_UNIT_ROWS = [
    {"unit": "6", "sum_p": 23, "sum_c": 891, "mean_cpp": 38.74, "mean_cpp_sem": 13.67,
     "mean_citation_score": 2.03, "mean_citation_score_sem": 0.55, "cpp_jcsm": 2.18,
     "sum_cf": 31.95, "mean_cf": 1.39, "mean_cf_sem": 0.50, "cpp_fcsm": 2.94},
    {"unit": "14", "sum_p": 37, "sum_c": 962, "mean_cpp": 26.00, "mean_cpp_sem": 4.09,
     "mean_citation_score": 1.74, "mean_citation_score_sem": 0.19, "cpp_jcsm": 1.86,
     "sum_cf": 30.32, "mean_cf": 0.82, "mean_cf_sem": 0.13, "cpp_fcsm": 3.20},
    {"unit": "26", "sum_p": 22, "sum_c": 567, "mean_cpp": 25.77, "mean_cpp_sem": 5.78,
     "mean_citation_score": 1.54, "mean_citation_score_sem": 0.23, "cpp_jcsm": 1.56,
     "sum_cf": 21.74, "mean_cf": 0.99, "mean_cf_sem": 0.25, "cpp_fcsm": 2.17},
    {"unit": "117", "sum_p": 32, "sum_c": 197, "mean_cpp": 6.16, "mean_cpp_sem": 1.30,
     "mean_citation_score": 1.50, "mean_citation_score_sem": 0.29, "cpp_jcsm": 1.00,
     "sum_cf": 6.83, "mean_cf": 0.21, "mean_cf_sem": 0.44, "cpp_fcsm": 0.92},
    {"unit": "118", "sum_p": 37, "sum_c": 402, "mean_cpp": 10.86, "mean_cpp_sem": 2.21,
     "mean_citation_score": 0.93, "mean_citation_score_sem": 0.13, "cpp_jcsm": 1.00,
     "sum_cf": 16.08, "mean_cf": 0.43, "mean_cf_sem": 0.09, "cpp_fcsm": 1.43},
    {"unit": "206", "sum_p": 65, "sum_c": 647, "mean_cpp": 9.96, "mean_cpp_sem": 1.57,
     "mean_citation_score": 0.91, "mean_citation_score_sem": 0.11, "cpp_jcsm": 0.58,
     "sum_cf": 21.90, "mean_cf": 0.34, "mean_cf_sem": 0.05, "cpp_fcsm": 0.87},
    {"unit": "223", "sum_p": 32, "sum_c": 354, "mean_cpp": 11.06, "mean_cpp_sem": 1.74,
     "mean_citation_score": 0.78, "mean_citation_score_sem": 0.12, "cpp_jcsm": 0.43,
     "sum_cf": 12.40, "mean_cf": 0.39, "mean_cf_sem": 0.08, "cpp_fcsm": 0.72},
]

MCS_COLUMN = [r["mean_citation_score"] for r in SEVEN_UNIT_ROWS]
JCSM_COLUMN = [r["cpp_jcsm"] for r in SEVEN_UNIT_ROWS]
MEAN_CF_COLUMN = [r["mean_cf"] for r in SEVEN_UNIT_ROWS]
FCSM_COLUMN = [r["cpp_fcsm"] for r in SEVEN_UNIT_ROWS]


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")
    return path


def seven_unit_records():
    """The aggregate table as a corpus: stub pubs carry the oeuvre sizes, the
    published column values ride on the units as given aggregates."""
    records = []
    for row in SEVEN_UNIT_ROWS:
        unit = row["unit"]
        pub_ids = [f"p{unit}-{i}" for i in range(1, row["sum_p"] + 1)]
        for pub_id in pub_ids:
            records.append({
                "kind": "pub", "id": pub_id, "year": 2000,
                "journal": f"jr{unit}", "fields": [], "n_refs": 1,
            })
        given = {k: v for k, v in row.items() if k != "unit"}
        records.append({
            "kind": "unit", "id": unit, "label": f"rank {unit}",
            "pubs": pub_ids, "given": given,
        })
    return records


DEMO_RECORDS = [
    {"kind": "pub", "id": "P1", "year": 2001, "journal": "J1", "fields": ["F1"],
     "n_refs": 2, "citations_received": 2},
    {"kind": "pub", "id": "P2", "year": 2002, "journal": "J1", "fields": ["F1", "F2"],
     "n_refs": 6},
    {"kind": "pub", "id": "P3", "year": 2001, "journal": "J2", "fields": ["F2"],
     "n_refs": 40},
    {"kind": "pub", "id": "C1", "year": 2003, "journal": "JX", "fields": [], "n_refs": 6},
    {"kind": "pub", "id": "C2", "year": 2003, "journal": "JX", "fields": [], "n_refs": 40},
    {"kind": "pub", "id": "C3", "year": 2002, "journal": "JX", "fields": [], "n_refs": 1},
    {"kind": "pub", "id": "C4", "year": 2003, "journal": "JX", "fields": [], "n_refs": 4},
    {"kind": "edge", "citing": "C1", "cited": "P1", "year": 2003},
    {"kind": "edge", "citing": "C1", "cited": "P3", "year": 2003},
    {"kind": "edge", "citing": "C2", "cited": "P1", "year": 2003},
    {"kind": "edge", "citing": "C3", "cited": "P2", "year": 2002},
    {"kind": "edge", "citing": "C4", "cited": "P3", "year": 2003},
    {"kind": "unit", "id": "U1", "label": "group one", "pubs": ["P1", "P2"]},
    {"kind": "unit", "id": "U2", "label": "group two", "pubs": ["P3"]},
]

DEMO_RATES = [
    {"kind": "rate", "table": "journal", "key": "J1", "value": 4.0},
    {"kind": "rate", "table": "journal", "key": "J2", "value": 2.0},
    {"kind": "rate", "table": "journal", "key": "JX", "value": 1.0},
    {"kind": "rate", "table": "field", "key": "F1", "value": 2.0},
    {"kind": "rate", "table": "field", "key": "F2", "value": 4.0},
]

# journal window fixture: two papers published in t-1/t-2, each cited once in
# year t by papers with 4 and 5 references -> (1/4 + 1/5) / 2 = 0.225
FIF_RECORDS = [
    {"kind": "pub", "id": "W1", "year": 2001, "journal": "JW", "fields": [], "n_refs": 5},
    {"kind": "pub", "id": "W2", "year": 2002, "journal": "JW", "fields": [], "n_refs": 3},
    {"kind": "pub", "id": "W3", "year": 1999, "journal": "JW", "fields": [], "n_refs": 3},
    {"kind": "pub", "id": "CA", "year": 2003, "journal": "JX", "fields": [], "n_refs": 4},
    {"kind": "pub", "id": "CB", "year": 2003, "journal": "JX", "fields": [], "n_refs": 5},
    {"kind": "edge", "citing": "CA", "cited": "W1", "year": 2003},
    {"kind": "edge", "citing": "CB", "cited": "W2", "year": 2003},
    {"kind": "edge", "citing": "CB", "cited": "W3", "year": 2003},
]


@pytest.fixture(scope="session")
def aggregate_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "aggregates.jsonl"
    return write_jsonl(path, seven_unit_records())


@pytest.fixture(scope="session")
def aggregate_corpus(aggregate_path):
    return load_corpus(aggregate_path)


@pytest.fixture(scope="session")
def demo_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "demo.jsonl"
    return write_jsonl(path, DEMO_RECORDS)


@pytest.fixture(scope="session")
def demo_rates_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "rates.jsonl"
    return write_jsonl(path, DEMO_RATES)


@pytest.fixture()
def demo_corpus(demo_path):
    return load_corpus(demo_path)


@pytest.fixture(scope="session")
def fif_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "fif.jsonl"
    return write_jsonl(path, FIF_RECORDS)


@pytest.fixture()
def fif_corpus(fif_path):
    return load_corpus(fif_path)
