"""The worked-example registry: fixture topologies are frozen, every recorded
claim must pass, and the reports must be stable across runs."""
import json

import pytest

from confounders.errors import UnknownNode
from confounders.registry import REGISTRY_NAMES, get_entry, registry_entries, run_paper_suite


def test_registry_names_and_order():
    assert REGISTRY_NAMES == ("Fig1", "Fig2", "Fig3", "Fig4", "Prop5")
    assert tuple(e.name for e in registry_entries()) == REGISTRY_NAMES


def test_unknown_entry_rejected():
    with pytest.raises(UnknownNode):
        get_entry("Fig9")


def test_every_entry_ships_dag_and_model():
    for entry in registry_entries():
        assert entry.dag.exposure == "A" and entry.dag.outcome == "Y"
        assert entry.model.dag is entry.dag
        assert entry.summary


def test_frozen_topologies():
    want = {
        "Fig1": (
            ("C1", "A"),
            ("C1", "C3"),
            ("C2", "C3"),
            ("C2", "Y"),
            ("A", "Y"),
        ),
        "Fig2": (
            ("C1", "C2"),
            ("C1", "A"),
            ("C2", "A"),
            ("C1", "Y"),
            ("A", "Y"),
        ),
        "Fig3": (("C1", "C2"), ("C2", "A"), ("C1", "Y"), ("A", "Y")),
        "Fig4": (("C1", "C2"), ("C1", "A"), ("C1", "Y"), ("A", "Y")),
        "Prop5": (("C", "A"), ("C", "Y"), ("A", "Y")),
    }
    for name, edges in want.items():
        assert set(get_entry(name).dag.edges) == set(edges), name


def test_suite_all_claims_pass():
    result = run_paper_suite()
    assert result.passed
    assert result.failures() == ()
    assert len(result.rows) >= 80


def test_suite_rows_carry_observations():
    for row in run_paper_suite().rows:
        assert row.claim and isinstance(row.claim, str)
        assert row.passed is (row.expected == row.observed)


def test_suite_text_report():
    result = run_paper_suite()
    text = result.to_text()
    assert text.count("PASS") == len(result.rows)
    assert "FAIL" not in text
    assert f"OK: {len(result.rows)}/{len(result.rows)} claims hold" in text


def test_suite_json_report():
    result = run_paper_suite()
    payload = json.loads(result.to_json())
    assert payload["passed"] is True
    assert len(payload["rows"]) == len(result.rows)
    for row in payload["rows"]:
        assert set(row) == {"claim", "expected", "observed", "passed"}


def test_suite_deterministic():
    a, b = run_paper_suite(), run_paper_suite()
    assert a.to_text() == b.to_text()
    assert a.to_json() == b.to_json()


def test_claim_labels_cover_every_group():
    rows = run_paper_suite().rows
    prefixes = {row.claim.split(":")[0] for row in rows}
    assert {"Fig1", "Fig4", "Prop1", "Prop2", "Prop3", "Prop5"} <= prefixes
