"""Backdoor sufficiency and minimal adjustment sets, cross-checked against a
brute-force oracle that enumerates and blocks paths from scratch."""
import random

import pytest

from confounders.adjust import (
    AdjustmentVerdict,
    MinimalSetCatalog,
    backdoor_paths,
    is_sufficient,
    minimal_sufficient_sets,
    subsets_canonical,
    union_of_minimal,
)
from confounders.errors import NonCovariateInSet, SizeLimit
from confounders.graph import Dag
from confounders.fuzz import random_dag
from helpers_oracle import naive_backdoor_sufficient, naive_minimal_sets

FORK = Dag(("C1", "A", "Y"), (("C1", "A"), ("C1", "Y"), ("A", "Y")), "A", "Y")
TWO_ROUTES = Dag(
    ("C1", "C2", "A", "Y"),
    (("C1", "A"), ("C1", "C2"), ("C2", "Y"), ("A", "Y")),
    "A",
    "Y",
)


def test_subsets_canonical_order():
    got = tuple(subsets_canonical(("B", "A")))
    assert got == ((), ("A",), ("B",), ("A", "B"))


def test_subsets_canonical_max_size():
    got = tuple(subsets_canonical(("A", "B", "C"), max_size=1))
    assert got == ((), ("A",), ("B",), ("C",))


def test_backdoor_paths_fork():
    assert [str(p) for p in backdoor_paths(FORK)] == ["A <- C1 -> Y"]


def test_is_sufficient_fork():
    empty = is_sufficient(FORK, ())
    assert not empty.sufficient
    assert str(empty.open_backdoor_witness) == "A <- C1 -> Y"
    full = is_sufficient(FORK, ("C1",))
    assert full.sufficient and full.minimal
    assert full.open_backdoor_witness is None


def test_is_sufficient_flags_non_minimal():
    dag = Dag(
        ("C1", "C2", "A", "Y"),
        (("C1", "A"), ("C1", "Y"), ("C2", "Y"), ("A", "Y")),
        "A",
        "Y",
    )
    verdict = is_sufficient(dag, ("C1", "C2"))
    assert verdict.sufficient and not verdict.minimal


def test_is_sufficient_rejects_non_covariate():
    with pytest.raises(NonCovariateInSet):
        is_sufficient(FORK, ("Y",))
    with pytest.raises(NonCovariateInSet):
        is_sufficient(FORK, ("nope",))


def test_minimal_sets_two_routes():
    catalog = minimal_sufficient_sets(TWO_ROUTES)
    assert catalog.sets == (("C1",), ("C2",))
    assert catalog.union == ("C1", "C2")
    assert ("C1",) in catalog and ("C2", "C1") not in catalog
    assert not catalog.member_of_all("C1")
    assert catalog.member_of_any("C2")


def test_minimal_sets_empty_when_no_backdoor():
    dag = Dag(("A", "M", "Y"), (("A", "M"), ("M", "Y")), "A", "Y")
    catalog = minimal_sufficient_sets(dag)
    assert catalog.sets == ((),)
    assert catalog.union == ()


def test_union_of_minimal_is_sufficient_verdict():
    verdict = union_of_minimal(TWO_ROUTES)
    assert isinstance(verdict, AdjustmentVerdict)
    assert verdict.set == ("C1", "C2") and verdict.sufficient


def test_union_accepts_precomputed_catalog():
    catalog = minimal_sufficient_sets(TWO_ROUTES)
    assert union_of_minimal(TWO_ROUTES, catalog) == union_of_minimal(TWO_ROUTES)


def test_pool_size_cap():
    n = 30
    names = tuple(f"C{i}" for i in range(n)) + ("A", "Y")
    edges = tuple((f"C{i}", "A") for i in range(n)) + tuple(
        (f"C{i}", "Y") for i in range(n)
    ) + (("A", "Y"),)
    dag = Dag(names, edges, "A", "Y")
    with pytest.raises(SizeLimit):
        minimal_sufficient_sets(dag)


def test_sufficiency_matches_textbook_criterion():
    rng = random.Random(17)
    for _ in range(80):
        dag = random_dag(rng, rng.randint(3, 7), 0.4)
        pool = dag.covariate_pool
        subset = tuple(v for v in pool if rng.random() < 0.5)
        want = naive_backdoor_sufficient(dag.edges, dag.exposure, dag.outcome, subset)
        assert is_sufficient(dag, subset).sufficient == want


def test_minimal_sets_match_brute_force():
    rng = random.Random(23)
    for _ in range(60):
        dag = random_dag(rng, rng.randint(3, 7), 0.4)
        got = minimal_sufficient_sets(dag).sets
        want = naive_minimal_sets(dag.edges, dag.exposure, dag.outcome, dag.covariate_pool)
        assert set(got) == set(want)
        # canonical enumeration: size ascending, then lexicographic
        key = [(len(s), s) for s in got]
        assert key == sorted(key)


def test_minimal_sets_live_inside_ancestor_hull():
    rng = random.Random(29)
    for _ in range(60):
        dag = random_dag(rng, rng.randint(4, 8), 0.35)
        hull = dag.ancestors(dag.exposure) | dag.ancestors(dag.outcome)
        for s in minimal_sufficient_sets(dag).sets:
            assert set(s) <= hull


def test_union_of_minimal_always_sufficient():
    rng = random.Random(31)
    for _ in range(60):
        dag = random_dag(rng, rng.randint(3, 8), 0.4)
        assert union_of_minimal(dag).sufficient
