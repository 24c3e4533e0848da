"""Acceptance gate: seven end-to-end criteria, one printed verdict line each.

Each test recomputes its claim from scratch (no registry shortcuts except
where the criterion is about the registry itself) and prints
'criterion N: PASS/FAIL (...)' through the capture bypass so the line shows
in any pytest run.
"""
import random
import time
from fractions import Fraction

from confounders.adjust import is_sufficient, subsets_canonical
from confounders.formats import format_3dec
from confounders.fuzz import FuzzConfig, fuzz, random_dag
from confounders.graph import d_separated
from confounders.registry import get_entry, run_paper_suite
from confounders.selection import (
    IndependenceOracle,
    backward_select,
    forward_select,
    robins_reduction,
)
from helpers_oracle import naive_d_separated

F = Fraction


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {n}: {detail}"


def test_criterion_1_effect_table(capsys):
    t0 = time.perf_counter()
    model = get_entry("Fig2").model
    checks = [
        model.ace() == F(1, 4),
        format_3dec(model.standardized_rd(())) == "0.266",
        format_3dec(model.standardized_rd(("C2",))) == "0.269",
        format_3dec(abs(model.bias(()))) == "0.016",
        format_3dec(abs(model.bias(("C2",)))) == "0.019",
        model.standardized_rd(("C1",)) == F(1, 4),
        model.standardized_rd(("C1", "C2")) == F(1, 4),
    ]
    elapsed = time.perf_counter() - t0
    ok = all(checks) and elapsed < 1.0
    report(capsys, 1, ok, f"effect table, {sum(checks)}/7 checks, {elapsed:.3f}s")


def test_criterion_2_counterfactual_table(capsys):
    t0 = time.perf_counter()
    model = get_entry("Prop5").model
    checks = [
        model.cf_joint(1).mean_y() == F(3, 10),
        model.cf_joint(0).mean_y() == F(2, 10),
        model.cond_expectation("Y", {"A": 1}) == F(4, 10),
        model.cond_expectation("Y", {"A": 0}) == F(3, 10),
        model.bias(()) == F(0),
        model.cf_unconfounded(()) is False,
    ]
    elapsed = time.perf_counter() - t0
    ok = all(checks) and elapsed < 1.0
    report(capsys, 2, ok, f"counterfactual table, {sum(checks)}/6 checks, {elapsed:.3f}s")


def test_criterion_3_claim_suite(capsys):
    t0 = time.perf_counter()
    result = run_paper_suite()
    elapsed = time.perf_counter() - t0
    n = len(result.rows)
    ok = result.passed and not result.failures()
    report(capsys, 3, ok, f"claim suite, {n - len(result.failures())}/{n} claims, {elapsed:.2f}s")


def test_criterion_4_theorem_fuzz(capsys):
    t0 = time.perf_counter()
    run = fuzz(FuzzConfig(n_nodes=8, edge_prob=0.3, n_trials=1000, seed=42))
    elapsed = time.perf_counter() - t0
    ok = run.ok and run.trials == 1000 and elapsed < 300
    report(
        capsys,
        4,
        ok,
        f"1000 DAGs, {len(run.hard_failures)} hard failures, {elapsed:.1f}s",
    )


def test_criterion_5_oracle_bridge(capsys):
    t0 = time.perf_counter()
    run = fuzz(
        FuzzConfig(n_nodes=6, edge_prob=0.4, n_trials=200, seed=42, with_models=True)
    )
    elapsed = time.perf_counter() - t0
    ok = run.ok and run.trials == 200
    report(
        capsys,
        5,
        ok,
        f"200 models, {len(run.hard_failures)} hard failures, {elapsed:.1f}s",
    )


def test_criterion_6_selection_preservation(capsys):
    t0 = time.perf_counter()
    rng = random.Random(42)
    sufficient_sets = preserved = splits = sound = 0
    for _ in range(200):
        dag = random_dag(rng, rng.randint(3, 7), 0.35)
        oracle = IndependenceOracle.graphical(dag)
        pool = dag.covariate_pool
        for s in subsets_canonical(pool):
            if not is_sufficient(dag, s).sufficient:
                continue
            sufficient_sets += 1
            back = backward_select(oracle, s).final
            fwd = forward_select(oracle, s).final
            if is_sufficient(dag, back).sufficient and is_sufficient(dag, fwd).sufficient:
                preserved += 1
            candidate_splits = [((), s)] + [
                (tuple(v for v in s if v != drop), (drop,)) for drop in s
            ]
            for s1, s2 in candidate_splits:
                found, _ = robins_reduction(oracle, s1, s2)
                if found:
                    splits += 1
                    if is_sufficient(dag, s1).sufficient:
                        sound += 1
    elapsed = time.perf_counter() - t0
    ok = preserved == sufficient_sets and sound == splits and sufficient_sets > 0
    report(
        capsys,
        6,
        ok,
        f"{preserved}/{sufficient_sets} selections sufficient, "
        f"{sound}/{splits} reductions sound, {elapsed:.1f}s",
    )


def test_criterion_7_dual_d_separation(capsys):
    t0 = time.perf_counter()
    rng = random.Random(42)
    agree = total = 0
    for _ in range(50):
        dag = random_dag(rng, rng.randint(3, 10), 0.3)
        names = list(dag.nodes)
        for _ in range(10):
            rng.shuffle(names)
            a, b = names[0], names[1]
            z = [v for v in names[2:] if rng.random() < 0.4]
            total += 1
            want = naive_d_separated(dag.edges, (a,), (b,), z)
            if d_separated(dag, (a,), (b,), z) == want:
                agree += 1
    elapsed = time.perf_counter() - t0
    ok = agree == total == 500
    report(capsys, 7, ok, f"{agree}/{total} queries agree, {elapsed:.1f}s")
