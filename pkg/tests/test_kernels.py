"""Bitmask reachability kernels: both backends, checked against each other
and against a mask-free reference on random graphs."""
import random

import pytest

from confounders._kernels import _pure
from helpers_oracle import naive_d_separated, naive_descendants

try:
    from confounders._kernels import _fast
except ImportError:
    _fast = None

BACKENDS = [_pure] if _fast is None else [_pure, _fast]
IDS = ["pure"] if _fast is None else ["pure", "compiled"]


def mask_of(indices):
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def random_parent_masks(rng, n, p):
    # nodes are already in topological order: parents come from lower indices
    return [mask_of(j for j in range(i) if rng.random() < p) for i in range(n)]


def edges_from_masks(parents):
    return [
        (j, i)
        for i, mask in enumerate(parents)
        for j in range(len(parents))
        if mask >> j & 1
    ]


@pytest.fixture(params=BACKENDS, ids=IDS)
def kernel(request):
    return request.param.BitDag


def test_compiled_backend_is_available():
    assert _fast is not None, "compiled extension failed to build or import"


def test_backend_tags():
    assert _pure.BACKEND == "pure"
    if _fast is not None:
        assert _fast.BACKEND == "compiled"


def test_chain_masks(kernel):
    dag = kernel([0, 1, 2])  # 0 -> 1 -> 2
    assert dag.parents_mask(0) == 0
    assert dag.parents_mask(2) == 0b010
    assert dag.children_mask(0) == 0b010
    assert dag.ancestors(2) == 0b011
    assert dag.descendants(0) == 0b110
    assert dag.closure_up(0b100) == 0b111
    assert dag.closure_down(0b001) == 0b111


def test_chain_dsep(kernel):
    dag = kernel([0, 1, 2])
    assert dag.dsep(0b001, 0b100, 0b010)
    assert not dag.dsep(0b001, 0b100, 0)


def test_collider_dsep(kernel):
    dag = kernel([0, 0, 0b011])  # 0 -> 2 <- 1
    assert dag.dsep(0b001, 0b010, 0)
    assert not dag.dsep(0b001, 0b010, 0b100)


def test_collider_descendant_opens(kernel):
    # 0 -> 2 <- 1, 2 -> 3: conditioning on the collider's child also opens it
    dag = kernel([0, 0, 0b011, 0b100])
    assert dag.dsep(0b001, 0b010, 0)
    assert not dag.dsep(0b001, 0b010, 0b1000)


def test_reachable_excludes_nothing_reachable(kernel):
    dag = kernel([0, 0])  # two isolated nodes
    assert dag.dsep(0b01, 0b10, 0)


def test_closures_against_reference(kernel):
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 12)
        parents = random_parent_masks(rng, n, 0.4)
        edges = edges_from_masks(parents)
        dag = kernel(parents)
        for i in range(n):
            want = mask_of(naive_descendants(edges, i))
            assert dag.descendants(i) == want
            up = mask_of(naive_descendants([(b, a) for a, b in edges], i))
            assert dag.ancestors(i) == up


def test_dsep_against_naive_oracle(kernel):
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(2, 9)
        parents = random_parent_masks(rng, n, 0.35)
        edges = edges_from_masks(parents)
        dag = kernel(parents)
        a, b = rng.sample(range(n), 2)
        rest = [i for i in range(n) if i not in (a, b)]
        z = [i for i in rest if rng.random() < 0.4]
        want = naive_d_separated(edges, [a], [b], z)
        assert dag.dsep(1 << a, 1 << b, mask_of(z)) == want


@pytest.mark.skipif(_fast is None, reason="compiled backend not built")
def test_backend_parity_on_random_graphs():
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randint(1, 16)
        parents = random_parent_masks(rng, n, 0.3)
        pure, fast = _pure.BitDag(parents), _fast.BitDag(parents)
        for i in range(n):
            assert pure.ancestors(i) == fast.ancestors(i)
            assert pure.descendants(i) == fast.descendants(i)
        a = rng.randrange(n)
        b = rng.randrange(n)
        if a == b:
            continue
        z = mask_of(i for i in range(n) if i not in (a, b) and rng.random() < 0.4)
        assert pure.reachable(1 << a, z) == fast.reachable(1 << a, z)
        assert pure.dsep(1 << a, 1 << b, z) == fast.dsep(1 << a, 1 << b, z)
