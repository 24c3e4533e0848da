"""Covariate selection procedures driven by an independence oracle.

Three procedures, all deterministic given the oracle:

  robins_reduction   certify that a known-sufficient (S1 u S2) can be cut
                     down to S1 by splitting S2 into a part T1 ignorable
                     for the exposure and a part T2 ignorable for the
                     outcome.
  backward_select    repeatedly drop the first covariate the outcome no
                     longer needs given the exposure and the rest.
  forward_select     grow from nothing, adding the first covariate the
                     outcome still responds to given the exposure and the
                     current set.

The oracle is either graphical (d-separation; selection from a sufficient
set then provably stays sufficient) or numeric (exact CI tests; forward
selection can drop a needed covariate when the CPTs hide a dependence, so
numeric forward traces carry a caveat for every exact-independence hit
that disagrees with the graph).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .adjust import subsets_canonical
from .errors import InvalidConfig, NonCovariateInSet, OverlappingSets, SizeLimit
from .graph import d_separated

MAX_REDUCTION = 16


@dataclass(frozen=True)
class IndependenceOracle:
    """Answers 'set_a independent of set_b given z?' either from the graph
    or from a model's exact distribution."""

    kind: str
    source: object

    def __post_init__(self):
        if self.kind not in ("graphical", "numeric"):
            raise InvalidConfig(f"oracle kind must be graphical or numeric, got {self.kind!r}")

    @classmethod
    def graphical(cls, dag):
        return cls("graphical", dag)

    @classmethod
    def numeric(cls, model):
        return cls("numeric", model)

    @property
    def dag(self):
        return self.source if self.kind == "graphical" else self.source.dag

    def independent(self, set_a, set_b, given=()):
        if not set_a or not set_b:
            return True
        if self.kind == "graphical":
            return d_separated(self.source, set_a, set_b, given)
        return self.source.ci_test(set_a, set_b, given)


@dataclass(frozen=True)
class SelectionTrace:
    """One selection run: every oracle query in order, plus the result.

    steps holds (variable, query, verdict) triples, verdict being the
    oracle's independence answer. caveats flag exact independences that
    are not graphical ones (numeric oracle only).
    """

    initial: tuple[str, ...]
    steps: tuple[tuple[str, str, bool], ...]
    final: tuple[str, ...]
    caveats: tuple[str, ...] = field(default=())


def _require_covariates(oracle, names, what):
    pool = set(oracle.dag.covariate_pool)
    out = tuple(sorted(set(names)))
    for name in out:
        if name not in pool:
            raise NonCovariateInSet(f"{what} member {name!r} is not in the covariate pool")
    return out


def _query_text(target, variable, given):
    shown = ", ".join(given)
    return f"{target} _|_ {variable} | {shown}" if shown else f"{target} _|_ {variable}"


def robins_reduction(oracle, s1, s2):
    """Can S2 be discarded on top of S1?

    Searches for a split S2 = T1 u T2 with A independent of T1 given S1
    and Y independent of T2 given (A, S1, T1). When (S1 u S2) is
    sufficient and such a split exists, S1 alone is sufficient. Returns
    (found, (T1, T2)) with the canonically first split, or (False, None).
    """
    s1 = _require_covariates(oracle, s1, "S1")
    s2 = _require_covariates(oracle, s2, "S2")
    if set(s1) & set(s2):
        raise OverlappingSets("S1 and S2 share members")
    if len(s2) > MAX_REDUCTION:
        raise SizeLimit(f"S2 has {len(s2)} members; the split search caps at {MAX_REDUCTION}")
    dag = oracle.dag
    a, y = dag.exposure, dag.outcome
    for t1 in subsets_canonical(s2):
        t2 = tuple(name for name in s2 if name not in set(t1))
        if not oracle.independent({a}, set(t1), set(s1)):
            continue
        if oracle.independent({y}, set(t2), {a} | set(s1) | set(t1)):
            return True, (t1, t2)
    return False, None


def backward_select(oracle, start):
    """Prune a covariate set from the back: scan in lexicographic order,
    drop the first V with Y independent of V given (A, rest), restart;
    stop when a full scan drops nothing."""
    start = _require_covariates(oracle, start, "start set")
    dag = oracle.dag
    a, y = dag.exposure, dag.outcome
    current = list(start)
    steps = []
    caveats = []
    changed = True
    while changed:
        changed = False
        for variable in list(current):
            rest = [v for v in current if v != variable]
            given = [a] + rest
            verdict = oracle.independent({y}, {variable}, set(given))
            steps.append((variable, _query_text(y, variable, given), verdict))
            if verdict:
                _note_unfaithful(oracle, caveats, y, variable, given)
                current.remove(variable)
                changed = True
                break
    return SelectionTrace(start, tuple(steps), tuple(current), tuple(caveats))


def forward_select(oracle, candidates):
    """Grow a covariate set from the front: add the first candidate V with
    Y dependent on V given (A, current), restart; stop at a fixpoint.

    With a numeric oracle the procedure can stop early on unfaithful
    CPTs; every such exact independence gets a caveat entry.
    """
    candidates = _require_covariates(oracle, candidates, "candidate set")
    dag = oracle.dag
    a, y = dag.exposure, dag.outcome
    current = []
    steps = []
    caveats = []
    changed = True
    while changed:
        changed = False
        for variable in candidates:
            if variable in current:
                continue
            given = [a] + current
            verdict = oracle.independent({y}, {variable}, set(given))
            steps.append((variable, _query_text(y, variable, given), verdict))
            if verdict:
                _note_unfaithful(oracle, caveats, y, variable, given)
                continue
            current.append(variable)
            current.sort()
            changed = True
            break
    return SelectionTrace(candidates, tuple(steps), tuple(current), tuple(caveats))


def _note_unfaithful(oracle, caveats, y, variable, given):
    if oracle.kind != "numeric":
        return
    if not d_separated(oracle.dag, {y}, {variable}, set(given)):
        caveats.append(
            f"{_query_text(y, variable, given)} holds exactly but {y} and "
            f"{variable} are d-connected; the CPTs hide this dependence"
        )
