"""Independent brute-force oracles used by the tests.

Nothing here touches the package's kernels or caches: path enumeration,
blocking, descendant closure, and joint-distribution arithmetic are all
re-derived from the raw node/edge/CPT data so the two sides of every
comparison share no code.
"""
from fractions import Fraction
from itertools import chain, combinations, product


def all_subsets(names):
    names = sorted(names)
    return [
        tuple(c)
        for c in chain.from_iterable(combinations(names, k) for k in range(len(names) + 1))
    ]


# -- graph side -------------------------------------------------------------


def _mixed_adjacency(edges):
    adj = {}
    for u, v in edges:
        adj.setdefault(u, []).append((v, "->"))
        adj.setdefault(v, []).append((u, "<-"))
    return adj


def naive_descendants(edges, node):
    children = {}
    for u, v in edges:
        children.setdefault(u, []).append(v)
    out, stack = set(), [node]
    while stack:
        for ch in children.get(stack.pop(), ()):
            if ch not in out:
                out.add(ch)
                stack.append(ch)
    return out


def naive_simple_paths(edges, src, dst):
    """All simple paths src..dst as (nodes, arrows), arrows[i] the direction
    of the edge between nodes[i] and nodes[i+1]."""
    adj = _mixed_adjacency(edges)
    out = []

    def walk(node, nodes, arrows):
        if node == dst:
            out.append((tuple(nodes), tuple(arrows)))
            return
        for nxt, arrow in adj.get(node, ()):
            if nxt not in nodes:
                walk(nxt, nodes + [nxt], arrows + [arrow])

    walk(src, [src], [])
    return out


def naive_path_blocked(edges, nodes, arrows, z):
    z = set(z)
    for i in range(1, len(nodes) - 1):
        into_left = arrows[i - 1] == "->"
        into_right = arrows[i] == "<-"
        if into_left and into_right:
            hull = {nodes[i]} | naive_descendants(edges, nodes[i])
            if not hull & z:
                return True
        elif nodes[i] in z:
            return True
    return False


def naive_d_separated(edges, set_a, set_b, z=()):
    for a in set_a:
        for b in set_b:
            for nodes, arrows in naive_simple_paths(edges, a, b):
                if not naive_path_blocked(edges, nodes, arrows, z):
                    return False
    return True


def naive_backdoor_sufficient(edges, exposure, outcome, covariates):
    """Textbook criterion: every backdoor path is blocked by the set."""
    for nodes, arrows in naive_simple_paths(edges, exposure, outcome):
        if arrows[0] != "<-":
            continue
        if not naive_path_blocked(edges, nodes, arrows, covariates):
            return False
    return True


def naive_minimal_sets(edges, exposure, outcome, pool):
    sufficient = [
        s for s in all_subsets(pool) if naive_backdoor_sufficient(edges, exposure, outcome, s)
    ]
    return tuple(
        s
        for s in sufficient
        if not any(set(t) < set(s) for t in sufficient if t != s)
    )


# -- model side --------------------------------------------------------------


class NaiveModel:
    """Joint distribution as a flat dict, built straight from CPT data.

    cpts: node -> (parent tuple, {parent states tuple: P(node=1)}). Binary
    only; enough to double-check the package's exact inference paths.
    """

    def __init__(self, order, cpts):
        self.order = tuple(order)
        self.cpts = cpts
        self.joint = {}
        for values in product((0, 1), repeat=len(self.order)):
            assignment = dict(zip(self.order, values))
            p = Fraction(1)
            for node in self.order:
                parents, table = cpts[node]
                p_one = table[tuple(assignment[q] for q in parents)]
                p *= p_one if assignment[node] == 1 else 1 - p_one
            if p:
                self.joint[values] = p

    def prob(self, partial):
        total = Fraction(0)
        for values, p in self.joint.items():
            if all(values[self.order.index(k)] == v for k, v in partial.items()):
                total += p
        return total

    def expect_y(self, outcome, given):
        num = self.prob(dict(given, **{outcome: 1}))
        den = self.prob(given)
        return num / den

    def standardized_rd(self, exposure, outcome, covariates):
        out = Fraction(0)
        for values in product((0, 1), repeat=len(covariates)):
            stratum = dict(zip(covariates, values))
            pz = self.prob(stratum)
            if pz == 0:
                continue
            out += pz * (
                self.expect_y(outcome, dict(stratum, **{exposure: 1}))
                - self.expect_y(outcome, dict(stratum, **{exposure: 0}))
            )
        return out

    def ace(self, exposure, outcome):
        """Forced-exposure mean difference via the truncated factorization."""
        means = {}
        for arm in (0, 1):
            forced = dict(self.cpts)
            forced[exposure] = ((), {(): Fraction(arm)})
            means[arm] = NaiveModel(self.order, forced).prob({outcome: 1})
        return means[1] - means[0]

    def independent(self, set_a, set_b, z=()):
        set_a, set_b, z = sorted(set_a), sorted(set_b), sorted(z)
        for za in product((0, 1), repeat=len(z)):
            base = dict(zip(z, za))
            pz = self.prob(base)
            for va in product((0, 1), repeat=len(set_a)):
                for vb in product((0, 1), repeat=len(set_b)):
                    pa = self.prob(dict(base, **dict(zip(set_a, va))))
                    pb = self.prob(dict(base, **dict(zip(set_b, vb))))
                    pab = self.prob(
                        dict(base, **dict(zip(set_a, va)), **dict(zip(set_b, vb)))
                    )
                    if pab * pz != pa * pb:
                        return False
        return True

    def bias(self, exposure, outcome, covariates):
        return self.standardized_rd(exposure, outcome, covariates) - self.ace(
            exposure, outcome
        )
