"""Optimized crossover for general Boolean linear programs via 2-colorable hypergraphs.

Every differing position ``j`` gets two vertices, "j is 1" and "j is 0", joined
by an edge. Each assignment of a row's differing positions that violates the
row becomes a hyperedge. With weights ``c_j + lam`` and ``lam`` on the two
vertices (``lam`` larger than twice the total |c_j| over the difference), a
maximum-weight independent set picks exactly one vertex per pair and encodes
the best feasible offspring. The two parents themselves give the 2-coloring.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .blp import EQ, GE, MAX, BlpInstance, CrossoverResult, check_parents, diff_set, feasible, objective
from .errors import (
    CombinationBlowup,
    NegativeCoefficient,
    PairPropertyViolated,
    TooLarge,
    ValidationError,
)

DEFAULT_COMBINATION_CAP = 20
DEFAULT_SOLVER_CAP = 30


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple  # sorted vertex tuples, deduplicated
    weights: tuple

    def __post_init__(self):
        if len(self.weights) != self.n:
            raise ValidationError(f"{len(self.weights)} weights for {self.n} vertices")
        seen = set()
        for e in self.edges:
            e = tuple(sorted(set(int(v) for v in e)))
            if len(e) < 2:
                raise ValidationError(f"hyperedge {e} has fewer than two distinct vertices")
            if e[0] < 0 or e[-1] >= self.n:
                raise ValidationError(f"hyperedge {e} is out of range")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    def weight(self, S) -> int:
        return sum(self.weights[v] for v in S)


@dataclass(frozen=True)
class TwoColoring:
    first: frozenset
    second: frozenset


def is_independent_h(h: Hypergraph, S) -> bool:
    S = set(S)
    return not any(all(v in S for v in e) for e in h.edges)


def is_two_coloring(h: Hypergraph, col: TwoColoring) -> bool:
    return (
        not (col.first & col.second)
        and (col.first | col.second) == frozenset(range(h.n))
        and is_independent_h(h, col.first)
        and is_independent_h(h, col.second)
    )


def prune_dominated_edges(h: Hypergraph) -> Hypergraph:
    """Drop edges that contain another edge; the independent sets are unchanged."""
    sets = [frozenset(e) for e in h.edges]
    keep = [
        e for e, s in zip(h.edges, sets) if not any(t < s for t in sets)
    ]
    return Hypergraph(h.n, tuple(keep), h.weights)


def normalize_rows(inst: BlpInstance) -> list:
    """Rows as ``(coeffs, b)`` pairs meaning ``sum <= b``; equalities become two rows."""
    out = []
    for row in inst.rows:
        neg = tuple((j, -a) for j, a in row.coeffs)
        if row.sense == GE:
            out.append((neg, -row.b))
        elif row.sense == EQ:
            out.append((row.coeffs, row.b))
            out.append((neg, -row.b))
        else:
            out.append((row.coeffs, row.b))
    return out


def _violations(coeffs, b, p1, pos, cap):
    """Yield ``(free positions, bit pattern)`` for every violating assignment of a row."""
    free = [(pos[j], a) for j, a in coeffs if a != 0 and j in pos]
    if not free:
        return
    if len(free) > cap:
        raise CombinationBlowup(f"a row touches {len(free)} differing positions (cap {cap})")
    fixed = sum(a for j, a in coeffs if j not in pos and p1[j])
    idx = [i for i, _ in free]
    for bits in product((0, 1), repeat=len(free)):
        if fixed + sum(a for (_, a), bit in zip(free, bits) if bit) > b:
            yield idx, bits


@dataclass(frozen=True)
class OgtcHypergraph:
    hypergraph: Hypergraph
    coloring: TwoColoring
    lam: int
    D: tuple  # vertex i <-> "x[D[i]] = 1", vertex d + i <-> "x[D[i]] = 0"
    constant: int  # sum of c_j * p1_j over positions outside D
    base: tuple  # p1 with the differing positions zeroed

    @property
    def d(self) -> int:
        return len(self.D)

    def offspring(self, S) -> tuple:
        x = list(self.base)
        for v in S:
            if v < self.d:
                x[self.D[v]] = 1
        return tuple(x)

    def vertex_set(self, x) -> tuple:
        d = self.d
        return tuple(sorted(i if x[j] else d + i for i, j in enumerate(self.D)))


def build_ogtc_hypergraph(
    inst: BlpInstance, p1, p2, cap: int = DEFAULT_COMBINATION_CAP
) -> OgtcHypergraph:
    p1, p2 = check_parents(inst, p1, p2)
    D = diff_set(p1, p2).indices
    d = len(D)
    pos = {j: i for i, j in enumerate(D)}
    sign = 1 if inst.sense == MAX else -1
    c = [sign * v for v in inst.c]  # maximisation form
    lam = 2 * sum(abs(c[j]) for j in D) + 1

    edges = set()
    for coeffs, b in normalize_rows(inst):
        for idx, bits in _violations(coeffs, b, p1, pos, cap):
            edges.add(tuple(sorted(i if bit else d + i for i, bit in zip(idx, bits))))
    edges.update((i, d + i) for i in range(d))
    weights = tuple(c[j] + lam for j in D) + (lam,) * d
    h = Hypergraph(2 * d, tuple(edges), weights)

    base = tuple(0 if j in pos else p1[j] for j in range(inst.n))
    constant = sum(c[j] for j in range(inst.n) if base[j])
    side1 = frozenset(i if p1[j] else d + i for i, j in enumerate(D))
    coloring = TwoColoring(side1, frozenset(range(2 * d)) - side1)
    return OgtcHypergraph(h, coloring, lam, D, constant, base)


def hypergraph_mwis_exact(h: Hypergraph, cap: int = DEFAULT_SOLVER_CAP) -> tuple:
    """Exact maximum-weight independent set by branch and bound.

    Returns ``(sorted vertex tuple, weight)``. Among optimal sets the one whose
    sorted vertex tuple is lexicographically smallest is returned.
    """
    if h.n > cap:
        raise TooLarge(f"{h.n} vertices exceed the exact solver cap {cap}")
    w = h.weights
    # non-positive vertices never help and are left out of the tie-preferred optimum
    order = [v for v in range(h.n) if w[v] > 0]
    cand = set(order)
    nb2 = {v: 0 for v in order}
    big = {v: [] for v in order}
    partner = {}
    for e in h.edges:
        if not all(v in cand for v in e):
            continue
        if len(e) == 2:
            u, v = e
            nb2[u] |= 1 << v
            nb2[v] |= 1 << u
            if u not in partner and v not in partner:
                partner[u], partner[v] = v, u
        else:
            mask = sum(1 << v for v in e)
            for v in e:
                big[v].append(mask & ~(1 << v))
    rank = {v: k for k, v in enumerate(order)}

    def can_add(v, S, blocked):
        if blocked >> v & 1:
            return False
        return all(m & ~S for m in big[v])

    def upper_bound(k, S, blocked, cw):
        total = cw
        counted = set()
        for r in order[k:]:
            if r in counted or not can_add(r, S, blocked):
                continue
            p = partner.get(r)
            if p is not None and rank[p] >= k and p not in counted and can_add(p, S, blocked):
                total += max(w[r], w[p])
                counted.add(p)
            else:
                total += w[r]
        return total

    best = [None, 0]

    def dfs(k, S, blocked, cw):
        if k == len(order):
            if best[0] is None or cw > best[1]:
                best[0], best[1] = S, cw
            return
        if best[0] is not None and upper_bound(k, S, blocked, cw) <= best[1]:
            return
        v = order[k]
        if can_add(v, S, blocked):
            dfs(k + 1, S | (1 << v), blocked | nb2[v], cw + w[v])
        dfs(k + 1, S, blocked, cw)

    dfs(0, 0, 0, 0)
    S = best[0]
    chosen = tuple(v for v in range(h.n) if S >> v & 1)
    return chosen, best[1]


def ogtc_via_hypergraph(
    inst: BlpInstance,
    p1,
    p2,
    cap: int = DEFAULT_COMBINATION_CAP,
    solver_cap: int = DEFAULT_SOLVER_CAP,
) -> CrossoverResult:
    oh = build_ogtc_hypergraph(inst, p1, p2, cap)
    parents = tuple(tuple(p) for p in (p1, p2))
    if oh.hypergraph.n > solver_cap:
        raise TooLarge(f"2d = {oh.hypergraph.n} exceeds the exact solver cap {solver_cap}")
    S, weight = hypergraph_mwis_exact(oh.hypergraph, solver_cap)
    chosen = set(S)
    d = oh.d
    for i in range(d):
        if (i in chosen) == (d + i in chosen):
            raise PairPropertyViolated(f"position {oh.D[i]} has {'both' if i in chosen else 'neither'} vertices")
    x = oh.offspring(S)
    sign = 1 if inst.sense == MAX else -1
    value = objective(inst, x)
    if sign * value != weight - oh.lam * d + oh.constant:
        raise PairPropertyViolated("weight identity failed for the optimal independent set")
    if not feasible(inst, x):
        raise PairPropertyViolated("optimal independent set maps to an infeasible offspring")
    return CrossoverResult(x, value, ("hypergraph:build", "hypergraph:exact_mwis"), parents)


def build_knapsack_hypergraph(
    inst: BlpInstance, p1, p2, cap: int = DEFAULT_COMBINATION_CAP
) -> Hypergraph:
    """Reduced construction for nonnegative ``<=`` rows: only the "is 1" vertices.

    Vertex ``i`` stands for difference position ``D[i]`` (weight ``c``); any
    independent set, of any size, is a feasible offspring.
    """
    rows = normalize_rows(inst)
    for i, (coeffs, _) in enumerate(rows):
        if any(a < 0 for _, a in coeffs):
            raise NegativeCoefficient(f"normalized row {i} has a negative coefficient")
    p1, p2 = check_parents(inst, p1, p2)
    D = diff_set(p1, p2).indices
    pos = {j: i for i, j in enumerate(D)}
    sign = 1 if inst.sense == MAX else -1
    edges = set()
    for coeffs, b in rows:
        for idx, bits in _violations(coeffs, b, p1, pos, cap):
            edges.add(tuple(i for i, bit in zip(idx, bits) if bit))
    return Hypergraph(len(D), tuple(edges), tuple(sign * inst.c[j] for j in D))


def hardness_gadget(n: int, edges) -> tuple:
    """3-uniform hypergraph on ``2n`` vertices: ``{u, v, n + k}`` for each graph edge and each k."""
    if n < 1:
        raise ValidationError("the gadget needs at least one vertex")
    hedges = [(u, v, n + k) for u, v in edges for k in range(n)]
    h = Hypergraph(2 * n, tuple(hedges), (1,) * (2 * n))
    return h, TwoColoring(frozenset(range(n)), frozenset(range(n, 2 * n)))
