"""Reduction adapters and the crossovers built from them.

An adapter maps a source problem instance to a target one (``alpha``) and
source solutions to target solutions (``beta``, with inverse). Composing an
adapter with an optimized crossover for the target gives one for the source,
provided ``beta`` preserves the strict objective order and copies or negates
each non-constant coordinate.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Sequence

from .blp import (
    DEFAULT_ORACLE_CAP,
    EQ,
    GE,
    LE,
    MAX,
    MIN,
    BlpInstance,
    CrossoverResult,
    Row,
    as_genotype,
    check_parents,
    diff_set,
    feasible,
    objective,
)
from .errors import (
    AdapterContractViolation,
    DiffSetTooLarge,
    InfeasibleParents,
    NotAPackingInstance,
    PartitionViolated,
    ValidationError,
)
from .flow import BipartiteWeighted, bipartite_mwis
from .graph import WeightedGraph, ogtc_mwis

COPY, NEGATE, CONST = "copy", "negate", "const"


def _identity(x):
    return tuple(x)


def _same(obj):
    return obj


@dataclass(frozen=True)
class ReductionAdapter:
    alpha: Callable[[Any], Any]
    beta: Callable[[Sequence[int]], tuple]
    beta_inverse: Callable[[Sequence[int]], tuple]
    modes: tuple  # per source coordinate: COPY, NEGATE or CONST
    targets: tuple  # per source coordinate: target index k(j), or None for CONST
    target_value: Callable[[Any, Sequence[int]], int]
    target_sense: str
    # how to read the source instance as a BLP (feasibility + objective)
    as_blp: Callable[[Any], BlpInstance] = _same
    violation: type = AdapterContractViolation
    label: str = "reduction"


def identity_adapter(n: int, alpha, target_value, target_sense, label="reduction:identity", **kw):
    return ReductionAdapter(
        alpha=alpha,
        beta=_identity,
        beta_inverse=_identity,
        modes=(COPY,) * n,
        targets=tuple(range(n)),
        target_value=target_value,
        target_sense=target_sense,
        label=label,
        **kw,
    )


def compose_ogtc(adapter: ReductionAdapter, target_ogtc: Callable) -> Callable:
    """Lift ``target_ogtc`` through ``adapter`` into a crossover for the source problem."""

    def crossover(source, p1, p2) -> CrossoverResult:
        src = adapter.as_blp(source)
        p1, p2 = check_parents(src, p1, p2)
        target = adapter.alpha(source)
        res = target_ogtc(target, adapter.beta(p1), adapter.beta(p2))
        z = as_genotype(adapter.beta_inverse(res.offspring), src.n)
        if not feasible(src, z):
            raise adapter.violation(f"{adapter.label}: lifted offspring is infeasible in the source")
        return CrossoverResult(z, objective(src, z), (adapter.label,) + tuple(res.trace), (p1, p2))

    return crossover


def verify_adapter(adapter: ReductionAdapter, source, solutions) -> None:
    """Check the adapter contract on a sample of feasible source solutions.

    Raises ``AdapterContractViolation`` on the first failure.
    """
    src = adapter.as_blp(source)
    target = adapter.alpha(source)
    sols = [as_genotype(x, src.n) for x in solutions]
    images = []
    for x in sols:
        y = tuple(adapter.beta(x))
        if tuple(adapter.beta_inverse(y)) != x:
            raise AdapterContractViolation(f"beta_inverse(beta(x)) != x for x={x}")
        for j, (mode, k) in enumerate(zip(adapter.modes, adapter.targets)):
            if mode == COPY and y[k] != x[j]:
                raise AdapterContractViolation(f"coordinate {j} is declared copy but differs")
            if mode == NEGATE and y[k] != 1 - x[j]:
                raise AdapterContractViolation(f"coordinate {j} is declared negate but matches")
        images.append(y)
    for j, mode in enumerate(adapter.modes):
        if mode == CONST and len({x[j] for x in sols}) > 1:
            raise AdapterContractViolation(f"coordinate {j} is declared constant but varies")
    vals = [objective(src, x) for x in sols]
    gvals = [adapter.target_value(target, y) for y in images]
    flip = (src.sense == MAX) != (adapter.target_sense == MAX)
    for (f1, g1), (f2, g2) in combinations(zip(vals, gvals), 2):
        for fa, ga, fb, gb in ((f1, g1, f2, g2), (f2, g2, f1, g1)):
            if fa < fb and not (ga > gb if flip else ga < gb):
                raise AdapterContractViolation(
                    f"objective order not preserved: f {fa} < {fb} but g {ga}, {gb}"
                )


# ---------------------------------------------------------------- set packing

def is_packing(inst: BlpInstance) -> bool:
    return all(
        row.sense == LE and row.b == 1 and all(a in (0, 1) for _, a in row.coeffs)
        for row in inst.rows
    )


def conflict_graph(packing: BlpInstance) -> WeightedGraph:
    if packing.sense != MAX or not is_packing(packing):
        raise NotAPackingInstance("expected max c x subject to Boolean rows A x <= 1")
    edges = set()
    for row in packing.rows:
        for u, v in combinations(sorted(row.support), 2):
            edges.add((u, v))
    return WeightedGraph.unchecked(packing.n, tuple(sorted(edges)), packing.c)


def _graph_value(g: WeightedGraph, x) -> int:
    return g.weight(x)


def ogtc_set_packing(packing: BlpInstance, p1, p2) -> CrossoverResult:
    conflict_graph(packing)  # shape check before the parents are looked at
    adapter = identity_adapter(
        packing.n, conflict_graph, _graph_value, MAX, label="reduction:conflict_graph"
    )
    return compose_ogtc(adapter, ogtc_mwis)(packing, p1, p2)


# -------------------------------------------------------------- set partition

def is_partition(inst: BlpInstance) -> bool:
    return all(
        row.sense == EQ and row.b == 1 and all(a in (0, 1) for _, a in row.coeffs)
        for row in inst.rows
    )


def partition_lambda(part: BlpInstance) -> int:
    return 2 * sum(abs(v) for v in part.c) + 1


def partition_to_packing(part: BlpInstance) -> BlpInstance:
    """Packing with weights ``lambda * |column| - c_j`` over the same rows relaxed to ``<= 1``."""
    lam = partition_lambda(part)
    colsum = [0] * part.n
    for row in part.rows:
        for j, a in row.coeffs:
            colsum[j] += a
    c = tuple(lam * colsum[j] - part.c[j] for j in range(part.n))
    return BlpInstance(c, tuple(Row(r.coeffs, 1, LE) for r in part.rows), MAX)


def ogtc_set_partition(part: BlpInstance, p1, p2) -> CrossoverResult:
    if part.sense != MIN or not is_partition(part):
        raise ValidationError("expected min c x subject to Boolean rows A x = 1")
    adapter = identity_adapter(
        part.n,
        partition_to_packing,
        lambda packing, x: objective(packing, x),
        MAX,
        label="reduction:partition_penalty",
        violation=PartitionViolated,
    )
    return compose_ogtc(adapter, ogtc_set_packing)(part, p1, p2)


# ----------------------------------------------------------- plant location

@dataclass(frozen=True)
class SplpInstance:
    """K facilities with opening costs, L clients with assignment costs ``assign[k][l]``.

    Genotype layout: ``x[k][l]`` row-major (k outer), then ``y[k]``.
    """

    open_costs: tuple
    assign_costs: tuple

    def __post_init__(self):
        C = tuple(int(v) for v in self.open_costs)
        c = tuple(tuple(int(v) for v in row) for row in self.assign_costs)
        if not C:
            raise ValidationError("at least one facility is required")
        if len(c) != len(C):
            raise ValidationError(f"{len(c)} cost rows for {len(C)} facilities")
        if len({len(r) for r in c}) > 1:
            raise ValidationError("assignment cost rows have different lengths")
        if any(v < 0 for v in C) or any(v < 0 for r in c for v in r):
            raise ValidationError("plant location costs must be nonnegative")
        object.__setattr__(self, "open_costs", C)
        object.__setattr__(self, "assign_costs", c)

    @property
    def K(self) -> int:
        return len(self.open_costs)

    @property
    def L(self) -> int:
        return len(self.assign_costs[0])

    @property
    def n(self) -> int:
        return self.K * self.L + self.K

    def x_index(self, k: int, l: int) -> int:
        return k * self.L + l

    def y_index(self, k: int) -> int:
        return self.K * self.L + k

    def to_blp(self) -> BlpInstance:
        K, L = self.K, self.L
        c = [self.assign_costs[k][l] for k in range(K) for l in range(L)] + list(self.open_costs)
        rows = [Row(tuple((self.x_index(k, l), 1) for k in range(K)), 1, EQ) for l in range(L)]
        rows += [
            Row(((self.x_index(k, l), 1), (self.y_index(k), -1)), 0, LE)
            for k in range(K)
            for l in range(L)
        ]
        return BlpInstance(c, rows, MIN)

    def cost(self, x) -> int:
        return objective(self.to_blp(), x)


def splp_lambda(s: SplpInstance) -> int:
    if s.L == 0:
        return 1
    return 1 + max(
        min(s.open_costs[k] + s.assign_costs[k][l] for k in range(s.K)) for l in range(s.L)
    )


def splp_crossover_lambda(s: SplpInstance) -> int:
    """Penalty exceeding the cost of every feasible solution.

    ``splp_lambda`` suffices when facilities may be opened freely, but inside a
    crossover the facility bits can be fixed, so an unserved client must cost
    more than any complete assignment could.
    """
    return 1 + sum(s.open_costs) + sum(max(s.assign_costs[k][l] for k in range(s.K)) for l in range(s.L))


def splp_to_packing(s: SplpInstance, lam: int | None = None) -> tuple:
    """Packing form maximising ``sum (lambda - c_kl) x_kl + sum C_k ybar_k`` with ``ybar = 1 - y``."""
    K, L = s.K, s.L
    if lam is None:
        lam = splp_crossover_lambda(s)
    c = [lam - s.assign_costs[k][l] for k in range(K) for l in range(L)] + list(s.open_costs)
    rows = [Row(tuple((s.x_index(k, l), 1) for k in range(K)), 1, LE) for l in range(L)]
    rows += [
        Row(((s.x_index(k, l), 1), (s.y_index(k), 1)), 1, LE) for k in range(K) for l in range(L)
    ]
    packing = BlpInstance(c, rows, MAX)
    KL = K * L

    def beta(v):
        v = tuple(v)
        return v[:KL] + tuple(1 - b for b in v[KL:])

    adapter = ReductionAdapter(
        alpha=lambda _s: packing,
        beta=beta,
        beta_inverse=beta,
        modes=(COPY,) * KL + (NEGATE,) * K,
        targets=tuple(range(KL + K)),
        target_value=objective,
        target_sense=MAX,
        as_blp=SplpInstance.to_blp,
        label="reduction:splp_penalty",
    )
    return packing, adapter


def splp_feasible(s: SplpInstance, v) -> bool:
    return len(v) == s.n and feasible(s.to_blp(), v)


def ogtc_splp(s: SplpInstance, p1, p2) -> CrossoverResult:
    _, adapter = splp_to_packing(s)
    res = compose_ogtc(adapter, ogtc_set_packing)(s, p1, p2)
    # zero-cost facilities opened by a tie but serving nobody are closed where the parents allow it
    x = list(res.offspring)
    p1, p2 = res.parents
    for k in range(s.K):
        yk = s.y_index(k)
        if x[yk] and p1[yk] != p2[yk] and not any(x[s.x_index(k, l)] for l in range(s.L)):
            x[yk] = 0
    x = tuple(x)
    value = s.cost(x)
    if value != res.value or not splp_feasible(s, x):
        raise AdapterContractViolation("closing an unused facility changed the cost")
    return CrossoverResult(x, value, res.trace, res.parents)


# ------------------------------------------------------- knapsack fast path

@dataclass(frozen=True)
class NotApplicable:
    reason: str

    def __bool__(self):
        return False


def ogtc_knapsack_fastpath(inst: BlpInstance, p1, p2):
    """Flow-based crossover for nonnegative ``<=`` rows touching at most two differing bits.

    Returns ``NotApplicable`` when the instance or the parents fall outside that case.
    """
    if inst.sense != MAX:
        return NotApplicable("objective must be maximised")
    for i, row in enumerate(inst.rows):
        if row.sense != LE:
            return NotApplicable(f"row {i} is not a <= row")
        if any(a < 0 for _, a in row.coeffs):
            return NotApplicable(f"row {i} has a negative coefficient")
    p1, p2 = check_parents(inst, p1, p2)
    in_d = [a != b for a, b in zip(p1, p2)]

    conflicts = set()
    for i, row in enumerate(inst.rows):
        free = [(j, a) for j, a in row.coeffs if a != 0 and in_d[j]]
        if not free:
            continue
        if len(free) > 2:
            return NotApplicable(f"row {i} touches {len(free)} differing positions")
        fixed = sum(a for j, a in row.coeffs if not in_d[j] and p1[j])
        if len(free) == 1:
            continue  # both values are taken by feasible parents
        (j, aj), (k, ak) = free
        if fixed + aj + ak <= row.b:
            continue
        if fixed + max(aj, ak) > row.b or p1[j] == p1[k]:
            return NotApplicable(f"row {i} has a violating pattern that is not a cross pair")
        conflicts.add((j, k) if p1[j] else (k, j))

    c = inst.c
    a_nodes = [j for j in range(inst.n) if in_d[j] and p1[j] and c[j] > 0]
    b_nodes = [j for j in range(inst.n) if in_d[j] and p2[j] and c[j] > 0]
    a_pos = {j: i for i, j in enumerate(a_nodes)}
    b_pos = {j: i for i, j in enumerate(b_nodes)}
    edges = sorted({(a_pos[u], b_pos[v]) for u, v in conflicts if u in a_pos and v in b_pos})
    res = bipartite_mwis(
        BipartiteWeighted(tuple(c[j] for j in a_nodes), tuple(c[j] for j in b_nodes), edges)
    )
    x = [0 if in_d[j] else p1[j] for j in range(inst.n)]
    for i in res.a:
        x[a_nodes[i]] = 1
    for i in res.b:
        x[b_nodes[i]] = 1
    x = tuple(x)
    if not feasible(inst, x):
        raise AdapterContractViolation("knapsack fast path produced an infeasible offspring")
    return CrossoverResult(
        x, objective(inst, x), ("knapsack:pair_conflicts", "flow:bipartite_mwis"), (p1, p2)
    )


# ------------------------------------------------------------- set covering

def is_covering(inst: BlpInstance) -> bool:
    return all(
        row.sense == GE and row.b == 1 and all(a in (0, 1) for _, a in row.coeffs)
        for row in inst.rows
    )


@dataclass(frozen=True)
class CoverEmbedding:
    """Maps a solution over the free positions back to a full genotype."""

    free: tuple
    base: tuple

    def lift(self, z: Sequence[int]) -> tuple:
        x = list(self.base)
        for j, v in zip(self.free, z):
            x[j] = int(v)
        return tuple(x)


def restrict_set_covering(scp: BlpInstance, p1, p2) -> tuple:
    """Residual covering problem over the differing positions.

    Positions outside the difference keep their common value; rows already
    covered by a fixed one are dropped.
    """
    if scp.sense != MIN or not is_covering(scp):
        raise ValidationError("expected min c x subject to Boolean rows A x >= 1")
    p1, p2 = check_parents(scp, p1, p2)
    D = diff_set(p1, p2).indices
    pos = {j: i for i, j in enumerate(D)}
    base = tuple(0 if j in pos else p1[j] for j in range(scp.n))
    rows = []
    for row in scp.rows:
        if any(base[j] for j in row.support):
            continue
        rows.append(Row(tuple((pos[j], 1) for j in row.support if j in pos), 1, GE))
    residual = BlpInstance(tuple(scp.c[j] for j in D), tuple(rows), MIN)
    return residual, CoverEmbedding(D, base)


def _solve_cover(residual: BlpInstance) -> tuple:
    """Exact branch and bound; the lexicographically smallest optimum is returned.

    Depth-first in index order with the 0-branch first, replacing the incumbent
    only on strict improvement, so the first optimum met is the smallest one.
    """
    n = residual.n
    c = residual.c
    m = residual.m
    row_cols = [sorted(r.support) for r in residual.rows]
    col_rows = [0] * n
    for i, cols in enumerate(row_cols):
        for j in cols:
            col_rows[j] |= 1 << i
    max_cover = max((bin(mask).count("1") for mask in col_rows), default=1) or 1
    # suffix sums of negative costs
    neg_suffix = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        neg_suffix[j] = neg_suffix[j + 1] + min(c[j], 0)

    best = [None, None]  # value, vector
    x = [0] * n

    def complete(k, cost):
        # every row covered: take the remaining negative-cost columns only
        tail = [1 if c[j] < 0 else 0 for j in range(k, n)]
        return cost + neg_suffix[k], x[:k] + tail

    def lower_bound(k, cost, uncovered):
        lb_nonneg = 0
        total_min = 0
        for i in range(m):
            if uncovered >> i & 1:
                cheapest = None
                for j in row_cols[i]:
                    if j >= k:
                        v = max(c[j], 0)
                        if cheapest is None or v < cheapest:
                            cheapest = v
                if cheapest is None:
                    return None
                lb_nonneg = max(lb_nonneg, cheapest)
                total_min += cheapest
        lb_nonneg = max(lb_nonneg, -(-total_min // max_cover))
        return cost + neg_suffix[k] + lb_nonneg

    def dfs(k, cost, uncovered):
        if uncovered == 0:
            val, vec = complete(k, cost)
            if best[0] is None or val < best[0]:
                best[0], best[1] = val, vec
            return
        if k == n:
            return
        lb = lower_bound(k, cost, uncovered)
        if lb is None or (best[0] is not None and lb >= best[0]):
            return
        x[k] = 0
        dfs(k + 1, cost, uncovered)
        x[k] = 1
        dfs(k + 1, cost + c[k], uncovered & ~col_rows[k])
        x[k] = 0

    dfs(0, 0, (1 << m) - 1)
    return best[1]


def ogtc_set_covering_exact(scp: BlpInstance, p1, p2, cap: int = DEFAULT_ORACLE_CAP) -> CrossoverResult:
    residual, emb = restrict_set_covering(scp, p1, p2)
    if residual.n > cap:
        raise DiffSetTooLarge(f"|D| = {residual.n} exceeds the cap {cap}")
    z = _solve_cover(residual)
    if z is None:
        raise InfeasibleParents("residual covering problem has no solution")
    x = emb.lift(z)
    p1, p2 = as_genotype(p1, scp.n), as_genotype(p2, scp.n)
    return CrossoverResult(x, objective(scp, x), ("cover:restrict", "cover:branch_and_bound"), (p1, p2))


def double_columns(scp: BlpInstance) -> tuple:
    """Instance with matrix ``(A A)``, cost ``(c, c)`` and the complementary parents."""
    n = scp.n
    rows = [Row(tuple(r.coeffs) + tuple((j + n, a) for j, a in r.coeffs), r.b, r.sense) for r in scp.rows]
    doubled = BlpInstance(tuple(scp.c) * 2, tuple(rows), scp.sense)
    p1 = (1,) * n + (0,) * n
    p2 = (0,) * n + (1,) * n
    return doubled, p1, p2

