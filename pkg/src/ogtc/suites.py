"""Seeded property suites comparing every crossover path against independent checks.

Each suite returns a ``SuiteResult`` with pass/fail counts. The command-line
``selftest`` and the acceptance tests both run these.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

from . import generators as gen
from .blp import MAX, BlpInstance, brute_force_ogtc, feasible, objective, transmits
from .errors import BadParams, OgtcError
from .flow import FlowNetwork, max_flow, record_duality
from .graph import WeightedGraph, is_independent, ogtc_max_clique, ogtc_min_vertex_cover, ogtc_mwis
from .hypergraph import (
    build_ogtc_hypergraph,
    hardness_gadget,
    hypergraph_mwis_exact,
    is_two_coloring,
    ogtc_via_hypergraph,
)
from .maxsat import build_sat_graph, decode_independent_set, encode_assignment, f_sat, ogtc_max3sat
from .reductions import (
    double_columns,
    ogtc_knapsack_fastpath,
    ogtc_set_covering_exact,
    ogtc_set_packing,
    ogtc_set_partition,
    ogtc_splp,
    splp_feasible,
)

FULL_COUNTS = {
    "graph-oracle": 1000,
    "reduction-oracle": 1000,
    "hypergraph-identities": 500,
    "flow-duality": 200,
    "maxsat-identities": 300,
    "hardness-gadget": 100,
    "set-covering": 300,
}
SMALL_DIVISOR = 10
REDRAWS = 20


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)
    duality_checks: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def check(self, case, condition, message=""):
        if condition:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 20:
                self.failures.append(f"case {case}: {message}")

    def line(self) -> str:
        return f"{self.name}: {self.passed} passed, {self.failed} failed"


def _run_cases(name, count, seed, body) -> SuiteResult:
    res = SuiteResult(name)
    with record_duality() as log:
        for case in range(count):
            for attempt in range(REDRAWS):
                # some draws admit only one feasible parent; redraw those
                rng = np.random.default_rng([seed, case, attempt])
                try:
                    body(res, case, rng)
                except BadParams:
                    continue
                except OgtcError as exc:
                    res.check(case, False, f"{type(exc).__name__}: {exc}")
                break
            else:
                res.check(case, False, "no instance with two distinct parents")
    res.duality_checks = len(log)
    bad = [r for r in log if r[0] + r[1] != r[2]]
    res.check("duality", not bad, f"{len(bad)} bipartite solves broke weight + cut = total")
    return res


# ------------------------------------------------------------------ graphs

def _graph_case(res, case, rng):
    target = ("mwis", "clique", "vertex-cover")[case % 3]
    params = {"n": int(rng.integers(1, 17)), "p": float(rng.uniform(0.2, 0.5))}
    n = params["n"]
    graph = WeightedGraph.unchecked(n, gen.random_graph_edges(n, params["p"], rng), gen._ints(rng, -5, 10, n))
    if target == "clique":
        p1, p2 = gen.random_clique(graph, rng), gen.random_clique(graph, rng)
    else:
        p1, p2 = gen.random_independent_set(graph, rng), gen.random_independent_set(graph, rng)
        if target == "vertex-cover":
            p1, p2 = tuple(1 - v for v in p1), tuple(1 - v for v in p2)
    op = {"mwis": ogtc_mwis, "clique": ogtc_max_clique, "vertex-cover": ogtc_min_vertex_cover}[target]
    blp = {"mwis": graph.mwis_blp, "clique": graph.clique_blp, "vertex-cover": graph.cover_blp}[target]()
    got = op(graph, p1, p2)
    want = brute_force_ogtc(blp, p1, p2)
    res.check(case, got.value == want.value, f"{target}: {got.value} != oracle {want.value}")
    res.check(case, transmits(got.offspring, p1, p2), "gene transmission")
    res.check(case, feasible(blp, got.offspring), "offspring infeasible")
    res.check(case, graph.weight(got.offspring) == got.value, "reported value")


def graph_oracle(count=1000, seed=1) -> SuiteResult:
    return _run_cases("graph-oracle", count, seed, _graph_case)


# -------------------------------------------------------------- reductions

def _reduction_case(res, case, rng):
    family = case % 4
    if family == 0:
        g = gen.random_packing(
            {"n": int(rng.integers(2, 15)), "m": int(rng.integers(1, 11)), "density": float(rng.uniform(0.1, 0.4))},
            rng,
        )
        got = ogtc_set_packing(g.instance, g.p1, g.p2)
        A = g.instance.dense()
        res.check(case, bool(np.all(A @ np.array(got.offspring) <= 1)), "packing offspring has A x > e")
        inst = g.instance
    elif family == 1:
        m = int(rng.integers(2, 8))
        g = gen.random_partition({"n": int(rng.integers(max(4, 2 * min(m, 2)), 15)), "m": m}, rng)
        got = ogtc_set_partition(g.instance, g.p1, g.p2)
        A = g.instance.dense()
        res.check(case, bool(np.all(A @ np.array(got.offspring) == 1)), "partition offspring has A x != e")
        inst = g.instance
    elif family == 2:
        g = gen.random_splp({"K": int(rng.integers(1, 5)), "L": int(rng.integers(1, 5))}, rng)
        got = ogtc_splp(g.instance, g.p1, g.p2)
        res.check(case, splp_feasible(g.instance, got.offspring), "plant location offspring infeasible")
        inst = g.instance.to_blp()
    else:
        n = int(rng.integers(2, 15))
        g = gen.random_knapsack({"n": n, "m": int(rng.integers(0, 2 * n))}, rng)
        got = ogtc_knapsack_fastpath(g.instance, g.p1, g.p2)
        res.check(case, bool(got), f"fast path declined: {getattr(got, 'reason', '')}")
        if not got:
            return
        inst = g.instance
    want = brute_force_ogtc(inst, g.p1, g.p2)
    res.check(case, got.value == want.value, f"{g.family}: {got.value} != oracle {want.value}")
    res.check(case, objective(inst, got.offspring) == got.value, "reported value")
    res.check(case, transmits(got.offspring, g.p1, g.p2), "gene transmission")
    res.check(case, feasible(inst, got.offspring), "offspring infeasible")


def reduction_oracle(count=1000, seed=2) -> SuiteResult:
    return _run_cases("reduction-oracle", count, seed, _reduction_case)


# -------------------------------------------------------------- hypergraph

def _hypergraph_case(res, case, rng):
    n = int(rng.integers(2, 13))
    g = gen.random_blp({"n": n, "m": int(rng.integers(0, 9)), "k": min(4, n)}, rng)
    inst, p1, p2 = g.instance, g.p1, g.p2
    got = ogtc_via_hypergraph(inst, p1, p2)
    want = brute_force_ogtc(inst, p1, p2)
    res.check(case, got.value == want.value, f"{got.value} != oracle {want.value}")
    res.check(case, transmits(got.offspring, p1, p2), "gene transmission")

    oh = build_ogtc_hypergraph(inst, p1, p2)
    S, weight = hypergraph_mwis_exact(oh.hypergraph)
    chosen = set(S)
    d = oh.d
    res.check(case, all((i in chosen) != (d + i in chosen) for i in range(d)), "one vertex per pair")
    x = oh.offspring(S)
    sign = 1 if inst.sense == MAX else -1
    outside = sum(sign * inst.c[j] * p1[j] for j in range(inst.n) if j not in set(oh.D))
    res.check(case, weight == sign * objective(inst, x) + oh.lam * d - outside, "weight identity")
    res.check(case, is_two_coloring(oh.hypergraph, oh.coloring), "parents give a 2-coloring")


def hypergraph_identities(count=500, seed=3) -> SuiteResult:
    return _run_cases("hypergraph-identities", count, seed, _hypergraph_case)


# ------------------------------------------------------------------- flow

def exhaustive_min_cut(net: FlowNetwork) -> int:
    """Minimum s-t cut capacity by enumerating every node bipartition."""
    others = [v for v in range(net.n) if v not in (net.source, net.sink)]
    best = None
    for mask in range(1 << len(others)):
        side = {net.source} | {v for k, v in enumerate(others) if mask >> k & 1}
        cap = sum(c for u, v, c in net.arcs if u in side and v not in side)
        if best is None or cap < best:
            best = cap
    return best


def _flow_case(res, case, rng):
    n = int(rng.integers(2, 13))
    arcs = []
    for _ in range(int(rng.integers(0, 3 * n + 1))):
        u, v = rng.integers(0, n, 2).tolist()
        if u != v:
            arcs.append((u, v, int(rng.integers(0, 21))))
    s, t = rng.choice(n, size=2, replace=False).tolist()
    net = FlowNetwork(n, tuple(arcs), s, t)
    value, side = max_flow(net)
    res.check(case, value == exhaustive_min_cut(net), "max flow differs from enumerated min cut")
    res.check(case, s in side and t not in side, "cut side")


def flow_duality(count=200, seed=4) -> SuiteResult:
    return _run_cases("flow-duality", count, seed, _flow_case)


# ----------------------------------------------------------------- maxsat

def _maxsat_case(res, case, rng):
    n = int(rng.integers(1, 9))
    g = gen.random_cnf({"n": n, "m": int(rng.integers(1, 13)), "k": min(3, n)}, rng)
    cnf = g.instance
    sg = build_sat_graph(cnf)
    NM = sg.threshold
    for _ in range(50):
        y = tuple(int(v) for v in rng.integers(0, 2, cnf.n_vars))
        x = encode_assignment(sg, y)
        res.check(case, is_independent(sg.graph, x), "encoding is not independent")
        res.check(case, sg.graph.weight(x) == NM + f_sat(cnf, y), "encoding weight")
    q1, q2 = encode_assignment(sg, g.p1), encode_assignment(sg, g.p2)
    S = ogtc_mwis(sg.graph, q1, q2).offspring
    y = decode_independent_set(sg, S)
    res.check(case, f_sat(cnf, y) >= sg.graph.weight(S) - NM, "decode guarantee")
    child = ogtc_max3sat(cnf, g.p1, g.p2)
    res.check(case, f_sat(cnf, child) >= max(f_sat(cnf, g.p1), f_sat(cnf, g.p2)), "dominance")
    res.check(case, transmits(child, g.p1, g.p2), "gene transmission")


def maxsat_identities(count=300, seed=5) -> SuiteResult:
    return _run_cases("maxsat-identities", count, seed, _maxsat_case)


# ----------------------------------------------------------- hardness gadget

def independence_number(n, edges) -> int:
    """Largest independent set size by enumerating subsets."""
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    best = 0
    for mask in range(1 << n):
        if all(not (mask >> v & 1) or not (adj[v] & mask) for v in range(n)):
            best = max(best, bin(mask).count("1"))
    return best


def _gadget_case(res, case, rng):
    n = int(rng.integers(1, 10))
    edges = gen.random_graph_edges(n, float(rng.uniform(0.1, 0.7)), rng)
    h, coloring = hardness_gadget(n, edges)
    S, weight = hypergraph_mwis_exact(h)
    res.check(case, len(S) == weight, "unit weights")
    res.check(case, len(S) == n + independence_number(n, edges), "size is n + alpha(G)")
    res.check(case, is_two_coloring(h, coloring), "gadget coloring")


def hardness_gadget_suite(count=100, seed=6) -> SuiteResult:
    return _run_cases("hardness-gadget", count, seed, _gadget_case)


# ------------------------------------------------------------ set covering

def scp_optimum(scp: BlpInstance):
    """Exhaustive optimum value of a covering instance (None when infeasible)."""
    best = None
    for bits in range(1 << scp.n):
        x = [(bits >> j) & 1 for j in range(scp.n)]
        if feasible(scp, x):
            v = objective(scp, x)
            if best is None or v < best:
                best = v
    return best


def _cover_case(res, case, rng):
    if case % 2 == 0:
        g = gen.random_cover(
            {"n": int(rng.integers(2, 17)), "m": int(rng.integers(1, 9)), "cmin": -3, "cmax": 10}, rng
        )
        got = ogtc_set_covering_exact(g.instance, g.p1, g.p2)
        want = brute_force_ogtc(g.instance, g.p1, g.p2)
        res.check(case, got.value == want.value, f"{got.value} != oracle {want.value}")
        res.check(case, got.offspring == want.offspring, "tie rule: lexicographically smallest optimum")
        res.check(case, transmits(got.offspring, g.p1, g.p2), "gene transmission")
    else:
        g = gen.random_cover({"n": int(rng.integers(2, 13)), "m": int(rng.integers(1, 9))}, rng)
        doubled, q1, q2 = double_columns(g.instance)
        got = ogtc_set_covering_exact(doubled, q1, q2)
        res.check(case, got.value == scp_optimum(g.instance), "doubled instance optimum")
        res.check(case, feasible(doubled, got.offspring), "offspring infeasible")


def set_covering(count=300, seed=7) -> SuiteResult:
    return _run_cases("set-covering", count, seed, _cover_case)


SUITES = {
    "graph-oracle": graph_oracle,
    "reduction-oracle": reduction_oracle,
    "hypergraph-identities": hypergraph_identities,
    "flow-duality": flow_duality,
    "maxsat-identities": maxsat_identities,
    "hardness-gadget": hardness_gadget_suite,
    "set-covering": set_covering,
}


def run_all(scale: str = "small") -> list:
    div = 1 if scale == "full" else SMALL_DIVISOR
    return [fn(count=max(1, FULL_COUNTS[name] // div)) for name, fn in SUITES.items()]

