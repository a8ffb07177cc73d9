"""Problem families behind one interface: objective, feasibility, crossover, sampler.

Used by the GA harness and the CLI. Each family also exposes a BLP form so the
oracle and hypergraph paths can run on any of them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from . import hypergraph, reductions
from .blp import (
    LE,
    MAX,
    MIN,
    BlpInstance,
    CrossoverResult,
    as_genotype,
    brute_force_ogtc,
    feasible,
    objective,
)
from .errors import OgtcError, SamplerFailed, ValidationError
from .graph import (
    WeightedGraph,
    is_clique,
    is_cover,
    is_independent,
    ogtc_max_clique,
    ogtc_min_vertex_cover,
    ogtc_mwis,
)
from .maxsat import (
    CnfInstance,
    build_sat_graph,
    decode_independent_set,
    encode_assignment,
    f_sat,
    ogtc_max3sat,
)

KINDS = (
    "mwis",
    "clique",
    "vertex-cover",
    "packing",
    "partition",
    "knapsack",
    "set-cover",
    "blp",
    "splp",
    "maxsat",
)
METHODS = ("auto", "flow", "hypergraph", "oracle", "exact")

SAMPLER_RETRIES = 200


class MethodNotApplicable(OgtcError):
    pass


@dataclass(frozen=True)
class Problem:
    kind: str
    data: Any
    n: int
    sense: str
    objective: Callable
    feasible: Callable
    sampler: Callable  # rng -> feasible genotype
    blp_form: Callable  # () -> BLP form; for maxsat the independent-set form of the SAT graph

    @property
    def blp(self) -> BlpInstance:
        return self.blp_form()

    def crossover(self, p1, p2, method: str = "auto") -> CrossoverResult:
        return run_crossover(self, p1, p2, method)


# ----------------------------------------------------------------- samplers

def _greedy(inst: BlpInstance, x, order, add: bool):
    """Flip bits in ``order`` (0->1 if ``add`` else 1->0) when feasibility holds and the
    objective does not get worse; zero-gain additions are skipped."""
    x = list(x)
    col_rows = [[] for _ in range(inst.n)]
    for i, row in enumerate(inst.rows):
        for j, a in row.coeffs:
            if a:
                col_rows[j].append((i, a))
    act = [row.activity(x) for row in inst.rows]
    sign = 1 if inst.sense == MAX else -1
    for j in order:
        if x[j] == int(add):
            continue
        gain = sign * inst.c[j] * (1 if add else -1)
        if gain < 0 or (add and gain == 0):
            continue
        delta = 1 if add else -1
        if all(inst.rows[i].holds(act[i] + delta * a) for i, a in col_rows[j]):
            for i, a in col_rows[j]:
                act[i] += delta * a
            x[j] = int(add)
    return tuple(x)


def blp_sampler(inst: BlpInstance):
    def sample(rng):
        zeros = (0,) * inst.n
        ones = (1,) * inst.n
        order = rng.permutation(inst.n).tolist()
        if feasible(inst, zeros):
            return _greedy(inst, zeros, order, add=True)
        if feasible(inst, ones):
            return _greedy(inst, ones, order, add=False)
        for _ in range(SAMPLER_RETRIES):
            x = tuple(int(v) for v in (rng.random(inst.n) < rng.random()))
            if feasible(inst, x):
                return _greedy(inst, x, order, add=True)
        raise SamplerFailed(f"no feasible point found in {SAMPLER_RETRIES} random draws")

    return sample


def graph_sampler(g: WeightedGraph, kind: str):
    """Random maximal positive-weight independent set / clique; covers are complements."""

    def sample(rng):
        adj = g.adjacency
        x = [0] * g.n
        members = []
        for v in rng.permutation(g.n).tolist():
            if kind != "vertex-cover" and g.weights[v] <= 0:
                continue
            if kind == "clique":
                ok = all(u in adj[v] for u in members)
            else:
                ok = not any(x[u] for u in adj[v])
            if ok:
                members.append(v)
                x[v] = 1
        if kind == "vertex-cover":
            # complement of a maximal independent set is a minimal cover
            return tuple(1 - v for v in x)
        return tuple(x)

    return sample


def partition_sampler(inst: BlpInstance, node_limit: int = 20000):
    """Randomised exact-cover search (rows chosen by fewest candidate columns)."""
    col_rows = [frozenset(row_i for row_i, row in enumerate(inst.rows) if j in row.support) for j in range(inst.n)]

    def sample(rng):
        for _ in range(SAMPLER_RETRIES):
            order = rng.permutation(inst.n).tolist()
            nodes = [0]
            chosen = []

            def search(uncovered):
                if not uncovered:
                    return True
                nodes[0] += 1
                if nodes[0] > node_limit:
                    return False
                row = min(
                    uncovered,
                    key=lambda i: sum(1 for j in order if i in col_rows[j] and col_rows[j] <= uncovered),
                )
                for j in order:
                    if row in col_rows[j] and col_rows[j] <= uncovered:
                        chosen.append(j)
                        if search(uncovered - col_rows[j]):
                            return True
                        chosen.pop()
                return False

            if search(frozenset(range(inst.m))):
                x = [0] * inst.n
                for j in chosen:
                    x[j] = 1
                # empty columns are free to include when they help
                for j in order:
                    if not col_rows[j] and inst.c[j] < 0:
                        x[j] = 1
                return tuple(x)
        raise SamplerFailed("no exact cover found")

    return sample


def splp_sampler(s: reductions.SplpInstance):
    def sample(rng):
        k_open = int(rng.integers(1, s.K + 1))
        opened = sorted(rng.choice(s.K, size=k_open, replace=False).tolist())
        x = [0] * s.n
        for k in opened:
            x[s.y_index(k)] = 1
        for l in range(s.L):
            k = min(opened, key=lambda k: (s.assign_costs[k][l], k))
            x[s.x_index(k, l)] = 1
        return tuple(x)

    return sample


# ------------------------------------------------------------------ builders

def make_problem(kind: str, data) -> Problem:
    if kind not in KINDS:
        raise ValidationError(f"unknown problem kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind in ("mwis", "clique", "vertex-cover"):
        if not isinstance(data, WeightedGraph):
            raise ValidationError(f"{kind} needs a graph instance")
        check = {"mwis": is_independent, "clique": is_clique, "vertex-cover": is_cover}[kind]
        form = {"mwis": data.mwis_blp, "clique": data.clique_blp, "vertex-cover": data.cover_blp}[kind]
        sense = MIN if kind == "vertex-cover" else MAX
        return Problem(kind, data, data.n, sense, data.weight,
                       lambda x: len(x) == data.n and check(data, x),
                       graph_sampler(data, kind), form)
    if kind == "splp":
        if not isinstance(data, reductions.SplpInstance):
            raise ValidationError("splp needs a plant location instance")
        blp = data.to_blp()
        return Problem(kind, data, data.n, MIN, data.cost,
                       lambda x: feasible(blp, x), splp_sampler(data), lambda: blp)
    if kind == "maxsat":
        if not isinstance(data, CnfInstance):
            raise ValidationError("maxsat needs a CNF instance")
        sg = build_sat_graph(data)
        return Problem(kind, data, data.n_vars, MAX, lambda y: f_sat(data, y),
                       lambda y: len(y) == data.n_vars,
                       lambda rng: tuple(int(v) for v in rng.integers(0, 2, data.n_vars)),
                       sg.graph.mwis_blp)
    if not isinstance(data, BlpInstance):
        raise ValidationError(f"{kind} needs a BLP instance")
    checks = {
        "packing": (reductions.is_packing, MAX),
        "partition": (reductions.is_partition, MIN),
        "set-cover": (reductions.is_covering, MIN),
    }
    if kind in checks:
        check, sense = checks[kind]
        if data.sense != sense or not check(data):
            raise ValidationError(f"instance does not have the {kind} shape")
    if kind == "knapsack" and (
        data.sense != MAX or any(r.sense != LE or any(a < 0 for _, a in r.coeffs) for r in data.rows)
    ):
        raise ValidationError("knapsack needs max c x with nonnegative <= rows")
    sampler = partition_sampler(data) if kind == "partition" else blp_sampler(data)
    return Problem(kind, data, data.n, data.sense, lambda x: objective(data, x),
                   lambda x: feasible(data, x), sampler, lambda: data)


def _flow(problem: Problem, p1, p2) -> CrossoverResult:
    kind, data = problem.kind, problem.data
    ops = {
        "mwis": ogtc_mwis,
        "clique": ogtc_max_clique,
        "vertex-cover": ogtc_min_vertex_cover,
        "packing": reductions.ogtc_set_packing,
        "partition": reductions.ogtc_set_partition,
        "splp": reductions.ogtc_splp,
    }
    if kind in ops:
        return ops[kind](data, p1, p2)
    if kind in ("knapsack", "blp"):
        res = reductions.ogtc_knapsack_fastpath(data, p1, p2)
        if not res:
            raise MethodNotApplicable(f"flow path not applicable: {res.reason}")
        return res
    if kind == "maxsat":
        y = ogtc_max3sat(data, p1, p2)
        return CrossoverResult(y, f_sat(data, y), ("maxsat:graph", "graph:mwis", "flow:bipartite_mwis"), (p1, p2))
    raise MethodNotApplicable(f"no polynomial flow path for {kind}")


def _on_blp(problem: Problem, p1, p2, solve) -> CrossoverResult:
    if problem.kind != "maxsat":
        return solve(problem.blp, p1, p2)
    sg = build_sat_graph(problem.data)
    res = solve(problem.blp, encode_assignment(sg, p1), encode_assignment(sg, p2))
    y = decode_independent_set(sg, res.offspring)
    return CrossoverResult(y, f_sat(problem.data, y), ("maxsat:graph",) + res.trace, (p1, p2))


def run_crossover(problem: Problem, p1, p2, method: str = "auto") -> CrossoverResult:
    if method not in METHODS:
        raise ValidationError(f"unknown method {method!r}")
    p1 = as_genotype(p1, problem.n)
    p2 = as_genotype(p2, problem.n)
    if method == "auto":
        if problem.kind == "set-cover":
            method = "exact"
        elif problem.kind == "blp":
            res = reductions.ogtc_knapsack_fastpath(problem.data, p1, p2)
            return res if res else hypergraph.ogtc_via_hypergraph(problem.data, p1, p2)
        else:
            method = "flow"
    if method == "flow":
        return _flow(problem, p1, p2)
    if method == "exact":
        if problem.kind != "set-cover":
            raise MethodNotApplicable("the exact branch and bound path is for set covering")
        return reductions.ogtc_set_covering_exact(problem.data, p1, p2)
    if method == "hypergraph":
        return _on_blp(problem, p1, p2, hypergraph.ogtc_via_hypergraph)
    return _on_blp(problem, p1, p2, brute_force_ogtc)


def sample_parents(problem: Problem, rng, distinct_tries: int = 50) -> tuple:
    p1 = problem.sampler(rng)
    p2 = problem.sampler(rng)
    for _ in range(distinct_tries):
        if p2 != p1:
            break
        p2 = problem.sampler(rng)
    return p1, p2

