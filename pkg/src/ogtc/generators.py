"""Seeded random instance families, each with two distinct feasible parents."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .blp import EQ, GE, LE, MAX, MIN, BlpInstance, Row, feasible
from .errors import BadParams
from .graph import WeightedGraph
from .maxsat import CnfInstance
from .reductions import SplpInstance

PARENT_TRIES = 100


@dataclass(frozen=True)
class Generated:
    family: str
    kind: str  # problem kind understood by ``make_problem``
    instance: Any
    p1: tuple
    p2: tuple


def _params(given: dict, defaults: dict) -> dict:
    unknown = set(given) - set(defaults)
    if unknown:
        raise BadParams(f"unknown parameters {sorted(unknown)}; accepted: {sorted(defaults)}")
    out = dict(defaults)
    for k, v in given.items():
        try:
            out[k] = type(defaults[k])(v)
        except (TypeError, ValueError):
            raise BadParams(f"parameter {k}={v!r} is not a {type(defaults[k]).__name__}") from None
    return out


def _ints(rng, lo, hi, size):
    if lo > hi:
        raise BadParams(f"empty range [{lo}, {hi}]")
    return [int(v) for v in rng.integers(lo, hi + 1, size)]


def _distinct(draw, rng):
    p1 = draw(rng)
    for _ in range(PARENT_TRIES):
        p2 = draw(rng)
        if p2 != p1:
            return p1, p2
    raise BadParams("instance admits no two distinct parents under these parameters")


# ---------------------------------------------------------------------- graphs

def random_graph_edges(n: int, p: float, rng) -> tuple:
    """G(n, p) edges as sorted ``(u, v)`` pairs; sampled one row at a time."""
    edges = []
    for u in range(n - 1):
        vs = np.nonzero(rng.random(n - u - 1) < p)[0] + (u + 1)
        edges.extend((u, int(v)) for v in vs)
    return tuple(edges)


def random_independent_set(g: WeightedGraph, rng) -> tuple:
    x = [0] * g.n
    adj = g.adjacency
    for v in rng.permutation(g.n).tolist():
        if not any(x[u] for u in adj[v]):
            x[v] = 1
    return tuple(x)


def random_clique(g: WeightedGraph, rng) -> tuple:
    members = []
    adj = g.adjacency
    for v in rng.permutation(g.n).tolist():
        if all(u in adj[v] for u in members):
            members.append(v)
    x = [0] * g.n
    for v in members:
        x[v] = 1
    return tuple(x)


def random_graph(params, rng) -> Generated:
    p = _params(params, {"n": 16, "p": 0.3, "wmin": 1, "wmax": 10, "target": "mwis"})
    if p["n"] < 1 or not 0.0 <= p["p"] <= 1.0:
        raise BadParams("need n >= 1 and 0 <= p <= 1")
    if p["target"] not in ("mwis", "clique", "vertex-cover"):
        raise BadParams("target must be mwis, clique or vertex-cover")
    n = p["n"]
    edges = random_graph_edges(n, p["p"], rng)
    g = WeightedGraph.unchecked(n, edges, _ints(rng, p["wmin"], p["wmax"], n))
    if p["target"] == "clique":
        draw = lambda r: random_clique(g, r)  # noqa: E731
    elif p["target"] == "vertex-cover":
        draw = lambda r: tuple(1 - v for v in random_independent_set(g, r))  # noqa: E731
    else:
        draw = lambda r: random_independent_set(g, r)  # noqa: E731
    return Generated("random-graph", p["target"], g, *_distinct(draw, rng))


# ------------------------------------------------------------------- 0/1 rows

def _random_rows(rng, n, m, density):
    rows = []
    for _ in range(m):
        cols = np.nonzero(rng.random(n) < density)[0].tolist()
        if not cols:
            cols = [int(rng.integers(0, n))]
        rows.append(cols)
    return rows


def random_packing(params, rng) -> Generated:
    p = _params(params, {"n": 20, "m": 8, "density": 0.3, "cmin": -5, "cmax": 10})
    if p["n"] < 2 or p["m"] < 0:
        raise BadParams("need n >= 2 and m >= 0")
    rows = [Row(tuple((j, 1) for j in cols), 1, LE) for cols in _random_rows(rng, p["n"], p["m"], p["density"])]
    inst = BlpInstance(_ints(rng, p["cmin"], p["cmax"], p["n"]), rows, MAX)
    return Generated("random-packing", "packing", inst, *_distinct(lambda r: random_maximal_packing(inst, r), rng))


def _random_blocks(rng, m, k):
    """Split rows ``0..m-1`` into ``k`` nonempty blocks."""
    order = rng.permutation(m).tolist()
    cuts = sorted(rng.choice(np.arange(1, m), size=k - 1, replace=False).tolist()) if k > 1 else []
    bounds = [0] + cuts + [m]
    return [tuple(sorted(order[a:b])) for a, b in zip(bounds, bounds[1:])]


def random_partition(params, rng) -> Generated:
    """Two planted exact covers plus random extra columns."""
    p = _params(params, {"n": 14, "m": 6, "density": 0.3, "cmin": -5, "cmax": 10})
    n, m = p["n"], p["m"]
    if m < 2 or n < 4:
        raise BadParams("need m >= 2 and n >= 4")
    max_blocks = min(m, n // 2)
    for _ in range(PARENT_TRIES):
        b1 = _random_blocks(rng, m, int(rng.integers(1, max_blocks + 1)))
        b2 = _random_blocks(rng, m, int(rng.integers(1, max_blocks + 1)))
        if set(b1) != set(b2):
            break
    else:
        raise BadParams("could not plant two different partitions")
    cols = list(b1) + list(b2)
    for extra in _random_rows(rng, m, n - len(cols), p["density"]):
        cols.append(tuple(extra))
    perm = rng.permutation(n).tolist()  # perm[old] = new position
    placed = [None] * n
    for old, new in enumerate(perm):
        placed[new] = cols[old]
    rows = [Row(tuple((j, 1) for j in range(n) if i in placed[j]), 1, EQ) for i in range(m)]
    inst = BlpInstance(_ints(rng, p["cmin"], p["cmax"], n), rows, MIN)
    x1 = [0] * n
    x2 = [0] * n
    for old in range(len(b1)):
        x1[perm[old]] = 1
    for old in range(len(b1), len(b1) + len(b2)):
        x2[perm[old]] = 1
    return Generated("random-partition", "partition", inst, tuple(x1), tuple(x2))


def random_cover(params, rng) -> Generated:
    p = _params(params, {"n": 12, "m": 6, "density": 0.4, "cmin": 1, "cmax": 10})
    if p["n"] < 2 or p["m"] < 1:
        raise BadParams("need n >= 2 and m >= 1")
    rows = [Row(tuple((j, 1) for j in cols), 1, GE) for cols in _random_rows(rng, p["n"], p["m"], p["density"])]
    inst = BlpInstance(_ints(rng, p["cmin"], p["cmax"], p["n"]), rows, MIN)

    def draw(r):
        x = [1] * inst.n
        for j in r.permutation(inst.n).tolist():
            x[j] = 0
            if not feasible(inst, x):
                x[j] = 1
        return tuple(x)

    return Generated("random-cover", "set-cover", inst, *_distinct(draw, rng))


def random_knapsack(params, rng) -> Generated:
    """Multidimensional knapsack whose rows each touch two columns."""
    p = _params(params, {"n": 20, "m": 20, "amax": 5, "cmax": 10})
    n, m = p["n"], p["m"]
    if n < 2 or m < 0 or p["amax"] < 1:
        raise BadParams("need n >= 2, m >= 0, amax >= 1")
    rows = []
    for _ in range(m):
        j, k = sorted(rng.choice(n, size=2, replace=False).tolist())
        a, b = _ints(rng, 1, p["amax"], 2)
        cap = int(rng.integers(max(a, b), a + b))  # one of the two fits, not both
        rows.append(Row(((j, a), (k, b)), cap, LE))
    inst = BlpInstance(_ints(rng, 1, p["cmax"], n), rows, MAX)
    return Generated("random-knapsack", "knapsack", inst, *_distinct(lambda r: random_maximal_packing(inst, r), rng))


def random_maximal_packing(inst: BlpInstance, rng) -> tuple:
    """Greedy random fill for rows with nonnegative coefficients and ``<=`` sense."""
    act = [0] * inst.m
    col_rows = [[] for _ in range(inst.n)]
    for i, r in enumerate(inst.rows):
        for j, a in r.coeffs:
            col_rows[j].append((i, a))
    x = [0] * inst.n
    for j in rng.permutation(inst.n).tolist():
        if all(act[i] + a <= inst.rows[i].b for i, a in col_rows[j]):
            x[j] = 1
            for i, a in col_rows[j]:
                act[i] += a
    return tuple(x)


def random_blp(params, rng) -> Generated:
    """Mixed-sense rows built around two planted points so both are feasible."""
    p = _params(params, {"n": 12, "m": 6, "k": 4, "amax": 3, "cmin": -5, "cmax": 10})
    n, m, k = p["n"], p["m"], p["k"]
    if n < 2 or m < 0 or not 1 <= k <= n or p["amax"] < 1:
        raise BadParams("need n >= 2, m >= 0, 1 <= k <= n, amax >= 1")
    x1 = [int(v) for v in rng.integers(0, 2, n)]
    x2 = [int(v) for v in rng.integers(0, 2, n)]
    if x1 == x2:
        j = int(rng.integers(0, n))
        x2[j] ^= 1
    rows = []
    for _ in range(m):
        size = int(rng.integers(1, k + 1))
        cols = sorted(rng.choice(n, size=size, replace=False).tolist())
        coeffs = tuple((j, int(rng.choice([-1, 1])) * int(rng.integers(1, p["amax"] + 1))) for j in cols)
        a1 = sum(a for j, a in coeffs if x1[j])
        a2 = sum(a for j, a in coeffs if x2[j])
        sense = (LE, GE, EQ)[int(rng.integers(0, 3))]
        if sense == EQ and a1 != a2:
            sense = (LE, GE)[int(rng.integers(0, 2))]
        if sense == LE:
            b = max(a1, a2) + int(rng.integers(0, 2))
        elif sense == GE:
            b = min(a1, a2) - int(rng.integers(0, 2))
        else:
            b = a1
        rows.append(Row(coeffs, b, sense))
    inst = BlpInstance(_ints(rng, p["cmin"], p["cmax"], n), rows, (MAX, MIN)[int(rng.integers(0, 2))])
    return Generated("random-blp", "blp", inst, tuple(x1), tuple(x2))


def random_splp(params, rng) -> Generated:
    p = _params(params, {"K": 4, "L": 4, "cmax": 10})
    K, L = p["K"], p["L"]
    if K < 1 or L < 1:
        raise BadParams("need K >= 1 and L >= 1")
    s = SplpInstance(_ints(rng, 0, p["cmax"], K), [_ints(rng, 0, p["cmax"], L) for _ in range(K)])

    def draw(r):
        opened = sorted(r.choice(K, size=int(r.integers(1, K + 1)), replace=False).tolist())
        x = [0] * s.n
        for k in opened:
            x[s.y_index(k)] = 1
        for l in range(L):
            x[s.x_index(int(r.choice(opened)), l)] = 1
        return tuple(x)

    return Generated("random-splp", "splp", s, *_distinct(draw, rng))


def random_cnf(params, rng) -> Generated:
    p = _params(params, {"n": 8, "m": 12, "k": 3})
    n, m, k = p["n"], p["m"], p["k"]
    if n < 1 or m < 1 or not 1 <= k <= n:
        raise BadParams("need n >= 1, m >= 1, 1 <= k <= n")
    clauses = []
    for _ in range(m):
        vs = rng.choice(n, size=k, replace=False).tolist()
        clauses.append(tuple((int(v), bool(rng.integers(0, 2))) for v in vs))
    cnf = CnfInstance(n, tuple(clauses))
    draw = lambda r: tuple(int(v) for v in r.integers(0, 2, n))  # noqa: E731
    return Generated("random-cnf", "maxsat", cnf, *_distinct(draw, rng))


FAMILIES = {
    "random-graph": random_graph,
    "random-packing": random_packing,
    "random-partition": random_partition,
    "random-splp": random_splp,
    "random-cnf": random_cnf,
    "random-knapsack": random_knapsack,
    "random-cover": random_cover,
    "random-blp": random_blp,
}


def generate(family: str, params: dict | None = None, seed: int = 0) -> Generated:
    if family not in FAMILIES:
        raise BadParams(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    return FAMILIES[family](params or {}, np.random.default_rng(seed))
