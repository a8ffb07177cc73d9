"""Optimized crossover for independent set, clique and vertex cover on weighted graphs.

Genotype position ``j`` is 1 iff vertex ``j`` is in the represented subset.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .blp import GE, LE, MAX, MIN, BlpInstance, CrossoverResult, Row, as_genotype
from .errors import (
    ParentNotClique,
    OverflowRisk,
    ParentNotCover,
    ParentNotIndependent,
    ValidationError,
)
from .flow import BipartiteWeighted, bipartite_mwis


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: tuple  # sorted (u, v) pairs with u < v
    weights: tuple

    def __post_init__(self):
        n = int(self.n)
        w = tuple(int(x) for x in self.weights)
        if len(w) != n:
            raise ValidationError(f"{len(w)} weights given for {n} vertices")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in norm:
                raise ValidationError(f"duplicate edge {e}")
            norm.add(e)
        if sum(abs(x) for x in w) >= 2**62:
            raise OverflowRisk("vertex weights exceed the exact range")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def unchecked(cls, n, edges, weights):
        """Build from already-normalised sorted edges without re-validating."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "edges", edges)
        object.__setattr__(g, "weights", tuple(weights))
        return g

    @cached_property
    def edge_array(self) -> np.ndarray:
        if not self.edges:
            return np.zeros((0, 2), dtype=np.int64)
        return np.array(self.edges, dtype=np.int64)

    @cached_property
    def adjacency(self) -> tuple:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def weight(self, x) -> int:
        return sum(w for w, xj in zip(self.weights, x) if xj)

    def complement(self) -> "WeightedGraph":
        present = set(self.edges)
        edges = tuple(
            (u, v) for u in range(self.n) for v in range(u + 1, self.n) if (u, v) not in present
        )
        return WeightedGraph.unchecked(self.n, edges, self.weights)

    # BLP encodings, used by the oracle and the generic paths
    def mwis_blp(self) -> BlpInstance:
        return BlpInstance(self.weights, [Row(((u, 1), (v, 1)), 1, LE) for u, v in self.edges], MAX)

    def clique_blp(self) -> BlpInstance:
        return self.complement().mwis_blp()

    def cover_blp(self) -> BlpInstance:
        return BlpInstance(self.weights, [Row(((u, 1), (v, 1)), 1, GE) for u, v in self.edges], MIN)


def is_independent(g: WeightedGraph, x) -> bool:
    x = np.asarray(x, dtype=bool)
    E = g.edge_array
    return not bool(np.any(x[E[:, 0]] & x[E[:, 1]]))


def is_clique(g: WeightedGraph, x) -> bool:
    members = [j for j, v in enumerate(x) if v]
    adj = g.adjacency
    return all(v in adj[u] for i, u in enumerate(members) for v in members[i + 1:])


def is_cover(g: WeightedGraph, x) -> bool:
    x = np.asarray(x, dtype=bool)
    E = g.edge_array
    return bool(np.all(x[E[:, 0]] | x[E[:, 1]]))


def _parents(g: WeightedGraph, p1, p2):
    return as_genotype(p1, g.n), as_genotype(p2, g.n)


def d_conflict_edges(g: WeightedGraph, p1, p2) -> list:
    """Edges of ``g`` with both endpoints in the difference set, oriented (p1-side, p2-side)."""
    x1 = np.asarray(p1, dtype=bool)
    x2 = np.asarray(p2, dtype=bool)
    E = g.edge_array
    dm = x1 ^ x2
    sel = dm[E[:, 0]] & dm[E[:, 1]]
    out = []
    for u, v in E[sel].tolist():
        out.append((u, v) if x1[u] else (v, u))
    return out


def ogtc_mwis(g: WeightedGraph, p1, p2) -> CrossoverResult:
    """Best gene-transmitting independent set, via max-flow on the parents' difference."""
    p1, p2 = _parents(g, p1, p2)
    x1 = np.asarray(p1, dtype=bool)
    x2 = np.asarray(p2, dtype=bool)
    E = g.edge_array
    for name, x in (("p1", x1), ("p2", x2)):
        bad = np.nonzero(x[E[:, 0]] & x[E[:, 1]])[0]
        if len(bad):
            u, v = E[bad[0]]
            raise ParentNotIndependent(f"parent {name} contains edge ({u}, {v})")

    w = np.array(g.weights, dtype=np.int64)
    common = x1 & x2
    side_a = x1 & ~x2 & (w > 0)
    side_b = x2 & ~x1 & (w > 0)
    a_nodes = np.nonzero(side_a)[0]
    b_nodes = np.nonzero(side_b)[0]
    a_pos = {int(v): i for i, v in enumerate(a_nodes)}
    b_pos = {int(v): i for i, v in enumerate(b_nodes)}

    active = side_a | side_b
    sel = active[E[:, 0]] & active[E[:, 1]]
    cross = []
    for u, v in E[sel].tolist():
        if side_a[u] and side_b[v]:
            cross.append((a_pos[u], b_pos[v]))
        elif side_b[u] and side_a[v]:
            cross.append((a_pos[v], b_pos[u]))
        else:
            raise ParentNotIndependent(f"difference subgraph is not bipartite at edge ({u}, {v})")

    res = bipartite_mwis(
        BipartiteWeighted(
            tuple(int(w[v]) for v in a_nodes), tuple(int(w[v]) for v in b_nodes), tuple(cross)
        )
    )
    child = common.copy()
    child[a_nodes[list(res.a)]] = True
    child[b_nodes[list(res.b)]] = True
    x = tuple(int(v) for v in child)
    return CrossoverResult(x, int(w[child].sum()), ("graph:mwis", "flow:bipartite_mwis"), (p1, p2))


def ogtc_max_clique(g: WeightedGraph, p1, p2) -> CrossoverResult:
    p1, p2 = _parents(g, p1, p2)
    for name, p in (("p1", p1), ("p2", p2)):
        if not is_clique(g, p):
            raise ParentNotClique(f"parent {name} is not a clique")
    # complement materialised explicitly: O(n^2) edges
    res = ogtc_mwis(g.complement(), p1, p2)
    return CrossoverResult(res.offspring, res.value, ("graph:complement",) + res.trace, (p1, p2))


def ogtc_min_vertex_cover(g: WeightedGraph, p1, p2) -> CrossoverResult:
    p1, p2 = _parents(g, p1, p2)
    for name, p in (("p1", p1), ("p2", p2)):
        if not is_cover(g, p):
            raise ParentNotCover(f"parent {name} leaves an edge uncovered")
    flip = lambda x: tuple(1 - v for v in x)  # noqa: E731
    res = ogtc_mwis(g, flip(p1), flip(p2))
    x = flip(res.offspring)
    return CrossoverResult(x, g.weight(x), ("graph:negate",) + res.trace, (p1, p2))
