"""Integer max-flow (Dinic) and bipartite maximum-weight independent set.

The independent set comes from flow duality: with arcs source->A (weight),
A->B (infinite) and B->sink (weight), a minimum cut is a minimum-weight vertex
cover and its complement is a maximum-weight independent set.
"""
from __future__ import annotations

from collections import deque
from contextlib import contextmanager
from dataclasses import dataclass
from typing import NamedTuple

from .errors import FlowDualityViolated, MalformedNetwork

INFINITE = None  # capacity marker; resolved to 1 + sum of finite capacities

_duality_logs = []


@contextmanager
def record_duality():
    """Collect ``(selected weight, cut, total)`` for every bipartite solve in the block."""
    log = []
    _duality_logs.append(log)
    try:
        yield log
    finally:
        _duality_logs.remove(log)


@dataclass(frozen=True)
class FlowNetwork:
    n: int
    arcs: tuple  # (tail, head, capacity or INFINITE)
    source: int
    sink: int

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(tuple(a) for a in self.arcs))
        if self.n < 2:
            raise MalformedNetwork("a network needs at least two nodes")
        if not (0 <= self.source < self.n and 0 <= self.sink < self.n):
            raise MalformedNetwork("source/sink out of range")
        if self.source == self.sink:
            raise MalformedNetwork("source and sink coincide")
        for k, (u, v, cap) in enumerate(self.arcs):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise MalformedNetwork(f"arc {k} has an endpoint out of range")
            if cap is not INFINITE and (int(cap) != cap or cap < 0):
                raise MalformedNetwork(f"arc {k} has invalid capacity {cap!r}")

    @property
    def infinite(self) -> int:
        return 1 + sum(cap for _, _, cap in self.arcs if cap is not INFINITE)

    def capacity(self, cap) -> int:
        return self.infinite if cap is INFINITE else cap

    def cut_capacity(self, side) -> int:
        """Capacity of the arcs leaving ``side`` (infinite arcs count at their resolved value)."""
        side = set(side)
        inf = self.infinite
        return sum(
            (inf if cap is INFINITE else cap)
            for u, v, cap in self.arcs
            if u in side and v not in side
        )


class MaxFlowSolver:
    """Dinic's blocking-flow algorithm on a residual graph held in flat lists.

    Arc ``e`` and its reverse ``e ^ 1`` are stored side by side.
    """

    def __init__(self, net: FlowNetwork):
        self.net = net
        self.n = net.n
        self.adj = [[] for _ in range(net.n)]
        self.to = []
        self.cap = []
        inf = net.infinite
        for u, v, c in net.arcs:
            c = inf if c is INFINITE else c
            self.adj[u].append(len(self.to))
            self.to.append(v)
            self.cap.append(c)
            self.adj[v].append(len(self.to))
            self.to.append(u)
            self.cap.append(0)
        self.value = None

    def _levels(self):
        level = [-1] * self.n
        s = self.net.source
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for e in self.adj[u]:
                v = self.to[e]
                if self.cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    q.append(v)
        return level

    def _blocking_flow(self, level) -> int:
        s, t = self.net.source, self.net.sink
        adj, to, cap = self.adj, self.to, self.cap
        ptr = [0] * self.n
        flow = 0
        path = []
        u = s
        while True:
            if u == t:
                bott = min(cap[e] for e in path)
                for e in path:
                    cap[e] -= bott
                    cap[e ^ 1] += bott
                flow += bott
                k = next(i for i, e in enumerate(path) if cap[e] == 0)
                del path[k:]
                u = to[path[-1]] if path else s
                continue
            edges = adj[u]
            p = ptr[u]
            while p < len(edges):
                e = edges[p]
                if cap[e] > 0 and level[to[e]] == level[u] + 1:
                    break
                p += 1
            ptr[u] = p
            if p == len(edges):
                if u == s:
                    return flow
                level[u] = -1
                e = path.pop()
                u = to[e ^ 1]
                ptr[u] += 1
                continue
            path.append(edges[p])
            u = to[edges[p]]

    def run(self) -> int:
        if self.value is None:
            total = 0
            while True:
                level = self._levels()
                if level[self.net.sink] < 0:
                    break
                total += self._blocking_flow(level)
            self.value = total
        return self.value

    def source_side(self, maximal: bool = False) -> frozenset:
        """Source side of a minimum cut.

        ``maximal=False`` gives the nodes reachable from the source in the
        residual graph; ``maximal=True`` gives all nodes that cannot reach the sink.
        """
        self.run()
        seen = [False] * self.n
        if not maximal:
            start = self.net.source
            seen[start] = True
            q = deque([start])
            while q:
                u = q.popleft()
                for e in self.adj[u]:
                    v = self.to[e]
                    if self.cap[e] > 0 and not seen[v]:
                        seen[v] = True
                        q.append(v)
            return frozenset(i for i in range(self.n) if seen[i])
        # v can reach u in the residual graph iff arc (v -> u) has residual capacity,
        # i.e. the reverse partner of some arc stored at u
        start = self.net.sink
        seen[start] = True
        q = deque([start])
        while q:
            u = q.popleft()
            for e in self.adj[u]:
                v = self.to[e]
                if self.cap[e ^ 1] > 0 and not seen[v]:
                    seen[v] = True
                    q.append(v)
        return frozenset(i for i in range(self.n) if not seen[i])


def max_flow(net: FlowNetwork, maximal_cut: bool = False) -> tuple:
    """Return ``(flow value, source side of a minimum cut)``."""
    solver = MaxFlowSolver(net)
    value = solver.run()
    side = solver.source_side(maximal_cut)
    if net.cut_capacity(side) != value:
        raise FlowDualityViolated(
            f"flow {value} differs from cut capacity {net.cut_capacity(side)}"
        )
    return value, side


@dataclass(frozen=True)
class BipartiteWeighted:
    """Two vertex sides with positive weights and edges ``(a index, b index)``."""

    a_weights: tuple
    b_weights: tuple
    edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "a_weights", tuple(int(w) for w in self.a_weights))
        object.__setattr__(self, "b_weights", tuple(int(w) for w in self.b_weights))
        object.__setattr__(self, "edges", tuple((int(i), int(j)) for i, j in self.edges))
        if any(w <= 0 for w in self.a_weights + self.b_weights):
            raise MalformedNetwork("bipartite weights must be strictly positive")
        na, nb = len(self.a_weights), len(self.b_weights)
        for i, j in self.edges:
            if not (0 <= i < na and 0 <= j < nb):
                raise MalformedNetwork(f"edge ({i}, {j}) is out of range")

    @property
    def total(self) -> int:
        return sum(self.a_weights) + sum(self.b_weights)


class BipartiteMwis(NamedTuple):
    a: tuple  # selected side-A indices
    b: tuple  # selected side-B indices
    weight: int
    cut: int


def bipartite_mwis(g: BipartiteWeighted) -> BipartiteMwis:
    na, nb = len(g.a_weights), len(g.b_weights)
    total = g.total
    if not g.edges:
        for log in _duality_logs:
            log.append((total, 0, total))
        return BipartiteMwis(tuple(range(na)), tuple(range(nb)), total, 0)
    s, t = 0, na + nb + 1
    arcs = [(s, 1 + i, w) for i, w in enumerate(g.a_weights)]
    arcs += [(1 + na + j, t, w) for j, w in enumerate(g.b_weights)]
    arcs += [(1 + i, 1 + na + j, INFINITE) for i, j in g.edges]
    cut, side = max_flow(FlowNetwork(na + nb + 2, tuple(arcs), s, t), maximal_cut=True)
    # A in the cover iff cut off from the source; B in the cover iff on the source side
    sel_a = tuple(i for i in range(na) if 1 + i in side)
    sel_b = tuple(j for j in range(nb) if 1 + na + j not in side)
    weight = sum(g.a_weights[i] for i in sel_a) + sum(g.b_weights[j] for j in sel_b)
    for log in _duality_logs:
        log.append((weight, cut, total))
    if weight + cut != total:
        raise FlowDualityViolated(f"selected {weight} + cut {cut} != total {total}")
    chosen_b = set(sel_b)
    chosen_a = set(sel_a)
    if any(i in chosen_a and j in chosen_b for i, j in g.edges):
        raise FlowDualityViolated("selected set is not independent")
    return BipartiteMwis(sel_a, sel_b, weight, cut)
