"""MAX-SAT with a graph-based solution representation.

Each variable gets an adjacent pair of truth vertices of weight M (the number
of clauses); each literal occurrence gets a weight-1 vertex joined to the other
occurrences of its clause and to the truth vertex of the opposite literal. An
assignment becomes an independent set of weight ``N*M + satisfied clauses``,
and the crossover works on independent sets rather than on assignments.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .blp import as_genotype
from .errors import ValidationError, WeightBelowThreshold
from .graph import WeightedGraph, ogtc_mwis


@dataclass(frozen=True)
class CnfInstance:
    """``n_vars`` variables; clauses are tuples of ``(variable, positive)`` literals."""

    n_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple((int(v), bool(pol)) for v, pol in cl) for cl in self.clauses)
        for i, cl in enumerate(clauses):
            if not cl:
                raise ValidationError(f"clause {i} is empty")
            for v, _ in cl:
                if not 0 <= v < self.n_vars:
                    raise ValidationError(f"clause {i} references variable {v}")
        object.__setattr__(self, "clauses", clauses)

    @property
    def M(self) -> int:
        return len(self.clauses)


def satisfied(clause, y: Sequence[int]) -> bool:
    return any(bool(y[v]) == pol for v, pol in clause)


def f_sat(cnf: CnfInstance, y: Sequence[int]) -> int:
    return sum(satisfied(cl, y) for cl in cnf.clauses)


class Occurrence(NamedTuple):
    vertex: int
    clause: int
    var: int
    positive: bool


@dataclass(frozen=True)
class SatGraph:
    graph: WeightedGraph
    truth: tuple  # per variable: (positive vertex, negative vertex)
    occurrences: tuple  # Occurrence records in vertex order
    n_vars: int
    n_clauses: int

    @property
    def threshold(self) -> int:
        return self.n_vars * self.n_clauses


def build_sat_graph(cnf: CnfInstance) -> SatGraph:
    N, M = cnf.n_vars, cnf.M
    weights = [M] * (2 * N)
    truth = tuple((2 * v, 2 * v + 1) for v in range(N))
    edges = [(2 * v, 2 * v + 1) for v in range(N)]
    occ = []
    for ci, cl in enumerate(cnf.clauses):
        first = len(weights)
        for v, pol in cl:
            vert = len(weights)
            weights.append(1)
            occ.append(Occurrence(vert, ci, v, pol))
            opposite = truth[v][1] if pol else truth[v][0]
            edges.append((opposite, vert))
        for a in range(first, len(weights)):
            for b in range(a + 1, len(weights)):
                edges.append((a, b))
    g = WeightedGraph(len(weights), tuple(edges), tuple(weights))
    return SatGraph(g, truth, tuple(occ), N, M)


def encode_assignment(sg: SatGraph, y: Sequence[int]) -> tuple:
    y = as_genotype(y, sg.n_vars)
    x = [0] * sg.graph.n
    for v, (pos, neg) in enumerate(sg.truth):
        x[pos if y[v] else neg] = 1
    done = set()
    for o in sg.occurrences:
        if o.clause not in done and bool(y[o.var]) == o.positive:
            x[o.vertex] = 1
            done.add(o.clause)
    return tuple(x)


def decode_independent_set(sg: SatGraph, S: Sequence[int]) -> tuple:
    """Assignment satisfying at least ``weight(S) - N*M`` clauses."""
    S = as_genotype(S, sg.graph.n)
    if sg.graph.weight(S) < sg.threshold:
        raise WeightBelowThreshold(
            f"set weight {sg.graph.weight(S)} is below N*M = {sg.threshold}"
        )
    y = [None] * sg.n_vars
    for v, (pos, neg) in enumerate(sg.truth):
        if S[pos]:
            y[v] = 1
        elif S[neg]:
            y[v] = 0
    for o in sg.occurrences:
        if S[o.vertex] and y[o.var] is None:
            y[o.var] = int(o.positive)
    return tuple(1 if v is None else v for v in y)


def ogtc_max3sat(cnf: CnfInstance, y1: Sequence[int], y2: Sequence[int]) -> tuple:
    sg = build_sat_graph(cnf)
    q1 = encode_assignment(sg, y1)
    q2 = encode_assignment(sg, y2)
    return decode_independent_set(sg, ogtc_mwis(sg.graph, q1, q2).offspring)
