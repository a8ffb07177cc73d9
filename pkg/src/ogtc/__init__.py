"""Optimized gene-transmitting crossover for Boolean linear programs.

Given two feasible parents, each operator returns the best feasible offspring
that takes every bit from one of the parents. Polynomial paths cover graph
problems, set packing/partition, plant location and two-column knapsack rows;
general instances go through a 2-colorable hypergraph or a brute-force oracle.
"""
from .blp import (
    EQ,
    GE,
    LE,
    MAX,
    MIN,
    BlpInstance,
    CrossoverResult,
    Row,
    brute_force_ogtc,
    diff_set,
    feasible,
    objective,
    transmits,
)
from .errors import InfeasibleParents, OgtcError, ParseError, ValidationError
from .flow import BipartiteWeighted, FlowNetwork, bipartite_mwis, max_flow
from .graph import WeightedGraph, ogtc_max_clique, ogtc_min_vertex_cover, ogtc_mwis
from .hypergraph import Hypergraph, hardness_gadget, hypergraph_mwis_exact, ogtc_via_hypergraph
from .maxsat import CnfInstance, f_sat, ogtc_max3sat
from .problems import Problem, make_problem, run_crossover
from .reductions import (
    SplpInstance,
    ogtc_knapsack_fastpath,
    ogtc_set_covering_exact,
    ogtc_set_packing,
    ogtc_set_partition,
    ogtc_splp,
)

__version__ = "0.1.0"
