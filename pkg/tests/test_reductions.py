import numpy as np
import pytest

from ogtc.blp import EQ, GE, LE, MAX, MIN, BlpInstance, Row, brute_force_ogtc, feasible
from ogtc.errors import NotAPackingInstance, ValidationError
from ogtc.generators import random_graph_edges, random_independent_set
from ogtc.graph import WeightedGraph, ogtc_min_vertex_cover, ogtc_mwis
from ogtc.reductions import (
    COPY,
    NEGATE,
    ReductionAdapter,
    SplpInstance,
    compose_ogtc,
    conflict_graph,
    double_columns,
    identity_adapter,
    ogtc_knapsack_fastpath,
    ogtc_set_covering_exact,
    ogtc_set_packing,
    ogtc_set_partition,
    ogtc_splp,
    partition_lambda,
    partition_to_packing,
    restrict_set_covering,
    splp_feasible,
    splp_lambda,
    splp_to_packing,
    verify_adapter,
)
from ogtc.suites import scp_optimum


def ones_rows(sets, sense, n=None):
    return [Row(tuple((j, 1) for j in s), 1, sense) for s in sets]


class TestAdapters:
    def test_identity_adapter_is_transparent(self):
        g = WeightedGraph(3, ((0, 1), (1, 2)), (1, 5, 1))
        ad = identity_adapter(3, lambda src: g, lambda t, x: t.weight(x), MAX, as_blp=lambda src: g.mwis_blp())
        lifted = compose_ogtc(ad, ogtc_mwis)(g, (1, 0, 1), (0, 1, 0))
        direct = ogtc_mwis(g, (1, 0, 1), (0, 1, 0))
        assert lifted.offspring == direct.offspring and lifted.value == direct.value

    def test_negation_adapter_reproduces_cover(self):
        rng = np.random.default_rng(11)
        flip = lambda x: tuple(1 - v for v in x)  # noqa: E731
        for _ in range(100):
            n = int(rng.integers(1, 13))
            g = WeightedGraph.unchecked(n, random_graph_edges(n, 0.4, rng), [int(v) for v in rng.integers(1, 9, n)])
            ad = ReductionAdapter(
                alpha=lambda src: src,
                beta=flip,
                beta_inverse=flip,
                modes=(NEGATE,) * n,
                targets=tuple(range(n)),
                target_value=lambda t, x: t.weight(x),
                target_sense=MAX,
                as_blp=WeightedGraph.cover_blp,
            )
            p1 = flip(random_independent_set(g, rng))
            p2 = flip(random_independent_set(g, rng))
            lifted = compose_ogtc(ad, ogtc_mwis)(g, p1, p2)
            assert lifted.value == ogtc_min_vertex_cover(g, p1, p2).value

    def test_verify_adapter_accepts_splp(self):
        s = SplpInstance((5, 1), ((2,), (10,)))
        _, ad = splp_to_packing(s)
        verify_adapter(ad, s, [(1, 0, 1, 0), (0, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1)])
        assert ad.modes[s.y_index(0)] == NEGATE and ad.modes[0] == COPY


class TestPacking:
    def test_conflict_graph(self):
        assert conflict_graph(BlpInstance((1, 1, 1), ones_rows([(0, 1), (1, 2)], LE))).edges == ((0, 1), (1, 2))
        assert conflict_graph(BlpInstance((1, 1, 1))).edges == ()
        assert conflict_graph(BlpInstance((1, 1, 1), ones_rows([(0, 1, 2)], LE))).edges == ((0, 1), (0, 2), (1, 2))

    def test_rejects_non_packing(self):
        with pytest.raises(NotAPackingInstance):
            conflict_graph(BlpInstance((1, 1), [Row(((0, 1), (1, 1)), 2, LE)]))

    def test_path_example(self):
        inst = BlpInstance((1, 5, 1), ones_rows([(0, 1), (1, 2)], LE))
        res = ogtc_set_packing(inst, (1, 0, 1), (0, 1, 0))
        assert res.offspring == (0, 1, 0) and res.value == 5

    def test_disjoint(self):
        inst = BlpInstance((2, 7), ones_rows([(0,), (1,)], LE))
        res = ogtc_set_packing(inst, (1, 0), (0, 1))
        assert res.offspring == (1, 1) and res.value == 9

    def test_identical_parents(self):
        inst = BlpInstance((1, 5, 1), ones_rows([(0, 1), (1, 2)], LE))
        assert ogtc_set_packing(inst, (0, 1, 0), (0, 1, 0)).offspring == (0, 1, 0)


class TestPartition:
    PART = BlpInstance((1, 1, 1), ones_rows([(0, 1), (1, 2)], EQ), MIN)

    def test_worked_example(self):
        assert partition_lambda(self.PART) == 7
        assert partition_to_packing(self.PART).c == (6, 13, 6)
        res = ogtc_set_partition(self.PART, (0, 1, 0), (1, 0, 1))
        assert res.offspring == (0, 1, 0) and res.value == 1

    def test_identity_matrix(self):
        inst = BlpInstance((4, 9), ones_rows([(0,), (1,)], EQ), MIN)
        res = ogtc_set_partition(inst, (1, 1), (1, 1))
        assert res.offspring == (1, 1) and res.value == 13

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValidationError):
            ogtc_set_partition(BlpInstance((1,), ones_rows([(0,)], LE), MIN), (1,), (0,))


class TestSplp:
    def test_lambda(self):
        assert splp_lambda(SplpInstance((5, 1), ((2,), (10,)))) == 8
        assert splp_lambda(SplpInstance((0,), ((0,),))) == 1

    def test_example(self):
        s = SplpInstance((5, 1), ((2,), (10,)))
        # layout (x_11, x_21, y_1, y_2)
        res = ogtc_splp(s, (1, 0, 1, 0), (0, 1, 0, 1))
        assert res.offspring == (1, 0, 1, 0) and res.value == 7
        assert res.value == brute_force_ogtc(s.to_blp(), (1, 0, 1, 0), (0, 1, 0, 1)).value

    def test_free_facility_stays_closed(self):
        s = SplpInstance((0, 0), ((1,), (3,)))
        res = ogtc_splp(s, (1, 0, 1, 0), (0, 1, 0, 1))
        assert res.offspring == (1, 0, 1, 0) and res.value == 1

    def test_identical_parents(self):
        s = SplpInstance((5, 1), ((2,), (10,)))
        assert ogtc_splp(s, (0, 1, 0, 1), (0, 1, 0, 1)).offspring == (0, 1, 0, 1)

    def test_fixed_open_facilities(self):
        # every facility already open in both parents; only the assignment can change
        s = SplpInstance((1, 7, 1, 7), ((8,), (10,), (4,), (9,)))
        p1, p2 = (0, 0, 0, 1, 0, 1, 1, 1), (0, 1, 0, 0, 0, 1, 1, 1)
        res = ogtc_splp(s, p1, p2)
        assert splp_feasible(s, res.offspring)
        assert res.value == brute_force_ogtc(s.to_blp(), p1, p2).value == 24

    def test_layout(self):
        s = SplpInstance((1, 2, 3), ((1, 1), (2, 2), (3, 3)))
        assert s.n == 9 and s.x_index(1, 0) == 2 and s.y_index(2) == 8


class TestKnapsack:
    def test_pair_conflict(self):
        inst = BlpInstance((2, 2), [Row(((0, 2), (1, 3)), 3, LE)], MAX)
        res = ogtc_knapsack_fastpath(inst, (1, 0), (0, 1))
        assert res.offspring == (1, 0) and res.value == 2

    def test_no_rows(self):
        inst = BlpInstance((3, -1, 2, 0))
        res = ogtc_knapsack_fastpath(inst, (1, 1, 0, 0), (0, 0, 1, 1))
        assert res.offspring == (1, 0, 1, 0)

    def test_wide_row_not_applicable(self):
        inst = BlpInstance((1, 1, 1), [Row(((0, 1), (1, 1), (2, 1)), 3, LE)], MAX)
        res = ogtc_knapsack_fastpath(inst, (1, 1, 1), (0, 0, 0))
        assert not res and "3 differing" in res.reason

    def test_ge_row_not_applicable(self):
        inst = BlpInstance((1, 1), [Row(((0, 1),), 0, GE)], MAX)
        assert not ogtc_knapsack_fastpath(inst, (1, 0), (0, 1))


class TestSetCovering:
    def test_restriction_full_difference(self):
        scp = BlpInstance((1, 1, 1), ones_rows([(0, 1), (1, 2)], GE), MIN)
        residual, emb = restrict_set_covering(scp, (1, 0, 1), (0, 1, 0))
        assert residual.m == 2 and emb.free == (0, 1, 2)

    def test_restriction_drops_covered_rows(self):
        scp = BlpInstance((3, 2), ones_rows([(0, 1), (1,)], GE), MIN)
        residual, emb = restrict_set_covering(scp, (1, 1), (0, 1))
        assert residual.m == 0 and emb.free == (0,)
        res = ogtc_set_covering_exact(scp, (1, 1), (0, 1))
        assert res.offspring == (0, 1) and res.value == 2

    def test_identical_parents(self):
        scp = BlpInstance((3, 2), ones_rows([(0, 1), (1,)], GE), MIN)
        residual, _ = restrict_set_covering(scp, (0, 1), (0, 1))
        assert residual.n == 0
        assert ogtc_set_covering_exact(scp, (0, 1), (0, 1)).offspring == (0, 1)

    def test_double_columns(self):
        scp = BlpInstance((1, 1), ones_rows([(0,), (1,)], GE), MIN)
        doubled, p1, p2 = double_columns(scp)
        assert doubled.c == (1, 1, 1, 1) and p1 == (1, 1, 0, 0) and p2 == (0, 0, 1, 1)
        assert doubled.rows[0].support == (0, 2)
        assert ogtc_set_covering_exact(doubled, p1, p2).value == 2 == scp_optimum(scp)

    def test_empty_double(self):
        doubled, p1, p2 = double_columns(BlpInstance((4, 5, 6), (), MIN))
        assert p1 == (1, 1, 1, 0, 0, 0) and feasible(doubled, p1)
        assert ogtc_set_covering_exact(doubled, p1, p2).value == 0

    def test_negative_costs_taken(self):
        scp = BlpInstance((2, -1, 3), ones_rows([(0, 2)], GE), MIN)
        res = ogtc_set_covering_exact(scp, (1, 1, 1), (0, 0, 1))
        assert res.offspring == (0, 1, 1) and res.value == 2
