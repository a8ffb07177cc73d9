import pytest

from ogtc.blp import brute_force_ogtc
from ogtc.errors import ParentNotClique, ParentNotCover, ParentNotIndependent, ValidationError
from ogtc.graph import (
    WeightedGraph,
    is_clique,
    is_cover,
    is_independent,
    ogtc_max_clique,
    ogtc_min_vertex_cover,
    ogtc_mwis,
)

PATH = WeightedGraph(3, ((0, 1), (1, 2)), (1, 5, 1))
TRIANGLE = WeightedGraph(3, ((0, 1), (0, 2), (1, 2)), (1, 1, 1))


class TestGraph:
    def test_normalises_edges(self):
        g = WeightedGraph(3, ((2, 1), (1, 0)), (1, 1, 1))
        assert g.edges == ((0, 1), (1, 2))

    @pytest.mark.parametrize("edges", [((0, 0),), ((0, 1), (1, 0)), ((0, 3),)])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(ValidationError):
            WeightedGraph(3, edges, (1, 1, 1))

    def test_predicates(self):
        assert is_independent(PATH, (1, 0, 1))
        assert not is_independent(PATH, (1, 1, 0))
        assert is_clique(TRIANGLE, (1, 1, 1))
        assert is_cover(PATH, (0, 1, 0))
        assert not is_cover(PATH, (1, 0, 0))

    def test_complement(self):
        assert PATH.complement().edges == ((0, 2),)


class TestMwis:
    def test_path(self):
        res = ogtc_mwis(PATH, (1, 0, 1), (0, 1, 0))
        assert res.offspring == (0, 1, 0) and res.value == 5
        assert res.value == brute_force_ogtc(PATH.mwis_blp(), (1, 0, 1), (0, 1, 0)).value

    def test_identical_parents(self):
        assert ogtc_mwis(PATH, (1, 0, 1), (1, 0, 1)).offspring == (1, 0, 1)

    def test_single_edge(self):
        g = WeightedGraph(2, ((0, 1),), (3, 1))
        res = ogtc_mwis(g, (1, 0), (0, 1))
        assert res.offspring == (1, 0) and res.value == 3

    def test_negative_weights_dropped(self):
        g = WeightedGraph(3, (), (-2, 4, -1))
        res = ogtc_mwis(g, (1, 0, 0), (0, 1, 1))
        assert res.offspring == (0, 1, 0)

    def test_common_vertices_kept(self):
        # a shared negative vertex is transmitted regardless of its weight
        g = WeightedGraph(2, (), (-3, 1))
        assert ogtc_mwis(g, (1, 0), (1, 1)).offspring == (1, 1)

    def test_rejects_dependent_parent(self):
        with pytest.raises(ParentNotIndependent, match="p1"):
            ogtc_mwis(PATH, (1, 1, 0), (0, 1, 0))


class TestClique:
    def test_triangle(self):
        res = ogtc_max_clique(TRIANGLE, (1, 1, 0), (0, 1, 1))
        assert res.offspring == (1, 1, 1) and res.value == 3
        assert res.trace[0] == "graph:complement"

    def test_isolated(self):
        g = WeightedGraph(2, (), (2, 7))
        res = ogtc_max_clique(g, (1, 0), (0, 1))
        assert res.offspring == (0, 1) and res.value == 7

    def test_identical_parents(self):
        assert ogtc_max_clique(TRIANGLE, (0, 1, 1), (0, 1, 1)).offspring == (0, 1, 1)

    def test_rejects_non_clique(self):
        with pytest.raises(ParentNotClique):
            ogtc_max_clique(PATH, (1, 0, 1), (0, 1, 0))


class TestCover:
    def test_path(self):
        res = ogtc_min_vertex_cover(PATH, (0, 1, 0), (1, 0, 1))
        assert res.offspring == (1, 0, 1) and res.value == 2

    def test_single_edge(self):
        g = WeightedGraph(2, ((0, 1),), (1, 4))
        res = ogtc_min_vertex_cover(g, (1, 0), (0, 1))
        assert res.offspring == (1, 0) and res.value == 1

    def test_identical_parents(self):
        assert ogtc_min_vertex_cover(PATH, (1, 1, 1), (1, 1, 1)).offspring == (1, 1, 1)

    def test_rejects_non_cover(self):
        with pytest.raises(ParentNotCover, match="p2"):
            ogtc_min_vertex_cover(PATH, (0, 1, 0), (1, 0, 0))
