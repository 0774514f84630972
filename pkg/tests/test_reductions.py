import itertools

from hypothesis import given

from oracles import brute_mvc, brute_omega, complete, cycle, er_corpus, graphs, path
from qdecomp.decomposer import Subproblem
from qdecomp.graph import Graph
from qdecomp.reductions import (mc_edge_kcore_reduce, mc_kcore_reduce, nbvr_reduce,
                                persistency_reduce)


def k4_plus_k2():
    return Graph.from_edges(6, list(itertools.combinations(range(4), 2)) + [(4, 5)])


class TestKCore:
    def test_examples(self):
        assert mc_kcore_reduce(k4_plus_k2(), 2).labels == (0, 1, 2, 3)
        assert mc_kcore_reduce(complete(4), 3) == complete(4)
        assert mc_kcore_reduce(cycle(5), 2) == cycle(5)

    @given(graphs(max_n=10))
    def test_large_cliques_survive(self, g):
        w = brute_omega(g)
        for L in range(0, w):
            assert brute_omega(mc_kcore_reduce(g, L)) == w
            assert brute_omega(mc_edge_kcore_reduce(g, L)) == w


class TestEdgeKCore:
    def test_cycle_loses_everything(self):
        assert mc_edge_kcore_reduce(cycle(5), 2).m == 0

    def test_complete_kept(self):
        assert mc_edge_kcore_reduce(complete(4), 3) == complete(4)

    def test_triangle_kept(self):
        assert mc_edge_kcore_reduce(complete(3), 2) == complete(3)

    def test_strips_tail_edges(self):
        # K4 with a tail path: tail edges have no common neighbours
        g = Graph.from_edges(6, list(itertools.combinations(range(4), 2)) + [(3, 4), (4, 5)])
        assert mc_edge_kcore_reduce(g, 3).labels == (0, 1, 2, 3)


class TestNbvr:
    def test_path(self):
        out = nbvr_reduce(Subproblem(path(3)))
        assert out.committed == {1} and out.delta == 1 and out.graph.n == 0

    def test_triangle(self):
        out = nbvr_reduce(Subproblem(complete(3)))
        assert out.delta == 2 and out.committed == {0, 1} and out.graph.n == 0

    def test_empty(self):
        out = nbvr_reduce(Subproblem(Graph.from_edges(5, [])))
        assert out.delta == 0 and out.graph.n == 0 and out.removed_vertices == 5

    def test_triangle_with_tail_not_triangle_rule(self):
        # degree-1 rule applies instead; result must stay exact
        g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        out = nbvr_reduce(Subproblem(g))
        assert out.delta + brute_mvc(out.graph) == brute_mvc(g)

    def test_cycle_untouched(self):
        out = nbvr_reduce(Subproblem(cycle(5)))
        assert out.graph == cycle(5) and out.delta == 0

    @given(graphs(max_n=10))
    def test_safety(self, g):
        out = nbvr_reduce(Subproblem(g))
        assert out.delta == len(out.committed)
        assert not (out.committed & set(out.graph.labels))
        assert out.delta + brute_mvc(out.graph) == brute_mvc(g)
        # committed vertices plus any cover of the residual cover g
        residual_edges = set(out.graph.labeled_edges())
        for u, v in g.labeled_edges():
            assert u in out.committed or v in out.committed or (u, v) in residual_edges


class TestPersistencyReduce:
    def test_mvc_isolated_removed(self):
        out = persistency_reduce(Subproblem(Graph.from_edges(3, [(0, 1)])), "mvc")
        assert out.graph.labels == (0, 1) and out.delta == 0

    def test_mc_single_vertex(self):
        out = persistency_reduce(Subproblem(Graph.from_edges(1, [])), "mc")
        assert out.committed == {0} and out.delta == 1 and out.graph.n == 0

    def test_corpus_safety(self):
        for n, p, seed, g in er_corpus(90, 1, 10, base_seed=77):
            mc = persistency_reduce(Subproblem(g), "mc")
            assert mc.delta + brute_omega(mc.graph) == brute_omega(g), (n, p, seed)
            residual = set(mc.graph.labels)
            for v in mc.committed:
                assert residual <= g.neighbors(v)
            mvc = persistency_reduce(Subproblem(g), "mvc")
            assert mvc.delta + brute_mvc(mvc.graph) == brute_mvc(g), (n, p, seed)
