import numpy as np
import pytest

import qdecomp.decomposer as D
from oracles import complete, cycle, er_corpus, nx_mvc, nx_omega, path, star
from qdecomp.decomposer import (EngineConfig, Subproblem, combine_mc, combine_mvc,
                                decompose_and_solve, select_vertex, split_mc, split_mvc)
from qdecomp.graph import Graph, GraphError, erdos_renyi, is_clique, is_vertex_cover
from qdecomp.solvers import LeafLimitError, LeafSolveError, LeafSolver, Solution

NO_PRUNE = dict(bounds=(), reductions=())


def rng():
    return np.random.default_rng(0)


class TestSelect:
    def test_high_on_path(self):
        assert select_vertex(path(3), "high", rng()) == 1

    def test_low_on_path_is_an_end(self):
        picks = {select_vertex(path(3), "low", np.random.default_rng(s)) for s in range(40)}
        assert picks == {0, 2}

    def test_median_lower_median(self):
        # degrees: star centre 4, leaves 1 -> lower median 1
        assert select_vertex(star(4), "median", rng()) != 0
        # path 0-1-2-3: degrees 1,2,2,1 -> sorted 1,1,2,2, lower median 1
        assert select_vertex(path(4), "median", rng()) in (0, 3)

    def test_any_on_complete(self):
        for s in ("low", "median", "high", "random"):
            assert select_vertex(complete(4), s, rng()) in range(4)

    def test_empty_rejected(self):
        with pytest.raises(GraphError):
            select_vertex(Graph.from_edges(0, []), "low", rng())


class TestSplit:
    def test_mc_triangle(self):
        plus, minus = split_mc(Subproblem(complete(3)), 0)
        assert plus.graph.labels == (1, 2) and plus.graph.m == 1
        assert plus.committed == {0} and plus.delta == 1
        assert minus.graph.labels == (1, 2) and minus.delta == 0

    def test_mc_star_centre(self):
        plus, minus = split_mc(Subproblem(star(3)), 0)
        assert plus.graph.n == 3 and plus.graph.m == 0
        assert minus.graph.n == 3 and minus.graph.m == 0

    def test_mc_isolated(self):
        plus, _ = split_mc(Subproblem(Graph.from_edges(3, [(0, 1)])), 2)
        assert plus.graph.n == 0 and plus.committed == {2}

    def test_mvc_star_centre(self):
        plus, minus = split_mvc(Subproblem(star(3)), 0)
        assert plus.graph.n == 3 and plus.graph.m == 0 and plus.delta == 1
        assert minus.graph.n == 0 and minus.committed == {1, 2, 3} and minus.delta == 3

    def test_mvc_edge(self):
        plus, minus = split_mvc(Subproblem(complete(2)), 0)
        assert plus.graph.labels == (1,) and plus.delta == 1
        assert minus.committed == {1} and minus.graph.n == 0 and minus.delta == 1

    def test_mvc_isolated(self):
        plus, minus = split_mvc(Subproblem(Graph.from_edges(2, [])), 0)
        assert plus.delta == 1 and minus.delta == 0

    def test_children_strictly_smaller(self):
        g = erdos_renyi(12, 0.5, 1)
        for v in g.labels:
            for split in (split_mc, split_mvc):
                for child in split(Subproblem(g), v):
                    assert child.graph.n < g.n

    def test_unknown_vertex(self):
        with pytest.raises(GraphError):
            split_mc(Subproblem(complete(3)), 9)


def test_combine():
    two, three = Solution.of({1, 2}), Solution.of({0, 1, 2})
    assert combine_mc(three, two) is three
    assert combine_mvc(Solution.of({0}), Solution.of({1, 2, 3})).value == 1
    assert combine_mc(None, two) is two and combine_mvc(two, None) is two


class TestDecompose:
    def test_triangle_needs_a_split(self):
        sol, m = decompose_and_solve(complete(3), "mc", EngineConfig(cutoff=2))
        assert sol.value == 3 and m.split_count >= 1

    def test_c5_cover(self):
        sol, _ = decompose_and_solve(cycle(5), "mvc", EngineConfig(cutoff=3))
        assert sol.value == 3 and is_vertex_cover(cycle(5), sol.vertices)

    @pytest.mark.parametrize("problem", ["mc", "mvc"])
    @pytest.mark.parametrize("incumbent", ["heuristic", "decomposition"])
    def test_empty_graph(self, problem, incumbent):
        sol, m = decompose_and_solve(Graph.from_edges(0, []), problem, EngineConfig(incumbent=incumbent))
        assert sol.value == 0 and sol.vertices == set() and m.leaf_count <= 1

    def test_whole_graph_fits(self):
        _, m = decompose_and_solve(cycle(5), "mc", EngineConfig(cutoff=5))
        assert m.leaf_count == 1 and m.split_count == 0

    def test_rejects_wrong_reduction(self):
        with pytest.raises(ValueError, match="nbvr"):
            decompose_and_solve(cycle(5), "mc", EngineConfig(reductions={"nbvr"}))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            EngineConfig(cutoff=0)
        with pytest.raises(ValueError):
            EngineConfig(selection="widest")

    def test_leaf_failure_names_node(self):
        g = erdos_renyi(80, 0.5, 0)
        with pytest.raises(LeafSolveError) as info:
            decompose_and_solve(g, "mc", EngineConfig(cutoff=70, **NO_PRUNE),
                                LeafSolver(exact_limit=10))
        assert isinstance(info.value.cause, LeafLimitError) and info.value.node >= 2


CORPUS = er_corpus(40, 8, 16, base_seed=4000)


@pytest.mark.parametrize("selection", ["low", "median", "high", "random"])
@pytest.mark.parametrize("cutoff", [4, 8])
def test_oracle_equivalence_sample(selection, cutoff):
    for n, p, seed, g in CORPUS:
        cfg = EngineConfig(cutoff=cutoff, selection=selection, seed=seed)
        mc, _ = decompose_and_solve(g, "mc", cfg)
        mvc, _ = decompose_and_solve(g, "mvc", cfg)
        assert mc.value == nx_omega(g) and is_clique(g, mc.vertices)
        assert mvc.value == nx_mvc(g) and is_vertex_cover(g, mvc.vertices)


CONFIGS = {
    "mc": [dict(bounds={"chromatic"}), dict(bounds={"deterministic"}), dict(reductions={"kcore"}),
           dict(reductions={"edge-kcore"}), dict(reductions={"persistency"}),
           dict(reductions={"kcore", "persistency"}, incumbent="decomposition")],
    "mvc": [dict(bounds={"chromatic"}), dict(bounds={"deterministic"}), dict(reductions={"nbvr"}),
            dict(reductions={"persistency"}),
            dict(reductions={"nbvr", "persistency"}, incumbent="decomposition")],
}


@pytest.mark.parametrize("problem", ["mc", "mvc"])
def test_prune_neutrality(problem):
    for n, p, seed, g in CORPUS[:20]:
        base, _ = decompose_and_solve(g, problem, EngineConfig(cutoff=4, seed=seed, **NO_PRUNE))
        for extra in CONFIGS[problem]:
            cfg = dict(NO_PRUNE)
            cfg.update(extra)
            sol, _ = decompose_and_solve(g, problem, EngineConfig(cutoff=4, seed=seed, **cfg))
            assert sol.value == base.value, extra


@pytest.mark.parametrize("problem", ["mc", "mvc"])
def test_exhaustive_tree_bound_and_depth(problem):
    for n, p, seed, g in CORPUS[:15]:
        for cutoff in (4, 8):
            _, m = decompose_and_solve(g, problem, EngineConfig(cutoff=cutoff, seed=seed, **NO_PRUNE))
            assert m.pruned_count == 0
            assert m.leaf_count <= 2 ** (n - cutoff + 1)
            assert m.max_depth <= n


def test_complementarity_end_to_end():
    for n, p, seed, g in CORPUS:
        cfg = EngineConfig(cutoff=6, seed=seed)
        mvc, _ = decompose_and_solve(g, "mvc", cfg)
        mc, _ = decompose_and_solve(g.complement(), "mc", cfg)
        assert mvc.value + mc.value == n


def test_prunes_only_against_feasible_incumbent():
    for n, p, seed, g in CORPUS[:20]:
        for problem in ("mc", "mvc"):
            sol, m = decompose_and_solve(g, problem, EngineConfig(cutoff=4, seed=seed,
                                                                  incumbent="decomposition"))
            # checks without an incumbent happen only before the first leaf
            assert m.unbounded_checks <= m.checks_before_first_leaf
            ok = is_clique if problem == "mc" else is_vertex_cover
            assert ok(g, sol.vertices)


def test_leaf_count_matches_solver_calls(monkeypatch):
    calls = []
    real = D.leaf_solve

    def counting(sub, problem, solver, seed=0):
        calls.append(sub.node)
        return real(sub, problem, solver, seed)

    monkeypatch.setattr(D, "leaf_solve", counting)
    for n, p, seed, g in CORPUS[:10]:
        calls.clear()
        _, m = decompose_and_solve(g, "mc", EngineConfig(cutoff=4, seed=seed))
        assert m.leaf_count == len(calls) == len(set(calls))


def test_reproducible_metrics_single_worker():
    g = erdos_renyi(30, 0.5, 12)
    cfg = EngineConfig(cutoff=8, selection="random", seed=5)
    zero = lambda: 0.0  # noqa: E731
    a = decompose_and_solve(g, "mc", cfg, clock=zero)
    b = decompose_and_solve(g, "mc", cfg, clock=zero)
    assert a[0] == b[0] and a[1] == b[1]


@pytest.mark.parametrize("problem", ["mc", "mvc"])
def test_parallel_workers_same_objective(problem):
    for n, p, seed, g in er_corpus(8, 18, 24, base_seed=11):
        one, _ = decompose_and_solve(g, problem, EngineConfig(cutoff=5, seed=seed))
        many, _ = decompose_and_solve(g, problem, EngineConfig(cutoff=5, seed=seed, workers=4))
        assert one.value == many.value


def test_anneal_leaves_feasible_and_not_better_than_optimal():
    for n, p, seed, g in CORPUS[:10]:
        for problem in ("mc", "mvc"):
            sol, _ = decompose_and_solve(g, problem, EngineConfig(cutoff=6, seed=seed),
                                         LeafSolver("anneal"))
            if problem == "mc":
                assert is_clique(g, sol.vertices) and sol.value <= nx_omega(g)
            else:
                assert is_vertex_cover(g, sol.vertices) and sol.value >= nx_mvc(g)
