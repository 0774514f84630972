"""Recursive vertex-splitting decomposition for maximum clique and minimum
vertex cover.

Every tree node is a :class:`Subproblem`. A node larger than the cutoff is
split at a selected vertex ``v`` into a "plus" child (``v`` in the solution)
and a "minus" child (``v`` not in it). Children whose bound cannot beat the
incumbent are discarded; the rest are shrunk by the enabled reductions and
either split again or handed to the leaf solver.

Node ids follow heap numbering (root 1, plus child ``2k``, minus ``2k+1``).
Each node draws its randomness from a stream keyed by ``(seed, node id)``,
so the tree does not depend on visiting order or worker count.
"""
from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import bounds as B
from .graph import Graph, GraphError, greedy_clique
from .metrics import ANNEAL_SECONDS, RunMetrics
from .reductions import (
    MC_REDUCTIONS,
    MVC_REDUCTIONS,
    mc_edge_kcore_reduce,
    mc_kcore_reduce,
    nbvr_reduce,
    persistency_reduce,
)
from .solvers import LeafSolveError, LeafSolver, Solution, leaf_solve

PROBLEMS = ("mc", "mvc")
SELECTIONS = ("low", "median", "high", "random")
TRAVERSALS = ("plus_first", "minus_first", "smaller_first")
BOUNDS = ("chromatic", "deterministic")
INCUMBENT_SOURCES = ("heuristic", "decomposition")


@dataclass(frozen=True)
class Subproblem:
    graph: Graph
    committed: frozenset = frozenset()
    delta: int = 0
    depth: int = 0
    node: int = 1


@dataclass(frozen=True)
class EngineConfig:
    cutoff: int = 64
    selection: str = "low"
    bounds: frozenset = frozenset(BOUNDS)
    reductions: frozenset = frozenset()
    traversal: str = "smaller_first"
    incumbent: str = "heuristic"
    seed: int = 0
    workers: int = 1
    anneal_seconds: float = ANNEAL_SECONDS

    def __post_init__(self):
        object.__setattr__(self, "bounds", frozenset(self.bounds))
        object.__setattr__(self, "reductions", frozenset(self.reductions))
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")
        if self.selection not in SELECTIONS:
            raise ValueError(f"unknown selection {self.selection!r}")
        if self.traversal not in TRAVERSALS:
            raise ValueError(f"unknown traversal {self.traversal!r}")
        if self.incumbent not in INCUMBENT_SOURCES:
            raise ValueError(f"unknown incumbent source {self.incumbent!r}")
        if not self.bounds <= set(BOUNDS):
            raise ValueError(f"unknown bounds {sorted(self.bounds - set(BOUNDS))}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def check_problem(self, problem: str):
        if problem not in PROBLEMS:
            raise ValueError(f"unknown problem {problem!r}")
        allowed = MC_REDUCTIONS if problem == "mc" else MVC_REDUCTIONS
        bad = sorted(self.reductions - set(allowed))
        if bad:
            raise ValueError(f"reductions {bad} do not apply to {problem}")


def node_rng(seed: int, node: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed) & (2**63 - 1), node]))


def node_seed(seed: int, node: int) -> int:
    ss = np.random.SeedSequence([int(seed) & (2**63 - 1), node, 1])
    return int(ss.generate_state(1, np.uint64)[0])


# ---------------------------------------------------------------------------
# vertex selection and splitting


def select_vertex(g: Graph, strategy: str, rng: np.random.Generator) -> int:
    """Label of the splitting vertex. Ties are broken uniformly at random."""
    if g.n == 0:
        raise GraphError("cannot select a vertex from an empty graph")
    deg = g.degrees()
    if strategy == "random":
        ties = list(range(g.n))
    else:
        if strategy == "low":
            target = min(deg)
        elif strategy == "high":
            target = max(deg)
        elif strategy == "median":
            target = sorted(deg)[(g.n - 1) // 2]
        else:
            raise ValueError(f"unknown selection {strategy!r}")
        ties = [i for i in range(g.n) if deg[i] == target]
    pick = ties[int(rng.integers(len(ties)))] if len(ties) > 1 else ties[0]
    return g.labels[pick]


def split_mc(sub: Subproblem, v: int) -> tuple[Subproblem, Subproblem]:
    g = sub.graph
    nbrs = g.neighbors(v)
    plus = Subproblem(g.induced_subgraph(nbrs), sub.committed | {v}, sub.delta + 1,
                      sub.depth + 1, 2 * sub.node)
    minus = Subproblem(g.remove([v]), sub.committed, sub.delta, sub.depth + 1, 2 * sub.node + 1)
    return plus, minus


def split_mvc(sub: Subproblem, v: int) -> tuple[Subproblem, Subproblem]:
    g = sub.graph
    nbrs = g.neighbors(v)
    plus = Subproblem(g.remove([v]), sub.committed | {v}, sub.delta + 1,
                      sub.depth + 1, 2 * sub.node)
    minus = Subproblem(g.remove(nbrs | {v}), sub.committed | nbrs, sub.delta + len(nbrs),
                       sub.depth + 1, 2 * sub.node + 1)
    return plus, minus


def combine_mc(plus: Solution | None, minus: Solution | None) -> Solution | None:
    """Larger clique wins; None marks a pruned branch; ties go to plus."""
    if plus is None:
        return minus
    if minus is None:
        return plus
    return plus if plus.value >= minus.value else minus


def combine_mvc(plus: Solution | None, minus: Solution | None) -> Solution | None:
    """Smaller cover wins; None marks a pruned branch; ties go to plus."""
    if plus is None:
        return minus
    if minus is None:
        return plus
    return plus if plus.value <= minus.value else minus


# ---------------------------------------------------------------------------
# engine


class Incumbent:
    """Best feasible solution so far; updates are atomic."""

    def __init__(self, problem: str, initial: Solution | None = None):
        self.problem = problem
        self._combine = combine_mc if problem == "mc" else combine_mvc
        self._lock = threading.Lock()
        self.best = initial

    @property
    def value(self) -> int | None:
        best = self.best
        return None if best is None else best.value

    def offer(self, sol: Solution) -> bool:
        with self._lock:
            # ties keep the earlier solution
            if self._combine(self.best, sol) is sol:
                self.best = sol
                return True
            return False


@dataclass
class _Run:
    problem: str
    cfg: EngineConfig
    leaf: LeafSolver
    incumbent: Incumbent
    clock: object
    metrics: RunMetrics = field(default_factory=RunMetrics)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def count(self, **inc):
        with self.lock:
            for k, v in inc.items():
                setattr(self.metrics, k, getattr(self.metrics, k) + v)

    # -- pruning ---------------------------------------------------------

    def bound(self, sub: Subproblem) -> int | None:
        """Best objective the child could reach, or None if unbounded."""
        if self.problem == "mc":
            ub = B.clique_upper(sub.graph, self.cfg.bounds)
            return None if ub is None else sub.delta + ub
        lb = B.cover_lower(sub.graph, self.cfg.bounds)
        return None if lb is None else sub.delta + lb

    def prunable(self, bound: int | None) -> bool:
        if bound is None:
            return False
        inc = self.incumbent.value
        with self.lock:
            self.metrics.prune_checks += 1
            if self.metrics.leaf_count == 0:
                self.metrics.checks_before_first_leaf += 1
            if inc is None:
                self.metrics.unbounded_checks += 1
        if inc is None:
            return False
        return bound <= inc if self.problem == "mc" else bound >= inc

    # -- reductions ------------------------------------------------------

    def reduce(self, sub: Subproblem) -> Subproblem:
        red = self.cfg.reductions
        if not red:
            return sub
        g0 = sub.graph
        committed, delta, g = sub.committed, sub.delta, g0
        if self.problem == "mc":
            inc = self.incumbent.value
            L = None if inc is None else inc - delta
            if L is not None and L > 0:
                if "edge-kcore" in red:
                    g = mc_edge_kcore_reduce(g, L)
                elif "kcore" in red:
                    g = mc_kcore_reduce(g, L)
        elif "nbvr" in red:
            out = nbvr_reduce(replace(sub, graph=g))
            g, committed, delta = out.graph, committed | out.committed, delta + out.delta
        if "persistency" in red and g.n:
            out = persistency_reduce(replace(sub, graph=g), self.problem)
            g, committed, delta = out.graph, committed | out.committed, delta + out.delta
        if g is g0:
            return sub
        self.count(reduced_vertices=g0.n - g.n, reduced_edges=g0.m - g.m)
        return replace(sub, graph=g, committed=committed, delta=delta)

    # -- node processing -------------------------------------------------

    def solve_leaf(self, sub: Subproblem):
        if sub.graph.n == 0:
            # nothing left to decide; no solver call
            self.incumbent.offer(Solution(sub.committed, sub.delta))
            return
        t0 = self.clock()
        try:
            sol = leaf_solve(sub, self.problem, self.leaf, node_seed(self.cfg.seed, sub.node))
        except Exception as exc:
            raise LeafSolveError(sub.node, exc) from exc
        dt = self.clock() - t0
        self.count(leaf_count=1, leaf_seconds=dt)
        self.incumbent.offer(sol)

    def expand(self, sub: Subproblem) -> list[tuple[Subproblem, int | None]]:
        """Split a node; returns surviving children in visiting order."""
        g = sub.graph
        v = select_vertex(g, self.cfg.selection, node_rng(self.cfg.seed, sub.node))
        split = split_mc if self.problem == "mc" else split_mvc
        self.count(split_count=1)
        kids = []
        for child in split(sub, v):
            b = self.bound(child)
            if self.prunable(b):
                self.count(pruned_count=1)
                continue
            child = self.reduce(child)
            with self.lock:
                self.metrics.max_depth = max(self.metrics.max_depth, child.depth)
            kids.append((child, b))
        t = self.cfg.traversal
        if t == "minus_first":
            kids.reverse()
        elif t == "smaller_first":
            kids.sort(key=lambda kb: kb[0].graph.n)  # stable: plus first on ties
        return kids

    def process(self, sub: Subproblem, b: int | None) -> list:
        # the incumbent may have improved since the child was queued
        if sub.depth > 0 and self.prunable(b):
            self.count(pruned_count=1)
            return []
        if sub.graph.n <= self.cfg.cutoff:
            self.solve_leaf(sub)
            return []
        return self.expand(sub)


def _initial_incumbent(g: Graph, problem: str, source: str) -> Solution | None:
    if source == "decomposition":
        return None
    if problem == "mc":
        return Solution.of(greedy_clique(g))
    return Solution.of(set(g.labels) - greedy_clique(g.complement()))


def decompose_and_solve(g: Graph, problem: str, cfg: EngineConfig = EngineConfig(),
                        leaf: LeafSolver = LeafSolver(), clock=time.perf_counter):
    """Solve MC or MVC on ``g`` by decomposition. Returns (Solution, RunMetrics).

    ``clock`` is the monotonic timer used for the preprocessing/leaf split;
    pass ``lambda: 0.0`` for timing-free (fully reproducible) metrics.
    """
    cfg.check_problem(problem)
    t0 = clock()
    run = _Run(problem, cfg, leaf, Incumbent(problem), clock)
    run.metrics.anneal_seconds = cfg.anneal_seconds
    run.incumbent.best = _initial_incumbent(g, problem, cfg.incumbent)
    root = Subproblem(g)
    if cfg.workers == 1:
        stack = [(root, None)]
        while stack:
            sub, b = stack.pop()
            stack.extend(reversed(run.process(sub, b)))
    else:
        _drain_parallel(run, root)
    run.metrics.total_seconds = clock() - t0
    best = run.incumbent.best
    if best is None:
        best = Solution(frozenset(), 0)  # empty graph under the decomposition source
    return best, run.metrics


def _drain_parallel(run: _Run, root: Subproblem):
    """Worker pool over a shared LIFO work list."""
    stack = [(root, None)]
    cond = threading.Condition()
    state = {"active": 0, "error": None}

    def worker():
        while True:
            with cond:
                while not stack and state["active"] and state["error"] is None:
                    cond.wait()
                if state["error"] is not None or (not stack and not state["active"]):
                    cond.notify_all()
                    return
                sub, b = stack.pop()
                state["active"] += 1
            try:
                kids = run.process(sub, b)
            except BaseException as exc:  # surfaced in the caller
                with cond:
                    state["error"] = exc
                    state["active"] -= 1
                    cond.notify_all()
                return
            with cond:
                stack.extend(reversed(kids))
                state["active"] -= 1
                cond.notify_all()

    threads = [threading.Thread(target=worker, daemon=True) for _ in range(run.cfg.workers)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    if state["error"] is not None:
        raise state["error"]
