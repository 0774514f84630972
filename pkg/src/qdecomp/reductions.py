"""Subproblem shrinking passes.

MC: vertex k-core, edge k-core, QUBO persistencies.
MVC: neighbour-based vertex removal (nbvr), QUBO persistencies.

The graph-level passes return graphs. The committing passes return a
:class:`ReductionOutcome` whose ``delta`` must be added to the residual
optimum to recover the optimum of the input.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, k_core
from .qubo import build_mc_qubo, build_mvc_qubo, persistencies

MC_REDUCTIONS = ("kcore", "edge-kcore", "persistency")
MVC_REDUCTIONS = ("nbvr", "persistency")


@dataclass(frozen=True)
class ReductionOutcome:
    graph: Graph
    committed: frozenset = frozenset()
    delta: int = 0
    removed_vertices: int = 0
    removed_edges: int = 0


def mc_kcore_reduce(g: Graph, L: int) -> Graph:
    """Keep only vertices that can sit in a clique larger than ``L``."""
    return k_core(g, L)


def mc_edge_kcore_reduce(g: Graph, L: int) -> Graph:
    """Drop edges whose endpoints share fewer than ``L - 1`` neighbours, then
    re-peel to the vertex ``L``-core; repeat until nothing changes.

    Every edge of a clique with more than ``L`` vertices has at least
    ``L - 1`` common neighbours, so such cliques survive.
    """
    if L < 2:
        return k_core(g, L)
    g = k_core(g, L)
    while True:
        dead = [(i, j) for i, j in g.edges() if len(g.adj[i] & g.adj[j]) < L - 1]
        if not dead:
            return g
        g = k_core(g.without_edges(dead), L)


def nbvr_reduce(sub) -> ReductionOutcome:
    """Degree-0 removal, degree-1 rule and isolated-triangle rule, to a fixed
    point. Degree-1: the neighbour joins the cover. Triangle: a component that
    is a triangle contributes its two smallest labels."""
    g = sub.graph
    n0, m0 = g.n, g.m
    committed = set()
    delta = 0
    while g.n:
        deg = g.degrees()
        zero = [g.labels[i] for i in range(g.n) if deg[i] == 0]
        if zero:
            g = g.remove(zero)
            continue
        leaf = next((i for i in range(g.n) if deg[i] == 1), None)
        if leaf is not None:
            (u,) = g.adj[leaf]
            committed.add(g.labels[u])
            delta += 1
            g = g.remove([g.labels[u]])  # leaf becomes isolated, dropped next pass
            continue
        tri = None
        for i in range(g.n):
            if deg[i] == 2:
                a, b = sorted(g.adj[i])
                if deg[a] == 2 and deg[b] == 2 and b in g.adj[a]:
                    tri = sorted((i, a, b))
                    break
        if tri is None:
            break
        labs = [g.labels[i] for i in tri]
        committed.update(labs[:2])
        delta += 2
        g = g.remove(labs)
    return ReductionOutcome(g, frozenset(committed), delta, n0 - g.n, m0 - g.m)


def persistency_reduce(sub, problem: str) -> ReductionOutcome:
    """Fix variables of the problem QUBO by first-order persistencies.

    ``x_v = 1`` commits ``v`` (for MC the residual is then restricted to the
    common neighbourhood of the committed vertices); ``x_v = 0`` deletes
    ``v``. The optimum is preserved since some minimiser agrees with every
    fixing.
    """
    g = sub.graph
    q = build_mc_qubo(g) if problem == "mc" else build_mvc_qubo(g)
    fixed = persistencies(q)
    ones = {q.var_labels[i] for i, val in fixed.items() if val == 1}
    zeros = {q.var_labels[i] for i, val in fixed.items() if val == 0}
    if problem == "mc":
        keep = set(g.labels) - ones - zeros
        for v in ones:
            keep &= g.neighbors(v)
        residual = g.induced_subgraph(keep)
    else:
        residual = g.remove(ones | zeros)
    return ReductionOutcome(residual, frozenset(ones), len(ones), g.n - residual.n, g.m - residual.m)
