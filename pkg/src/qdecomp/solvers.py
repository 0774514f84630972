"""Leaf solvers: exact bitmask branch-and-bound, and a seeded simulated
annealing QUBO sampler standing in for the quantum annealer."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .graph import Graph
from .qubo import Qubo, build_mc_qubo, build_mvc_qubo, evaluate

EXACT_LIMIT = 64


class LeafLimitError(ValueError):
    """Leaf subproblem exceeds the exact solver's size limit."""


class LeafSolveError(RuntimeError):
    """A leaf solve failed; ``node`` identifies the subproblem."""

    def __init__(self, node, cause):
        super().__init__(f"leaf solve failed at subproblem {node}: {cause}")
        self.node = node
        self.cause = cause


@dataclass(frozen=True)
class Solution:
    vertices: frozenset
    value: int

    @classmethod
    def of(cls, vertices, value=None):
        vs = frozenset(vertices)
        return cls(vs, len(vs) if value is None else value)


# ---------------------------------------------------------------------------
# exact


def _color_bound(P: int, masks) -> tuple[list[int], list[int]]:
    """Sequential greedy coloring of bitset P (Tomita MCQ style).

    Returns vertices and their color numbers in non-decreasing color order.
    """
    order, bounds = [], []
    color = 0
    U = P
    while U:
        color += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~masks[v]
            Q &= ~low
            U &= ~low
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique_size(g: Graph) -> int:
    """Clique number via colour-bounded branch and bound over bitmasks."""
    if g.n == 0:
        return 0
    masks = g.masks
    best = 0

    def expand(size, P):
        nonlocal best
        order, bounds = _color_bound(P, masks)
        for k in range(len(order) - 1, -1, -1):
            if size + bounds[k] <= best:
                return
            v = order[k]
            newP = P & masks[v]
            if newP:
                expand(size + 1, newP)
            elif size + 1 > best:
                best = size + 1
            P &= ~(1 << v)

    expand(0, (1 << g.n) - 1)
    return best


def _lex_first_clique(g: Graph, target: int) -> list[int]:
    """Lexicographically smallest clique (sorted index tuple) of given size."""
    masks = g.masks

    def search(chosen, P):
        need = target - len(chosen)
        if need == 0:
            return chosen
        while P:
            if bin(P).count("1") < need:
                return None
            if need > 1:
                _, bounds = _color_bound(P, masks)
                if bounds[-1] < need:
                    return None
            low = P & -P
            v = low.bit_length() - 1
            P &= ~low
            # only higher-indexed neighbours keep the tuple sorted
            found = search(chosen + [v], P & masks[v])
            if found is not None:
                return found
        return None

    out = search([], (1 << g.n) - 1)
    assert out is not None
    return out


def exact_mc(g: Graph, limit: int | None = EXACT_LIMIT) -> Solution:
    """Maximum clique; the witness is the lexicographically smallest optimum."""
    if limit is not None and g.n > limit:
        raise LeafLimitError(f"exact solver limited to {limit} vertices, got {g.n}")
    if g.n == 0:
        return Solution.of(())
    omega = max_clique_size(g)
    idx = _lex_first_clique(g, omega)
    return Solution.of(g.labels[i] for i in idx)


def exact_mvc(g: Graph, limit: int | None = EXACT_LIMIT) -> Solution:
    """Minimum vertex cover as the complement of a maximum independent set."""
    if limit is not None and g.n > limit:
        raise LeafLimitError(f"exact solver limited to {limit} vertices, got {g.n}")
    indep = exact_mc(g.complement(), limit=None)
    return Solution.of(set(g.labels) - indep.vertices)


# ---------------------------------------------------------------------------
# simulated annealing


@dataclass(frozen=True)
class AnnealParams:
    num_reads: int = 100
    sweeps: int = 200
    t_cold: float = 0.05
    t_hot: float | None = None  # None: derived from the coefficient scale
    hot_acceptance: float = 0.8

    def __post_init__(self):
        if self.num_reads < 1 or self.sweeps < 1:
            raise ValueError("num_reads and sweeps must be >= 1")


@dataclass
class AnnealResult:
    assignment: tuple
    value: float
    summary: dict = field(default_factory=dict)


def _read_stream(seed, read):
    return np.random.default_rng(np.random.SeedSequence([int(seed) & (2**63 - 1), read]))


def anneal_qubo(q: Qubo, params: AnnealParams = AnnealParams(), seed: int = 0) -> AnnealResult:
    """Single-flip Metropolis annealing over a geometric temperature ladder.

    Each read draws its initial state and acceptance uniforms from its own
    stream keyed by ``(seed, read index)``, so results do not depend on how
    reads are batched. All reads advance together as one numpy array.
    """
    n = q.num_vars
    if n == 0:
        return AnnealResult((), q.offset, {"num_reads": params.num_reads, "hits": params.num_reads})
    h, J = q.dense()
    scale = q.max_abs_coefficient() or 1.0
    t_hot = params.t_hot or scale / math.log(1.0 / params.hot_acceptance)
    t_cold = min(params.t_cold, t_hot)
    temps = np.geomspace(t_hot, t_cold, params.sweeps)

    R = params.num_reads
    x = np.empty((R, n))
    u = np.empty((R, params.sweeps, n))
    for r in range(R):
        rng = _read_stream(seed, r)
        x[r] = rng.integers(0, 2, n)
        u[r] = rng.random((params.sweeps, n))
    logu = np.log(u)

    field_ = h + x @ J  # local field per read
    energy = q.offset + x @ h + 0.5 * np.einsum("ri,ij,rj->r", x, J, x)
    best_e = energy.copy()
    best_x = x.copy()
    for s, T in enumerate(temps):
        for i in range(n):
            sign = 1.0 - 2.0 * x[:, i]
            dE = sign * field_[:, i]
            accept = (dE <= 0) | (logu[:, s, i] < -dE / T)
            if accept.any():
                step = np.where(accept, sign, 0.0)
                x[:, i] += step
                energy += np.where(accept, dE, 0.0)
                field_ += np.outer(step, J[i])
        better = energy < best_e - 1e-12
        if better.any():
            best_e[better] = energy[better]
            best_x[better] = x[better]

    # exact re-evaluation; pick the lowest, ties to the lowest read index
    vals = np.array([evaluate(q, best_x[r].astype(int).tolist()) for r in range(R)])
    r_best = int(np.argmin(vals))
    best = float(vals[r_best])
    summary = {
        "num_reads": R,
        "sweeps": params.sweeps,
        "t_hot": float(t_hot),
        "t_cold": float(t_cold),
        "hits": int(np.sum(vals <= best + 1e-9)),
        "mean_value": float(vals.mean()),
        "distinct": len({tuple(row) for row in best_x.astype(int).tolist()}),
    }
    return AnnealResult(tuple(best_x[r_best].astype(int).tolist()), best, summary)


# ---------------------------------------------------------------------------
# leaf interface


@dataclass(frozen=True)
class LeafSolver:
    kind: Literal["exact", "anneal"] = "exact"
    anneal: AnnealParams = AnnealParams()
    exact_limit: int | None = EXACT_LIMIT

    def __post_init__(self):
        if self.kind not in ("exact", "anneal"):
            raise ValueError(f"unknown leaf solver kind {self.kind!r}")


def repair_clique(g: Graph, vertices) -> set:
    """Drop the vertex with most non-neighbours in the set until it is a clique."""
    S = {g.index[v] for v in vertices}
    while True:
        conflicts = {i: len(S - g.adj[i] - {i}) for i in S}
        worst = max(S, key=lambda i: (conflicts[i], i), default=None)
        if worst is None or conflicts[worst] == 0:
            break
        S.discard(worst)
    return {g.labels[i] for i in S}


def repair_cover(g: Graph, vertices) -> set:
    """Add the higher-degree endpoint of each uncovered edge."""
    S = {g.index[v] for v in vertices}
    for i, j in g.edges():
        if i not in S and j not in S:
            S.add(i if (len(g.adj[i]), -i) >= (len(g.adj[j]), -j) else j)
    return {g.labels[i] for i in S}


def solve_graph(g: Graph, problem: str, solver: LeafSolver, seed: int = 0) -> Solution:
    """Optimal (exact) or repaired-sampled (anneal) solution on ``g`` alone."""
    if solver.kind == "exact":
        if problem == "mc":
            return exact_mc(g, limit=solver.exact_limit)
        return exact_mvc(g, limit=solver.exact_limit)
    q = build_mc_qubo(g) if problem == "mc" else build_mvc_qubo(g)
    res = anneal_qubo(q, solver.anneal, seed)
    support = {q.var_labels[i] for i, xi in enumerate(res.assignment) if xi}
    if problem == "mc":
        return Solution.of(repair_clique(g, support))
    return Solution.of(repair_cover(g, support))


def leaf_solve(sub, problem: str, solver: LeafSolver, seed: int = 0) -> Solution:
    """Solve a subproblem's residual graph and lift by its committed set."""
    local = solve_graph(sub.graph, problem, solver, seed)
    return Solution(frozenset(sub.committed) | local.vertices, sub.delta + local.value)
