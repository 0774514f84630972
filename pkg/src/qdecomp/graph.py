"""Immutable undirected simple graphs and the cheap graph primitives used by
the decomposition engine (cores, colorings, matchings, greedy cliques).

Vertices carry an original integer label. Internal indices ``0..n-1`` are
always assigned in ascending label order, so an induced subgraph keeps the
relative order of its parent's vertices.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graph construction or unknown vertices."""


class Graph:
    __slots__ = ("n", "adj", "labels", "_index", "_masks", "_m")

    def __init__(self, adj, labels):
        # Trusted constructor: adj is a sequence of frozensets over internal
        # indices, labels strictly increasing. Use from_edges for user input.
        self.n = len(labels)
        self.adj = tuple(adj)
        self.labels = tuple(labels)
        self._index = None
        self._masks = None
        self._m = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph on labels ``0..n-1``; duplicate edges collapse."""
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has a label outside [0, {n})")
            if u == v:
                raise GraphError(f"edge ({u}, {v}) is a self-loop")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls([frozenset(s) for s in nbrs], range(n))

    @classmethod
    def from_labeled_edges(cls, labels: Iterable[int], edges) -> "Graph":
        """Build a graph over an arbitrary set of integer labels."""
        labels = sorted(set(labels))
        index = {lab: i for i, lab in enumerate(labels)}
        nbrs = [set() for _ in labels]
        for u, v in edges:
            if u not in index or v not in index:
                raise GraphError(f"edge ({u}, {v}) references an unknown label")
            if u == v:
                raise GraphError(f"edge ({u}, {v}) is a self-loop")
            nbrs[index[u]].add(index[v])
            nbrs[index[v]].add(index[u])
        return cls([frozenset(s) for s in nbrs], labels)

    # -- basic queries ----------------------------------------------------

    @property
    def m(self) -> int:
        if self._m is None:
            self._m = sum(len(s) for s in self.adj) // 2
        return self._m

    @property
    def index(self) -> dict:
        """label -> internal index"""
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        return self._index

    @property
    def masks(self) -> tuple:
        """Neighborhoods as integer bitmasks over internal indices."""
        if self._masks is None:
            out = []
            for s in self.adj:
                mask = 0
                for j in s:
                    mask |= 1 << j
                out.append(mask)
            self._masks = tuple(out)
        return self._masks

    def degree(self, i: int) -> int:
        return len(self.adj[i])

    def degrees(self) -> list[int]:
        return [len(s) for s in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as internal index pairs (i < j), lexicographically sorted."""
        return [(i, j) for i in range(self.n) for j in sorted(self.adj[i]) if j > i]

    def labeled_edges(self) -> list[tuple[int, int]]:
        lab = self.labels
        return [(lab[i], lab[j]) for i, j in self.edges()]

    def has_edge(self, u_label: int, v_label: int) -> bool:
        idx = self.index
        return idx[v_label] in self.adj[idx[u_label]]

    def neighbors(self, label: int) -> set[int]:
        """Neighbor labels of the vertex with the given label."""
        lab = self.labels
        return {lab[j] for j in self.adj[self._lookup(label)]}

    def _lookup(self, label: int) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise GraphError(f"unknown vertex label {label}") from None

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.labels == other.labels and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.labels, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs ---------------------------------------------------

    def complement(self) -> "Graph":
        full = frozenset(range(self.n))
        return Graph([full - s - {i} for i, s in enumerate(self.adj)], self.labels)

    def induced_subgraph(self, keep: Iterable[int]) -> "Graph":
        """Subgraph induced by a set of vertex *labels*."""
        idx = sorted(self._lookup(lab) for lab in set(keep))
        return self._induced_by_index(idx)

    def _induced_by_index(self, idx: list[int]) -> "Graph":
        remap = {old: new for new, old in enumerate(idx)}
        adj = [frozenset(remap[j] for j in self.adj[i] if j in remap) for i in idx]
        return Graph(adj, [self.labels[i] for i in idx])

    def remove(self, drop: Iterable[int]) -> "Graph":
        """Graph with the given vertex labels (and incident edges) removed."""
        drop_idx = {self._lookup(lab) for lab in drop}
        return self._induced_by_index([i for i in range(self.n) if i not in drop_idx])

    def without_edges(self, dead: Iterable[tuple[int, int]]) -> "Graph":
        """Same vertex set with the given internal-index edges deleted."""
        nbrs = [set(s) for s in self.adj]
        for i, j in dead:
            nbrs[i].discard(j)
            nbrs[j].discard(i)
        return Graph([frozenset(s) for s in nbrs], self.labels)


# ---------------------------------------------------------------------------
# primitives


def complement(g: Graph) -> Graph:
    return g.complement()


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    return g.induced_subgraph(keep)


def _peel(g: Graph):
    """Min-degree peeling. Returns (order, degree at removal) over indices.

    Bucket queue; ties resolved by smallest internal index.
    """
    n = g.n
    deg = [len(s) for s in g.adj]
    maxdeg = max(deg, default=0)
    buckets = [set() for _ in range(maxdeg + 1)]
    for i, d in enumerate(deg):
        buckets[d].add(i)
    removed = [False] * n
    order, at_removal = [], []
    cur = 0
    for _ in range(n):
        cur = max(cur - 1, 0)
        while not buckets[cur]:
            cur += 1
        i = min(buckets[cur])
        buckets[cur].remove(i)
        removed[i] = True
        order.append(i)
        at_removal.append(cur)
        for j in g.adj[i]:
            if not removed[j]:
                buckets[deg[j]].remove(j)
                deg[j] -= 1
                buckets[deg[j]].add(j)
    return order, at_removal


def k_core(g: Graph, k: int) -> Graph:
    """Maximal induced subgraph whose minimum degree is at least ``k``."""
    if k <= 0:
        return g
    deg = [len(s) for s in g.adj]
    alive = [True] * g.n
    stack = [i for i in range(g.n) if deg[i] < k]
    for i in stack:
        alive[i] = False
    while stack:
        i = stack.pop()
        for j in g.adj[i]:
            if alive[j]:
                deg[j] -= 1
                if deg[j] < k:
                    alive[j] = False
                    stack.append(j)
    if all(alive):
        return g
    return g._induced_by_index([i for i in range(g.n) if alive[i]])


def degeneracy(g: Graph) -> tuple[int, list[int]]:
    """Degeneracy ``d`` and the peeling order (as labels). ``omega <= d + 1``."""
    order, at_removal = _peel(g)
    return max(at_removal, default=0), [g.labels[i] for i in order]


def _degree_order(g: Graph) -> list[int]:
    # non-increasing degree, ties by smallest label (indices follow labels)
    return sorted(range(g.n), key=lambda i: (-len(g.adj[i]), i))


def greedy_coloring(g: Graph) -> int:
    """Number of colors used by largest-first greedy coloring."""
    return len(set(greedy_color_classes(g)))


def greedy_color_classes(g: Graph) -> list[int]:
    """Color per internal index from largest-first greedy coloring."""
    color = [-1] * g.n
    for i in _degree_order(g):
        used = {color[j] for j in g.adj[i]}
        c = 0
        while c in used:
            c += 1
        color[i] = c
    return color


def maximal_matching(g: Graph) -> list[tuple[int, int]]:
    """Greedy maximal matching over edges in lexicographic label order."""
    matched = set()
    out = []
    for i, j in g.edges():
        if i not in matched and j not in matched:
            matched.add(i)
            matched.add(j)
            out.append((g.labels[i], g.labels[j]))
    return out


def greedy_clique(g: Graph) -> set[int]:
    """Greedy clique: grow by the candidate with most neighbors among the
    remaining candidates (ties: smallest label)."""
    cand = set(range(g.n))
    clique = []
    while cand:
        best = min(cand, key=lambda i: (-len(g.adj[i] & cand), i))
        clique.append(best)
        cand &= g.adj[best]
    return {g.labels[i] for i in clique}


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p) with pairs drawn in lexicographic order from PCG64(seed)."""
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    draws = rng.random(iu.size)
    hit = draws < p
    return Graph.from_edges(n, zip(iu[hit].tolist(), ju[hit].tolist()))


# ---------------------------------------------------------------------------
# feasibility checks


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    idx = g.index
    if any(v not in idx for v in vs) or len(set(vs)) != len(vs):
        return False
    return all(g.has_edge(u, v) for a, u in enumerate(vs) for v in vs[a + 1:])


def is_vertex_cover(g: Graph, vertices: Iterable[int]) -> bool:
    cover = set(vertices)
    if not cover <= set(g.labels):
        return False
    return all(u in cover or v in cover for u, v in g.labeled_edges())
