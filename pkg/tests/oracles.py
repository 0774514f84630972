"""Reference answers computed independently of the package's solvers."""
import itertools

import networkx as nx
from hypothesis import strategies as st

from qdecomp.graph import Graph, erdos_renyi


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(g.labels)
    G.add_edges_from(g.labeled_edges())
    return G


def brute_omega(g: Graph) -> int:
    """Largest all-adjacent subset by plain subset enumeration (n <= 12)."""
    assert g.n <= 14
    E = set(g.labeled_edges())
    adj = lambda u, v: (u, v) in E or (v, u) in E
    for k in range(g.n, 0, -1):
        for S in itertools.combinations(g.labels, k):
            if all(adj(u, v) for u, v in itertools.combinations(S, 2)):
                return k
    return 0


def brute_mvc(g: Graph) -> int:
    assert g.n <= 14
    E = g.labeled_edges()
    for k in range(g.n + 1):
        for S in itertools.combinations(g.labels, k):
            s = set(S)
            if all(u in s or v in s for u, v in E):
                return k
    raise AssertionError("unreachable")


def nx_omega(g: Graph) -> int:
    """Clique number from networkx's Bron-Kerbosch enumeration."""
    return max((len(c) for c in nx.find_cliques(to_nx(g))), default=0)


def nx_mvc(g: Graph) -> int:
    return g.n - nx_omega(g.complement())


def er_corpus(count, n_lo, n_hi, base_seed=0):
    """Seeded ER graphs cycling densities 0.1..0.9 and sizes n_lo..n_hi."""
    out = []
    sizes = list(range(n_lo, n_hi + 1))
    for k in range(count):
        n = sizes[k % len(sizes)]
        p = round(0.1 * (1 + k % 9), 1)
        seed = base_seed + k
        out.append((n, p, seed, erdos_renyi(n, p, seed)))
    return out


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
