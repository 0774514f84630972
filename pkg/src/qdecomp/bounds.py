"""Sound bounds on the clique number and the minimum vertex cover size.

Upper bounds on omega(G) double as lower bounds on MVC through
``MVC(G) = n - omega(complement(G))`` and vice versa.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, degeneracy, greedy_clique, greedy_coloring, maximal_matching

INERTIA_MAX_N = 400


@dataclass(frozen=True)
class BoundReport:
    clique_upper: int
    clique_lower: int
    cover_lower: int
    cover_upper: int
    source: tuple = ()


def clique_upper_chromatic(g: Graph) -> int:
    return greedy_coloring(g)


def inertia_bound(h: Graph) -> int:
    """Cvetkovic inertia bound: ``alpha(h) <= min(n - n_pos, n - n_neg)``."""
    n = h.n
    if n == 0:
        return 0
    A = np.zeros((n, n))
    for i, j in h.edges():
        A[i, j] = A[j, i] = 1.0
    eig = np.linalg.eigvalsh(A)
    tol = 1e-8 * n  # max |entry| is 1
    n_pos = int(np.sum(eig > tol))
    n_neg = int(np.sum(eig < -tol))
    return min(n - n_pos, n - n_neg)


def deterministic_components(g: Graph, gc: Graph | None = None) -> dict:
    """The three cheap clique upper bounds, keyed by name.

    ``gc`` may pass in a precomputed complement of ``g``.
    """
    if gc is None:
        gc = g.complement()
    out = {
        "matching": g.n - len(maximal_matching(gc)),
        "degeneracy": degeneracy(g)[0] + 1 if g.n else 0,
    }
    if g.n <= INERTIA_MAX_N:
        out["inertia"] = inertia_bound(gc)
    return out


def clique_upper_deterministic(g: Graph) -> int:
    return min(deterministic_components(g).values())


def clique_lower_heuristic(g: Graph) -> int:
    return len(greedy_clique(g))


def cover_lower_components(g: Graph, which=("chromatic", "deterministic")) -> dict:
    """Named lower bounds on MVC(g) derived from clique upper bounds on the
    complement. The matching bound is always included."""
    gc = g.complement()
    out = {"matching": len(maximal_matching(g))}
    if "chromatic" in which:
        out["chromatic"] = g.n - clique_upper_chromatic(gc)
    if "deterministic" in which:
        out["deterministic"] = g.n - min(deterministic_components(gc, g).values())
    return out


def cover_bounds(g: Graph) -> tuple[int, int]:
    lower = max(cover_lower_components(g).values())
    upper = g.n - clique_lower_heuristic(g.complement())
    return lower, upper


def bound_report(g: Graph) -> BoundReport:
    chrom = clique_upper_chromatic(g)
    det = deterministic_components(g)
    lo_c = cover_lower_components(g)
    _, cover_up = cover_bounds(g)
    source = ("chromatic",) + tuple(sorted(det)) + ("greedy_clique",) + tuple(sorted(lo_c))
    return BoundReport(
        clique_upper=min(chrom, *det.values()),
        clique_lower=clique_lower_heuristic(g),
        cover_lower=max(lo_c.values()),
        cover_upper=cover_up,
        source=source,
    )


def clique_upper(g: Graph, which) -> int | None:
    """Tightest enabled clique upper bound, or None when none is enabled."""
    vals = []
    if "chromatic" in which:
        vals.append(clique_upper_chromatic(g))
    if "deterministic" in which:
        vals.append(clique_upper_deterministic(g))
    return min(vals) if vals else None


def cover_lower(g: Graph, which) -> int | None:
    """Tightest enabled MVC lower bound, or None when none is enabled."""
    if not ({"chromatic", "deterministic"} & set(which)):
        return None
    return max(cover_lower_components(g, which).values())
