"""Exact decomposition solver for maximum clique and minimum vertex cover with
annealer-sized leaves."""

from .decomposer import EngineConfig, Subproblem, decompose_and_solve
from .graph import Graph, erdos_renyi, is_clique, is_vertex_cover
from .metrics import RunMetrics, predicted_time
from .qubo import Qubo, build_mc_qubo, build_mvc_qubo
from .solvers import AnnealParams, LeafSolver, Solution, exact_mc, exact_mvc

__all__ = [
    "AnnealParams",
    "EngineConfig",
    "Graph",
    "LeafSolver",
    "Qubo",
    "RunMetrics",
    "Solution",
    "Subproblem",
    "build_mc_qubo",
    "build_mvc_qubo",
    "decompose_and_solve",
    "erdos_renyi",
    "exact_mc",
    "exact_mvc",
    "is_clique",
    "is_vertex_cover",
    "predicted_time",
]
