"""Batch runs: single-graph solves, experiment sweeps, result documents."""
from __future__ import annotations

import csv
import io
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .decomposer import EngineConfig, decompose_and_solve
from .graph import Graph, erdos_renyi, is_clique, is_vertex_cover
from .metrics import ANNEAL_SECONDS
from .solvers import LeafSolver

# problem + engine settings of the two named algorithms
PRESETS = {
    "dbk": dict(problem="mc", selection="low", bounds={"chromatic"},
                reductions={"kcore"}, incumbent="decomposition"),
    "dbr": dict(problem="mvc", selection="high", bounds={"chromatic"},
                reductions={"nbvr"}, incumbent="decomposition"),
}

CSV_FIELDS = ["n", "density", "seed", "problem", "strategy", "bounds", "reductions",
              "cutoff", "objective", "leaf_count", "preprocessing_seconds",
              "predicted_seconds"]


def _zero_clock():
    return 0.0


def solve_graph_document(g: Graph, problem: str, cfg: EngineConfig, leaf: LeafSolver = LeafSolver(),
                         input_name: str = "", timing: bool = True) -> dict:
    """Run the decomposition and build the JSON result document."""
    clock = time.perf_counter if timing else _zero_clock
    sol, metrics = decompose_and_solve(g, problem, cfg, leaf, clock=clock)
    feasible = is_clique(g, sol.vertices) if problem == "mc" else is_vertex_cover(g, sol.vertices)
    assert feasible, "decomposition returned an infeasible solution"
    config = {
        "cutoff": cfg.cutoff,
        "selection": cfg.selection,
        "bounds": sorted(cfg.bounds),
        "reductions": sorted(cfg.reductions),
        "traversal": cfg.traversal,
        "incumbent": cfg.incumbent,
        "workers": cfg.workers,
        "anneal_seconds": cfg.anneal_seconds,
        "solver": leaf.kind,
        "reads": leaf.anneal.num_reads,
        "sweeps": leaf.anneal.sweeps,
        "preprocessing_clock": "wall time minus leaf-solver time" if timing else "disabled",
    }
    return {
        "problem": problem,
        "input": input_name,
        "n": g.n,
        "m": g.m,
        "objective": sol.value,
        "solution_vertices": sorted(sol.vertices),
        "leaf_count": metrics.leaf_count,
        "preprocessing_seconds": metrics.preprocessing_seconds,
        "predicted_seconds": metrics.predicted_seconds,
        "config": config,
        "seed": cfg.seed,
        "metrics": metrics.as_dict(),
    }


def document_to_record(doc: dict, density: float | None = None) -> dict:
    cfg = doc["config"]
    if density is None:
        n = doc["n"]
        density = doc["m"] / (n * (n - 1) / 2) if n > 1 else 0.0
    return {
        "n": doc["n"],
        "density": density,
        "seed": doc["seed"],
        "problem": doc["problem"],
        "strategy": cfg["selection"],
        "bounds": "+".join(cfg["bounds"]) or "none",
        "reductions": "+".join(cfg["reductions"]) or "none",
        "cutoff": cfg["cutoff"],
        "objective": doc["objective"],
        "leaf_count": doc["leaf_count"],
        "preprocessing_seconds": doc["preprocessing_seconds"],
        "predicted_seconds": doc["predicted_seconds"],
    }


def format_csv(records) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for rec in records:
        row = dict(rec)
        for k in ("density", "preprocessing_seconds", "predicted_seconds"):
            row[k] = repr(float(row[k]))
        w.writerow(row)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# experiments


@dataclass(frozen=True)
class ExperimentSpec:
    n_values: tuple = (30,)
    densities: tuple = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    trials: int = 1
    strategies: tuple = ("low",)
    cutoffs: tuple = (64,)
    preset: str = "dbk"
    master_seed: int = 0
    solver: str = "exact"
    anneal_seconds: float = ANNEAL_SECONDS
    timing: bool = True
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.preset not in PRESETS:
            raise ValueError(f"unknown preset {self.preset!r}")
        for p in self.densities:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"density {p} outside [0, 1]")


def graph_seed(master: int, n: int, density_index: int, trial: int) -> int:
    ss = np.random.SeedSequence([master, n, density_index, trial])
    return int(ss.generate_state(1, np.uint32)[0])


def _trials(spec: ExperimentSpec):
    """Grid in deterministic order: n, density, trial, strategy, cutoff."""
    for n, (di, p), t in itertools.product(spec.n_values, enumerate(spec.densities),
                                           range(spec.trials)):
        seed = graph_seed(spec.master_seed, n, di, t)
        for strat, cutoff in itertools.product(spec.strategies, spec.cutoffs):
            yield n, p, seed, strat, cutoff


def _run_trial(args):
    spec, n, p, seed, strat, cutoff = args
    preset = dict(PRESETS[spec.preset])
    problem = preset.pop("problem")
    preset["selection"] = strat
    cfg = EngineConfig(cutoff=cutoff, seed=seed, anneal_seconds=spec.anneal_seconds, **preset)
    g = erdos_renyi(n, p, seed)
    doc = solve_graph_document(g, problem, cfg, LeafSolver(spec.solver),
                               input_name=f"er-{n}-{p}-{seed}", timing=spec.timing)
    return document_to_record(doc, density=p)


def run_experiment(spec: ExperimentSpec) -> list[dict]:
    """One record per grid point, in grid order whatever the worker count."""
    jobs = [(spec,) + t for t in _trials(spec)]
    if spec.workers > 1:
        with ProcessPoolExecutor(spec.workers) as pool:
            return list(pool.map(_run_trial, jobs))
    return [_run_trial(j) for j in jobs]


def engine_config_for(preset: str | None, **overrides) -> tuple[str | None, EngineConfig]:
    """Merge a preset with explicit overrides (None values are ignored)."""
    base = dict(PRESETS[preset]) if preset else {}
    problem = base.pop("problem", None)
    given = {k: v for k, v in overrides.items() if v is not None}
    if "problem" in given:
        if problem is not None and given["problem"] != problem:
            raise ValueError(f"preset {preset} solves {problem}, not {given['problem']}")
        problem = given.pop("problem")
    base.update(given)
    return problem, EngineConfig(**base)


__all__ = [
    "CSV_FIELDS",
    "ExperimentSpec",
    "PRESETS",
    "document_to_record",
    "engine_config_for",
    "format_csv",
    "run_experiment",
    "solve_graph_document",
]
