"""Run metrics and the predicted annealer solution time."""
from __future__ import annotations

from dataclasses import asdict, dataclass

ANNEAL_SECONDS = 1.6  # QPU access time per leaf, 10000 anneals


def predicted_time(leaf_count: int, preprocessing_seconds: float,
                   anneal_seconds: float = ANNEAL_SECONDS) -> float:
    """``leaf_count * anneal_seconds + preprocessing_seconds``."""
    if leaf_count < 0 or preprocessing_seconds < 0 or anneal_seconds < 0:
        raise ValueError("predicted_time inputs must be non-negative")
    return leaf_count * anneal_seconds + preprocessing_seconds


@dataclass
class RunMetrics:
    leaf_count: int = 0
    split_count: int = 0
    pruned_count: int = 0
    reduced_vertices: int = 0
    reduced_edges: int = 0
    max_depth: int = 0
    prune_checks: int = 0
    # prune checks made while no feasible incumbent existed yet
    unbounded_checks: int = 0
    checks_before_first_leaf: int = 0
    total_seconds: float = 0.0
    leaf_seconds: float = 0.0
    anneal_seconds: float = ANNEAL_SECONDS

    @property
    def preprocessing_seconds(self) -> float:
        # wall time outside the leaf solver
        return max(self.total_seconds - self.leaf_seconds, 0.0)

    @property
    def predicted_seconds(self) -> float:
        return predicted_time(self.leaf_count, self.preprocessing_seconds, self.anneal_seconds)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["preprocessing_seconds"] = self.preprocessing_seconds
        d["predicted_seconds"] = self.predicted_seconds
        return d
