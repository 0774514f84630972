"""Median leaf counts per vertex-selection strategy over a density sweep.

    python scripts/strategy_sweep.py --n 40 --cutoff 26 --trials 10
"""
import argparse
import statistics
from collections import defaultdict

from qdecomp.harness import ExperimentSpec, run_experiment


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=40)
    ap.add_argument("--cutoff", type=int, default=26)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--densities", default="0.2,0.5,0.8")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    densities = tuple(float(d) for d in args.densities.split(","))
    strategies = ("low", "median", "high", "random")
    print("preset density " + " ".join(f"{s:>7}" for s in strategies))
    for preset in ("dbk", "dbr"):
        spec = ExperimentSpec(n_values=(args.n,), densities=densities, trials=args.trials,
                              strategies=strategies, cutoffs=(args.cutoff,), preset=preset,
                              master_seed=args.seed, timing=False, workers=args.workers)
        leaves = defaultdict(list)
        for row in run_experiment(spec):
            leaves[row["density"], row["strategy"]].append(row["leaf_count"])
        for d in densities:
            cells = " ".join(f"{statistics.median(leaves[d, s]):>7g}" for s in strategies)
            print(f"{preset:>6} {d:>7} {cells}")


if __name__ == "__main__":
    main()
