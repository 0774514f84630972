"""Leaf count and predicted time as the leaf-size cutoff grows.

Pruning can be switched off with --no-prune, which makes the leaf count
monotone in the cutoff.
"""
import argparse
import statistics

from qdecomp.decomposer import decompose_and_solve
from qdecomp.graph import erdos_renyi
from qdecomp.harness import engine_config_for


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=60)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--graphs", type=int, default=5)
    ap.add_argument("--cutoffs", default="8,16,32,48")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-prune", action="store_true")
    args = ap.parse_args(argv)

    cutoffs = [int(c) for c in args.cutoffs.split(",")]
    extra = dict(bounds=(), reductions=()) if args.no_prune else {}
    print("preset cutoff median_leaves median_predicted_s")
    for preset in ("dbk", "dbr"):
        for cutoff in cutoffs:
            leaves, predicted = [], []
            for k in range(args.graphs):
                g = erdos_renyi(args.n, args.p, args.seed + k)
                problem, cfg = engine_config_for(preset, cutoff=cutoff, seed=k, **extra)
                _, m = decompose_and_solve(g, problem, cfg)
                leaves.append(m.leaf_count)
                predicted.append(m.predicted_seconds)
            print(f"{preset:>6} {cutoff:>6} {statistics.median(leaves):>13g} "
                  f"{statistics.median(predicted):>18.3f}")


if __name__ == "__main__":
    main()
