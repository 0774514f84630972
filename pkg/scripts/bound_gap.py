"""Average gap between the clique number and each upper bound on ER graphs."""
import argparse

from qdecomp.bounds import clique_upper_chromatic, deterministic_components
from qdecomp.graph import erdos_renyi
from qdecomp.solvers import max_clique_size


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=30)
    ap.add_argument("--graphs", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    names = ("chromatic", "matching", "inertia", "degeneracy")
    print("density " + " ".join(f"{k:>10}" for k in names))
    for p in (0.1, 0.3, 0.5, 0.7, 0.9):
        gaps = dict.fromkeys(names, 0.0)
        for k in range(args.graphs):
            g = erdos_renyi(args.n, p, args.seed + k)
            w = max_clique_size(g)
            ub = dict(deterministic_components(g, g.complement()), chromatic=clique_upper_chromatic(g))
            for name in names:
                gaps[name] += (ub[name] - w) / args.graphs
        print(f"{p:>7} " + " ".join(f"{gaps[k]:>10.2f}" for k in names))


if __name__ == "__main__":
    main()
