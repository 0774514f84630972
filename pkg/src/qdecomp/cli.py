"""Command line entry point: ``qdecomp {solve,generate,experiment}``.

Exit codes: 0 success, 2 usage error, 3 input parse error, 4 size limit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .decomposer import SELECTIONS, TRAVERSALS
from .graph import erdos_renyi
from .harness import (PRESETS, ExperimentSpec, document_to_record, engine_config_for, format_csv,
                      run_experiment, solve_graph_document)
from .io import ParseError, format_dimacs, format_edgelist, read_graph
from .metrics import ANNEAL_SECONDS
from .qubo import build_mc_qubo, build_mvc_qubo, dumps
from .solvers import AnnealParams, LeafLimitError, LeafSolveError, LeafSolver

EXIT_USAGE, EXIT_PARSE, EXIT_LIMIT = 2, 3, 4

BOUND_CHOICES = {
    "chromatic": {"chromatic"},
    "deterministic": {"deterministic"},
    "both": {"chromatic", "deterministic"},
    "none": set(),
}


def _comma_list(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _number_range(text, conv):
    """``a,b,c`` or inclusive ``start:stop:step``."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise argparse.ArgumentTypeError("range step must be positive")
        count = int(round((stop - start) / step)) + 1
        return [conv(round(start + k * step, 10)) for k in range(count)]
    try:
        return [conv(t) for t in _comma_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None


def _int_range(text):
    return _number_range(text, lambda x: int(float(x)))


def _float_range(text):
    return _number_range(text, float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdecomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve MC or MVC on one graph file")
    s.add_argument("--input", required=True, help="graph file")
    s.add_argument("--format", choices=["dimacs", "edgelist"],
                   help="input format (default: by suffix, .clq/.col/.dimacs are DIMACS)")
    s.add_argument("--problem", choices=["mc", "mvc"])
    s.add_argument("--preset", choices=sorted(PRESETS))
    s.add_argument("--cutoff", type=int, default=64, help="leaf size limit (46, 64, 180, ...)")
    s.add_argument("--select", choices=SELECTIONS)
    s.add_argument("--bounds", choices=sorted(BOUND_CHOICES))
    s.add_argument("--lower", choices=["heuristic", "decomposition"],
                   help="incumbent source: greedy heuristic seed or leaf solutions only")
    s.add_argument("--reductions", help="comma list of kcore,edge-kcore,persistency,nbvr,none")
    s.add_argument("--traversal", choices=TRAVERSALS)
    s.add_argument("--solver", choices=["exact", "anneal"], default="exact")
    s.add_argument("--reads", type=int, default=AnnealParams.num_reads)
    s.add_argument("--sweeps", type=int, default=AnnealParams.sweeps)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--anneal-seconds", type=float, default=ANNEAL_SECONDS)
    s.add_argument("--dump-qubo", metavar="PATH", help="write the full-graph QUBO here")
    s.add_argument("--output", choices=["json", "csv"], default="json")
    s.add_argument("--no-timing", action="store_true",
                   help="report zero seconds (byte-reproducible output)")

    g = sub.add_parser("generate", help="write an Erdos-Renyi graph")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=["dimacs", "edgelist"], default="edgelist")
    g.add_argument("--out", help="output file (default: stdout)")

    e = sub.add_parser("experiment", help="sweep random graphs, emit CSV")
    e.add_argument("--n-range", type=_int_range, default=[30], help="e.g. 20,30 or 20:60:10")
    e.add_argument("--density-range", type=_float_range, default=_float_range("0.1:0.9:0.1"))
    e.add_argument("--trials", type=int, default=1)
    e.add_argument("--cutoffs", type=_int_range, default=[64])
    e.add_argument("--preset", choices=sorted(PRESETS), default="dbk")
    e.add_argument("--select", type=_comma_list, default=None,
                   help="comma list of strategies (default: the preset's)")
    e.add_argument("--seed", type=int, default=0, help="master seed")
    e.add_argument("--solver", choices=["exact", "anneal"], default="exact")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--anneal-seconds", type=float, default=ANNEAL_SECONDS)
    e.add_argument("--no-timing", action="store_true")
    e.add_argument("--out", help="CSV file (default: stdout)")
    return parser


def _write(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args, parser):
    reductions = None
    if args.reductions is not None:
        reductions = set(_comma_list(args.reductions)) - {"none"}
    try:
        problem, cfg = engine_config_for(
            args.preset,
            problem=args.problem,
            cutoff=args.cutoff,
            selection=args.select,
            bounds=BOUND_CHOICES[args.bounds] if args.bounds else None,
            reductions=reductions,
            traversal=args.traversal,
            incumbent=args.lower,
            seed=args.seed,
            workers=args.workers,
            anneal_seconds=args.anneal_seconds,
        )
        if problem is None:
            parser.error("one of --problem or --preset is required")
        cfg.check_problem(problem)
        leaf = LeafSolver(args.solver, AnnealParams(args.reads, args.sweeps))
    except ValueError as exc:
        parser.error(str(exc))

    try:
        g = read_graph(args.input, args.format)
    except (ParseError, OSError) as exc:
        print(f"qdecomp: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE

    if args.dump_qubo:
        q = build_mc_qubo(g) if problem == "mc" else build_mvc_qubo(g)
        Path(args.dump_qubo).write_text(dumps(q))

    try:
        doc = solve_graph_document(g, problem, cfg, leaf, input_name=str(args.input),
                                   timing=not args.no_timing)
    except (LeafLimitError, LeafSolveError) as exc:
        if isinstance(exc, LeafSolveError) and not isinstance(exc.cause, LeafLimitError):
            raise
        print(f"qdecomp: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    if args.output == "json":
        print(json.dumps(doc, indent=2))
    else:
        sys.stdout.write(format_csv([document_to_record(doc)]))
    return 0


def _cmd_generate(args, parser):
    try:
        g = erdos_renyi(args.n, args.p, args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    _write(format_dimacs(g) if args.format == "dimacs" else format_edgelist(g), args.out)
    return 0


def _cmd_experiment(args, parser):
    strategies = args.select or [PRESETS[args.preset]["selection"]]
    bad = [s for s in strategies if s not in SELECTIONS]
    if bad:
        parser.error(f"unknown strategies {bad}")
    try:
        spec = ExperimentSpec(
            n_values=tuple(args.n_range),
            densities=tuple(args.density_range),
            trials=args.trials,
            strategies=tuple(strategies),
            cutoffs=tuple(args.cutoffs),
            preset=args.preset,
            master_seed=args.seed,
            solver=args.solver,
            anneal_seconds=args.anneal_seconds,
            timing=not args.no_timing,
            workers=args.workers,
        )
    except ValueError as exc:
        parser.error(str(exc))
    _write(format_csv(run_experiment(spec)), args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"solve": _cmd_solve, "generate": _cmd_generate, "experiment": _cmd_experiment}
    return handler[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())
