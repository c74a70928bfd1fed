"""Command-line entry point: ``qaoa-pf <subcommand>`` or ``python -m qaoa_pf``."""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from .errors import QAOAError
from .experiment import (
    ExperimentConfig,
    compare_strategies,
    load_aggregate,
    load_config,
    run_experiment,
    with_overrides,
)
from .graphs import generate_erdos_renyi, generate_regular, max_cut_bruteforce, read_graph
from .landscape import landscape_grid, parse_prefix
from .optimize import OptimizerOptions
from .strategies import parameters_fixing_sweep, random_init_sweep


def _cmd_gen_graph(args) -> int:
    if args.kind == "regular":
        g = generate_regular(args.n, args.degree, args.seed)
    else:
        g = generate_erdos_renyi(args.n, args.prob, args.seed)
    text = g.to_text()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_maxcut(args) -> int:
    sol = max_cut_bruteforce(read_graph(args.graph))
    print(f"c_max {sol.c_max}")
    print(f"witness {sol.witness}")
    return 0


def _cmd_solve(args) -> int:
    graph = read_graph(args.graph)
    opts = OptimizerOptions(max_evals=args.max_evals, f_abs_tol=args.tol, x_abs_tol=args.tol)
    if args.strategy == "random":
        recs = random_init_sweep(graph, args.p, args.trials, args.seed, options=opts)
    else:
        recs = parameters_fixing_sweep(
            graph, args.p, args.trials, args.seed, options=opts,
            augment_zero_trial=not args.no_zero_trial,
        )
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["depth", "mean_alpha", "std_alpha", "best_alpha", "best_params"])
    for r in recs:
        best = r.best_trial.optimal_params.canonical().to_array()
        w.writerow([
            r.depth, f"{r.mean_alpha:.17g}", f"{r.std_alpha:.17g}",
            f"{r.best_trial.alpha:.17g}", ";".join(f"{v:.17g}" for v in best),
        ])
    return 0


def _cmd_experiment(args) -> int:
    config = load_config(args.config) if args.config else ExperimentConfig()
    config = with_overrides(
        config,
        master_seed=args.seed,
        output_dir=args.out,
        p_max=args.p_max,
        trials_per_depth=args.trials,
        strategy={"pf": "parameters_fixing"}.get(args.strategy, args.strategy),
    )
    if config.output_dir is None:
        raise SystemExit("experiment: no output directory (use --out or output_dir in the config)")
    report = run_experiment(config, workers=args.workers)
    print(f"wrote {report.output_dir}")
    return 0


def _cmd_landscape(args) -> int:
    graph = read_graph(args.graph)
    grid = landscape_grid(graph, parse_prefix(args.prefix), args.resolution, graph_id=args.graph)
    if args.out:
        grid.write_csv(args.out)
    else:
        sys.stdout.write(grid.to_csv())
    return 0


def _rows_for(directory, strategy):
    rows = load_aggregate(directory, strategy)
    if rows:
        return rows
    # single-strategy directory: use whatever it holds
    rows = load_aggregate(directory)
    if len({r["strategy"] for r in rows}) == 1:
        return rows
    raise SystemExit(f"compare: {directory} has no rows for strategy {strategy!r}")


def _cmd_compare(args) -> int:
    a = _rows_for(args.a, args.strategy_a)
    b = _rows_for(args.b, args.strategy_b)
    summary = compare_strategies(a, b, tie_tol=args.tie_tol)
    out = Path(args.out) if args.out else None
    if out is not None:
        summary.to_csv(out)
    else:
        w = csv.DictWriter(sys.stdout, fieldnames=list(summary.rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(summary.rows)
    print(f"wins {summary.wins} losses {summary.losses} ties {summary.ties}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qaoa-pf", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-graph", help="generate a random instance")
    p.add_argument("--kind", choices=["regular", "er"], default="regular")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--prob", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen_graph)

    p = sub.add_parser("maxcut", help="exact Max-Cut by enumeration")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=_cmd_maxcut)

    p = sub.add_parser("solve", help="one instance, one strategy, depths 1..P")
    p.add_argument("--graph", required=True)
    p.add_argument("--strategy", choices=["random", "pf"], required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-evals", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--no-zero-trial", action="store_true", help="run the fixing sweep without the extra zero-seeded trial")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("experiment", help="ensemble sweep from a JSON config")
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--p-max", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--strategy", choices=["random", "pf", "parameters_fixing", "both"])
    p.add_argument("--workers", type=int)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("landscape", help="F_p grid over the last layer's angles")
    p.add_argument("--graph", required=True)
    p.add_argument("--prefix", default="", help="fixed angles g1,..,gk,b1,..,bk (empty for p=1)")
    p.add_argument("--resolution", type=int, default=32)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_landscape)

    p = sub.add_parser("compare", help="per-instance mean alpha difference of two reports")
    p.add_argument("--a", required=True, help="experiment directory with the random-init run")
    p.add_argument("--b", required=True, help="experiment directory with the parameters-fixing run")
    p.add_argument("--strategy-a", default="random")
    p.add_argument("--strategy-b", default="parameters_fixing")
    p.add_argument("--tie-tol", type=float, default=0.0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_compare)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except QAOAError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
