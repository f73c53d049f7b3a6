"""Command-line benchmark harness.

Subcommands: gen-udg, load-dimacs, bench-sp, bench-csp, exact. Benchmarks
emit one CSV row per measurement and a JSON summary of per-group means and
standard deviations.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path as FsPath

from . import bench as bench_mod
from .errors import CspathError, OracleOverflowError
from .exact import exact_csp
from .formats import load_coords, load_dimacs, load_udg, write_dimacs, write_udg
from .generate import generate_udg
from .graph import Graph


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--udg", metavar="FILE", help="graph in udg text format")
    src.add_argument(
        "--dimacs",
        nargs=2,
        metavar=("COST_GR", "LENGTH_GR"),
        help="pair of DIMACS .gr files over one arc set",
    )
    p.add_argument("--divisor", type=int, default=100, help="DIMACS weight divisor (default 100)")
    p.add_argument(
        "--swap-weights",
        action="store_true",
        help="swap which DIMACS file supplies cost vs length",
    )
    p.add_argument("--coords", metavar="CO_FILE", help="optional DIMACS .co coordinates")


def _load_graph(args) -> tuple[Graph, str]:
    if args.udg:
        g, _, _ = load_udg(args.udg)
        return g, FsPath(args.udg).stem
    g = load_dimacs(args.dimacs[0], args.dimacs[1], divisor=args.divisor, swap=args.swap_weights)
    if args.coords:
        g = g.with_coords(load_coords(args.coords, g.n))
    return g, FsPath(args.dimacs[0]).stem


def _add_bench_args(p: argparse.ArgumentParser) -> None:
    _add_graph_args(p)
    p.add_argument("--k", type=_int_list, default=(1, 2, 3), help="k values, e.g. 1,2,3")
    p.add_argument("--pmax", type=_int_list, default=(1, 2, 3), help="p_max values, e.g. 1,2,3")
    p.add_argument(
        "--engine",
        choices=("all", "dij", "hs"),
        default="all",
        help="restrict the algorithm matrix",
    )
    p.add_argument("--classes", type=_int_list, default=(25, 50, 75), help="percent-of-diameter classes")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta-theta", type=float, default=0.5, help="budget interpolation factor")
    p.add_argument("--workers", type=int, default=1, help="worker processes (1 = timing-grade)")
    p.add_argument(
        "--reference",
        choices=("auto", "dij", "exact"),
        default="auto",
        help="ratio reference: exact oracle when tractable, else the Dijkstra engine",
    )
    p.add_argument("--out", metavar="PREFIX", help="write PREFIX.csv and PREFIX.json")


def _algorithms(args, csp: bool) -> tuple[str, ...]:
    algs: list[str] = []
    if args.engine in ("all", "dij"):
        algs.append("Dij")
    if args.engine in ("all", "hs"):
        algs.extend(f"{k}-HS{p}" for k in args.k for p in args.pmax)
    if csp:
        algs = ["A_" + a for a in algs]
    return tuple(algs)


def _run_bench(args, mode: str) -> int:
    g, graph_id = _load_graph(args)
    algorithms = _algorithms(args, csp=(mode == "csp"))
    needs_coords = any(int(a.split("-HS")[1]) > 1 for a in algorithms if "-HS" in a)
    if needs_coords and g.coords is None:
        print("error: perspective shortcuts (p_max > 1) need vertex coordinates", file=sys.stderr)
        return 2
    records = bench_mod.run_matrix(
        g,
        classes=args.classes,
        algorithms=algorithms,
        trials=args.trials,
        seed=args.seed,
        mode=mode,
        beta_theta=args.beta_theta,
        graph_id=graph_id,
        reference=args.reference,
        workers=args.workers,
    )
    summary = bench_mod.summarize(records, mode=mode, graph_id=graph_id)
    for row in summary.groups:
        ratio = "-" if row["mean_ratio"] is None else f'{row["mean_ratio"]:.6f}'
        t = "-" if row["mean_time_s"] is None else f'{row["mean_time_s"]:.6f}'
        print(
            f'{row["instance_class"]:>3}%  {row["algorithm"]:<10} ratio {ratio:>10}  '
            f'time {t:>12}s  ({row["completed"]}/{row["trials"]} ok)'
        )
    if args.out:
        csv_path = FsPath(args.out + ".csv")
        json_path = FsPath(args.out + ".json")
        csv_path.write_text(bench_mod.records_to_csv(records))
        json_path.write_text(bench_mod.summary_to_json(summary))
        print(f"wrote {csv_path} and {json_path}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="cspath",
        description="Constrained shortest paths: generators, benchmarks, exact oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen-udg", help="generate a unit-disk graph")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--r", type=float, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True, metavar="FILE")

    p_load = sub.add_parser("load-dimacs", help="parse and normalize DIMACS .gr files")
    p_load.add_argument("cost_gr")
    p_load.add_argument("length_gr")
    p_load.add_argument("--divisor", type=int, default=100)
    p_load.add_argument("--swap-weights", action="store_true")
    p_load.add_argument("--out", metavar="PREFIX", help="write PREFIX.cost.gr and PREFIX.length.gr")

    p_sp = sub.add_parser("bench-sp", help="one-weight shortest-path benchmark")
    _add_bench_args(p_sp)
    p_csp = sub.add_parser("bench-csp", help="constrained shortest-path benchmark")
    _add_bench_args(p_csp)

    p_exact = sub.add_parser("exact", help="exact constrained-shortest-path oracle")
    _add_graph_args(p_exact)
    p_exact.add_argument("--source", type=int, required=True)
    p_exact.add_argument("--target", type=int, required=True)
    p_exact.add_argument("--beta", type=int, required=True)
    p_exact.add_argument("--budget", type=int, default=10_000_000, help="label budget")

    args = parser.parse_args(argv)
    try:
        if args.command == "gen-udg":
            g = generate_udg(args.n, args.r, args.seed)
            FsPath(args.out).write_text(write_udg(g, args.r, args.seed))
            print(f"wrote {args.out}: n={g.n} m={g.m} A={g.max_cost} B={g.max_length}")
            return 0
        if args.command == "load-dimacs":
            g = load_dimacs(
                args.cost_gr, args.length_gr, divisor=args.divisor, swap=args.swap_weights
            )
            print(f"loaded: n={g.n} m={g.m} A={g.max_cost} B={g.max_length}")
            if args.out:
                cost_text, length_text = write_dimacs(g)
                FsPath(args.out + ".cost.gr").write_text(cost_text)
                FsPath(args.out + ".length.gr").write_text(length_text)
                print(f"wrote {args.out}.cost.gr and {args.out}.length.gr")
            return 0
        if args.command == "bench-sp":
            return _run_bench(args, "sp")
        if args.command == "bench-csp":
            return _run_bench(args, "csp")
        if args.command == "exact":
            g, _ = _load_graph(args)
            try:
                path = exact_csp(g, args.source, args.target, args.beta, label_budget=args.budget)
            except OracleOverflowError as exc:
                print(f"oracle overflow: {exc}", file=sys.stderr)
                return 3
            if path is None:
                print("infeasible: no path satisfies the length budget")
                return 1
            print(f"cost={path.cost} length={path.length} arcs={len(path.arcs)}")
            return 0
    except CspathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
