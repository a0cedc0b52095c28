"""Command-line entry point.

    coarsen run --data DIR --dataset NAME --strategy lcc --out DIR
    coarsen report scale --data DIR --dataset NAME [NAME ...] --strategies lcc random --out FILE
    coarsen report runtime --data DIR --dataset NAME --strategy lcc --reps 3 --out FILE
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import strategies
from .errors import CoarsenError
from .report import ScaleReport, run_runtime_report, run_scale_report
from .strategies import StrategyOptions
from .tudataset import default_policy, init_features, load_tudataset
from .views import emit_views

log = logging.getLogger("coarsen")


def _add_common(p: argparse.ArgumentParser, multi_dataset: bool = False) -> None:
    p.add_argument("--data", required=True, help="directory holding TUDataset folders")
    if multi_dataset:
        p.add_argument("--dataset", required=True, nargs="+")
    else:
        p.add_argument("--dataset", required=True)
    p.add_argument("--delta", type=int, default=6, help="longest loop to coarsen (default 6)")
    p.add_argument("--sigma", type=int, default=1, help="clique hop radius (default 1)")
    p.add_argument("--seed", type=int, default=0, help="seed for the random strategy")
    p.add_argument("--random-groups", type=int, default=5, help="groups for the random strategy")
    p.add_argument("--fallback-threshold", type=float, default=0.0,
                   help="run the loop pass when clique coverage is at most this fraction")
    p.add_argument("--features", choices=["node-label", "degree", "constant"], default=None)
    p.add_argument("--degree-cap", type=int, default=64)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coarsen", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="emit original, coarsened and line-graph views")
    _add_common(run)
    run.add_argument("--strategy", default="lcc")
    run.add_argument("--lgc-source", choices=["coarse", "original"], default="coarse",
                     help="build the line graph from the coarsened (default) or original graph")
    run.add_argument("--out", required=True)

    report = sub.add_parser("report", help="scale or runtime report")
    kinds = report.add_subparsers(dest="kind", required=True)
    scale = kinds.add_parser("scale")
    _add_common(scale, multi_dataset=True)
    scale.add_argument("--strategies", nargs="+", default=["lcc"])
    scale.add_argument("--out", required=True, help="JSON output; the text table goes next to it")
    runtime = kinds.add_parser("runtime")
    _add_common(runtime, multi_dataset=True)
    runtime.add_argument("--strategy", default="lcc")
    runtime.add_argument("--reps", type=int, default=3)
    runtime.add_argument("--out", required=True)
    return parser


def _options(args) -> StrategyOptions:
    return StrategyOptions(delta=args.delta, sigma=args.sigma,
                           loop_fallback_threshold=args.fallback_threshold,
                           seed=args.seed, random_groups=args.random_groups)


def _load(args, name):
    d = load_tudataset(args.data, name)
    return init_features(d, args.features or default_policy(d), args.degree_cap)


def _write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        opts = _options(args)
        opts.lcc  # validates delta/sigma
        if args.command == "run":
            strategies.get(args.strategy)
            target = emit_views(_load(args, args.dataset), args.strategy, opts, args.out,
                                lgc_source=args.lgc_source)
            print(target)
        elif args.kind == "scale":
            report = ScaleReport()
            for name in args.dataset:
                run_scale_report(_load(args, name), args.strategies, opts, report)
            out = Path(args.out)
            report.write(out)
            table = report.to_table()
            _write_text(out.with_suffix(".txt"), table)
            sys.stdout.write(table)
        else:
            results = [run_runtime_report(_load(args, name), args.strategy, args.reps, opts)
                       for name in args.dataset]
            out = Path(args.out)
            out.parent.mkdir(parents=True, exist_ok=True)
            with open(out, "w", encoding="utf-8", newline="\n") as fh:
                json.dump([r.to_dict() for r in results], fh, indent=2)
                fh.write("\n")
            for r in results:
                sys.stdout.write(r.to_table())
    except (CoarsenError, ValueError) as exc:
        print(f"coarsen: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
