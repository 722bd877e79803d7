"""Command-line entry point: `glsim <experiment> --config <file> [...]`.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
parse error.  The default output root is the current directory, overridable
with the GLSIM_OUT environment variable or --out.
"""

from __future__ import annotations

import argparse
import os
import sys

from .harness import EXPERIMENTS, list_checks, load_config, run_experiment
from .modelio import ParseError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glsim",
        description="Run a Gibbs-sampler verification experiment from a config file.",
    )
    parser.add_argument(
        "experiment", choices=EXPERIMENTS + ("list-checks",),
        help="experiment to run, or 'list-checks' to print the check catalog",
    )
    parser.add_argument("--config", help="experiment config file (INI-style key-value)")
    parser.add_argument("--out", help="output directory for tables and manifest")
    parser.add_argument("--seed", type=int, help="override the config seed (unsigned)")
    parser.add_argument("--jobs", type=int, default=1, help="worker threads for grid points")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.experiment == "list-checks":
        for check_id, description in list_checks():
            print(f"{check_id}: {description}")
        return 0

    if args.config is None:
        parser.error("--config is required")  # exits with code 2
    if args.seed is not None and args.seed < 0:
        parser.error("--seed must be a nonnegative integer")
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")

    try:
        cfg = load_config(args.config)
    except FileNotFoundError:
        print(f"glsim: config file not found: {args.config}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"glsim: {exc}", file=sys.stderr)
        return 2

    if cfg.experiment != args.experiment:
        print(
            f"glsim: config names experiment {cfg.experiment!r}, "
            f"but {args.experiment!r} was requested",
            file=sys.stderr,
        )
        return 2
    if args.seed is not None:
        cfg.seed = args.seed
    cfg.jobs = args.jobs
    out_dir = args.out or os.environ.get("GLSIM_OUT") or cfg.out_dir

    try:
        manifest = run_experiment(cfg, out_dir)
    except ParseError as exc:
        print(f"glsim: {exc}", file=sys.stderr)
        return 2

    n_pass = sum(1 for c in manifest.checks if c.passed)
    print(f"{manifest.experiment}: {n_pass}/{len(manifest.checks)} checks passed; "
          f"tables in {out_dir}")
    for c in manifest.checks:
        if not c.passed:
            print(f"  FAIL {c.check}: measured {c.measured!r} vs bound {c.bound!r}",
                  file=sys.stderr)
    return 0 if manifest.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
