"""Command-line entry point.

    simulate <scenario> [--config PATH] [--n N] [--ratio R]
                        [--tmax T] [--steps K] [--out DIR]
                        [--sweep R1,R2,...] [--threads M] [--checkpoint]

Flags override config-file values. Thread count falls back to the
SPINFLOW_THREADS environment variable when --threads is absent.

Exit codes: 0 success, 1 configuration error, 2 physics/convergence
error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .evolve import PropagationError
from .experiments import (
    SCENARIOS,
    ConfigError,
    PlateauError,
    parse_config,
    run_scenario,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PHYSICS = 2
EXIT_IO = 3

THREADS_ENV = "SPINFLOW_THREADS"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simulate",
        description="Run a spin-register scenario and write CSV series.",
    )
    parser.add_argument("scenario", choices=SCENARIOS, help="scenario to run")
    parser.add_argument("--config", help="key = value configuration file")
    parser.add_argument("--n", type=int, help="qubits per chain")
    parser.add_argument("--ratio", type=float, help="system-chain over intra-chain coupling")
    parser.add_argument("--tmax", type=float, help="dimensionless final time")
    parser.add_argument("--steps", type=int, help="number of grid steps")
    parser.add_argument("--out", help="output directory (default: out)")
    parser.add_argument("--sweep", help="comma-separated coupling ratios for sweep scenarios")
    parser.add_argument("--threads", type=int, help="worker threads (default: 1)")
    parser.add_argument(
        "--checkpoint",
        action="store_true",
        default=None,
        help="also write a binary trajectory checkpoint",
    )
    return parser


def _flags_from_args(args: argparse.Namespace) -> dict:
    threads = args.threads
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        if env is not None:
            try:
                threads = int(env)
            except ValueError:
                raise ConfigError(f"{THREADS_ENV} must be an integer, got {env!r}")
    sweep = None
    if args.sweep is not None:
        try:
            sweep = tuple(float(p) for p in args.sweep.split(",") if p.strip())
        except ValueError as exc:
            raise ConfigError(f"bad --sweep list {args.sweep!r}: {exc}") from exc
    return {
        "scenario": args.scenario,
        "n": args.n,
        "ratio": args.ratio,
        "t_max": args.tmax,
        "n_steps": args.steps,
        "out": args.out,
        "sweep": sweep,
        "threads": threads,
        "checkpoint": args.checkpoint,
    }


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = parse_config(args.config, _flags_from_args(args))
    except (ConfigError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        written = run_scenario(config)
    except (PlateauError, PropagationError) as exc:
        print(f"{config.scenario}: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except OSError as exc:
        print(f"{config.scenario}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
