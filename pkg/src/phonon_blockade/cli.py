"""``simulate`` command-line entry point."""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .errors import ConfigError, PhononBlockadeError
from .scenarios import SCENARIOS, load_config, run_scenario

OUT_ENV = "PHONON_BLOCKADE_OUT"
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _parser():
    p = argparse.ArgumentParser(prog="simulate",
                                description="Run a phonon-blockade reproduction scenario.")
    p.add_argument("scenario", choices=SCENARIOS)
    p.add_argument("--config", required=True, help="JSON scenario configuration")
    p.add_argument("--out", help=f"output directory (default: ${OUT_ENV}, config output_dir, or ./out)")
    p.add_argument("--seed", type=int, help="master seed for quantum-jump trajectories")
    p.add_argument("--threads", type=int, default=1, help="worker threads for sweeps and trajectories")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.threads < 1:
        print("simulate: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.seed is not None and not 0 <= args.seed < 2 ** 64:
        print("simulate: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = load_config(args.config, args.scenario)
        out = args.out or os.environ.get(OUT_ENV) or cfg.output_dir or "out"
        report = run_scenario(cfg, out, threads=args.threads, seed=args.seed)
    except (ConfigError, OSError) as exc:
        print(f"simulate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PhononBlockadeError as exc:
        print(f"simulate: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for c in report.checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: observed {c.observed!r}, expected {c.expected!r}")
    print(f"{report.scenario}: {'PASS' if report.passed else 'FAIL'} in {report.runtime_seconds:.1f} s -> {out}")
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
