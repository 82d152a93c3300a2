"""Command-line front end.

Verbs: ``validate``, ``closely-table``, ``widely-curves`` and ``report``.
Exit status is 0 on success, 1 when a validation pair fails and 2 on a
configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from ..exceptions import ConfigurationError, UnsupportedError
from .config import ScenarioConfig, default_config, load_config
from .runners import run_closely_table, run_report, run_validation, run_widely_curves

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG = 0, 1, 2

log = logging.getLogger("risradar")

DEFAULT_LAYOUT = {"closely-table": "closely", "widely-curves": "widely",
                  "validate": "closely", "report": "closely"}


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("trial count must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="scenario configuration file")
    common.add_argument("--seed", type=_u64, help="Monte Carlo seed (overrides the config)")
    common.add_argument("--trials", type=_positive_int, help="Monte Carlo trials per check")
    common.add_argument("--out", type=Path, help="output file (default: standard output)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="risradar",
                                     description="RIS-assisted radar detection experiments")
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("validate", parents=[common],
                   help="closed-form vs Monte Carlo checks (CSV + pass/fail)")
    sub.add_parser("closely-table", parents=[common], help="closely spaced SNR gain table (CSV)")
    sub.add_parser("widely-curves", parents=[common], help="widely spaced Pd curves (CSV)")
    sub.add_parser("report", parents=[common],
                   help="scenario summary with far-field and regime checks")
    return parser


def resolve_config(args) -> ScenarioConfig:
    config = load_config(args.config) if args.config else default_config(DEFAULT_LAYOUT[args.verb])
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.trials is not None:
        overrides["trials"] = args.trials
    return replace(config, **overrides) if overrides else config


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    logging.captureWarnings(True)
    try:
        config = resolve_config(args)
        if args.verb == "closely-table":
            _emit(run_closely_table(config), args.out)
        elif args.verb == "widely-curves":
            _emit(run_widely_curves(config), args.out)
        elif args.verb == "report":
            _emit(run_report(config), args.out)
        else:
            text, ok = run_validation(config)
            _emit(text, args.out)
            failed = [line.split(",")[0] for line in text.splitlines()[1:]
                      if line.endswith(",0")]
            if not ok:
                for name in failed:
                    log.error("validation pair failed: %s", name)
                return EXIT_VALIDATION
            log.info("all validation pairs passed")
    except (ConfigurationError, UnsupportedError) as exc:
        log.error("configuration error: %s", exc)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
