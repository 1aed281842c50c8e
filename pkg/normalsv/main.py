"""Command-line entry point.

Run with:
    uv run normalsv price --method fft --config data/table1.json --strike 0

Subcommands: price, surface, bench, verify.  Global flags --config,
--seed and --out may appear before or after the subcommand.

Exit codes: 0 success, 1 verification failure, 2 config error,
3 numerical or output error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from normalsv.commands import bench, price, surface, verify
from normalsv.config import settings
from normalsv.errors import NormalSVError
from normalsv.models.pricing import DriftSign

# ------------------------------------------------------------------
# Logging
# ------------------------------------------------------------------
logger = logging.getLogger(__name__)


def configure_logging() -> None:
    """stderr only; stdout carries command output."""
    logging.basicConfig(
        level=settings.LOG_LEVEL,
        format=settings.LOG_FORMAT,
        stream=sys.stderr,
    )


# ------------------------------------------------------------------
# Argument parsing
# ------------------------------------------------------------------
def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # Sub-parsers leave unset flags alone so values given before the
    # subcommand survive.
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", default=default, help="RunConfig JSON file")
    parser.add_argument("--seed", type=_u64, default=default, help="override mc.seed")
    parser.add_argument("--out", default=default, help="output file (default: stdout)")
    parser.add_argument(
        "--drift-sign",
        choices=[s.value for s in DriftSign],
        default=argparse.SUPPRESS if suppress else DriftSign.PLUS.value,
        help=argparse.SUPPRESS,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normalsv",
        description="Normal-model stochastic-volatility option pricer",
    )
    _add_global_flags(parser, suppress=False)
    parent = argparse.ArgumentParser(add_help=False)
    _add_global_flags(parent, suppress=True)

    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in (price, surface, bench, verify):
        command.register(subparsers, parent)
    return parser


# ------------------------------------------------------------------
# CLI entry point
# ------------------------------------------------------------------
def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse usage errors are configuration errors
        return 2 if exc.code else 0
    if args.config is None:
        logger.error("--config is required")
        return 2

    try:
        return args.handler(args)
    except NormalSVError as exc:
        logger.error("%s", exc)
        return exc.exit_code
    except ValueError as exc:
        logger.error("%s", exc)
        return 3


def start() -> None:
    """Entry point for the `normalsv` console script."""
    configure_logging()
    sys.exit(main())


if __name__ == "__main__":
    start()
