"""Command: verify — run the oracle suite; exit 1 if any check fails."""

from __future__ import annotations

import argparse

from normalsv.commands import emit, load_config
from normalsv.errors import VerificationFailure
from normalsv.nodes.run_checks import run_checks
from normalsv.services.storage import render_csv

CHECK_HEADER = ("check", "status", "measured", "tolerance")


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("verify", parents=[parent], help="run the oracle checks")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = load_config(args)
    results = run_checks(config, args.drift_sign)
    emit(render_csv(CHECK_HEADER, (r.to_row() for r in results)), args.out)
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise VerificationFailure(f"failed checks: {', '.join(failed)}")
    return 0
