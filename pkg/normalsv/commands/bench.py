"""Command: bench — FFT vs Monte-Carlo timing table.

Output is CSV ``method,n_or_ts,strikes,seconds`` followed by one
``fft_faster=true|false`` line per (N, steps) pair.
"""

from __future__ import annotations

import argparse

from normalsv.commands import emit, load_config
from normalsv.nodes.benchmark import BENCH_HEADER, run_benchmark
from normalsv.services.storage import render_csv


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("bench", parents=[parent], help="time FFT against MC")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = load_config(args)
    rows, faster = run_benchmark(config, args.drift_sign)
    text = render_csv(BENCH_HEADER, (row.to_row() for row in rows))
    text += "".join(f"fft_faster={str(flag).lower()}\n" for flag in faster)
    emit(text, args.out)
    return 0
