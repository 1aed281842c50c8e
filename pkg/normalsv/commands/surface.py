"""Command: surface — normal implied-vol surface as CSV.

    normalsv surface --config data/figure1.json --out output/figure1.csv
"""

from __future__ import annotations

import argparse
import logging

import numpy as np

from normalsv.commands import emit, load_config
from normalsv.nodes.build_surface import build_surface
from normalsv.services.storage import SURFACE_HEADER, render_csv, write_surface_csv

logger = logging.getLogger(__name__)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "surface", parents=[parent], help="build a normal implied-vol surface"
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = load_config(args)
    section = config.surface
    strikes = section.strike_axis()
    surface = build_surface(
        config.model,
        strikes,
        section.maturity_axis(),
        section.method,
        config.fft_config(strikes.tolist()),
        args.drift_sign,
    )
    logger.info("max implied vol %.6g", float(np.nanmax(surface.implied_vols)))
    if args.out is None:
        emit(render_csv(SURFACE_HEADER, surface.rows()), None)
    else:
        write_surface_csv(surface, args.out)
    return 0
