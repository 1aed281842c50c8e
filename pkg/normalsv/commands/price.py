"""Command: price — strike,price[,std_error] rows for one pricing method.

    normalsv price --method fft --config data/table1.json --strike 0
"""

from __future__ import annotations

import argparse
import logging

from normalsv.commands import emit, load_config
from normalsv.models.pricing import PricingMethod
from normalsv.pricers import PricingRequest, price_strikes
from normalsv.services.storage import render_csv

logger = logging.getLogger(__name__)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("price", parents=[parent], help="price European calls")
    parser.add_argument(
        "--method", choices=[m.value for m in PricingMethod], default=PricingMethod.FFT.value,
    )
    parser.add_argument(
        "--strike", type=float, action="append", dest="strikes",
        help="strike to price (repeatable; default: the config's strikes)",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    config = load_config(args)
    strikes = args.strikes if args.strikes else list(config.strikes)
    request = PricingRequest(
        params=config.model,
        maturity=config.maturity,
        strikes=strikes,
        fft=config.fft_config(strikes),
        mc=config.mc,
        drift_sign=args.drift_sign,
    )
    method = PricingMethod(args.method)
    rows = price_strikes(request, method)

    header = ["strike", "price"]
    if method is PricingMethod.MC:
        header.append("std_error")
    emit(render_csv(header, (row.to_row() for row in rows)), args.out)
    return 0
