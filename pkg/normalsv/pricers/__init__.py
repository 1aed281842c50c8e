"""Pricing backends.

PricedStrike dataclass, pricer registry, and dispatch function.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from normalsv.models.params import ModelParams
from normalsv.models.pricing import DriftSign, FftConfig, McConfig, PricingMethod
from normalsv.pricers.mc import price_mc_strikes
from normalsv.pricers.transform import admissible_alphas, price_fft, price_quadrature

logger = logging.getLogger(__name__)


@dataclass
class PricedStrike:
    strike: float
    price: float
    std_error: float | None = None     # MC only

    def to_row(self) -> list[float]:
        row = [self.strike, self.price]
        if self.std_error is not None:
            row.append(self.std_error)
        return row


@dataclass
class PricingRequest:
    params: ModelParams
    maturity: float
    strikes: list[float]
    fft: FftConfig = field(default_factory=FftConfig)
    mc: McConfig = field(default_factory=McConfig)
    drift_sign: DriftSign = DriftSign.PLUS


# Registry: method name -> pricing function
_PRICER_REGISTRY: dict[str, callable] = {}


def register_pricer(*methods: str):
    """Decorator to register a pricing function for method names.

    Usage:
        @register_pricer("fft")
        def price_with_fft(request: PricingRequest) -> list[PricedStrike]:
            ...
    """
    def decorator(func):
        for method in methods:
            _PRICER_REGISTRY[PricingMethod(method).value] = func
        return func
    return decorator


def price_strikes(request: PricingRequest, method: PricingMethod | str) -> list[PricedStrike]:
    """Dispatch to the pricer registered for ``method``."""
    key = PricingMethod(method).value
    if key not in _PRICER_REGISTRY:
        raise KeyError(f"no pricer registered for method '{key}'")
    started = time.perf_counter()
    rows = _PRICER_REGISTRY[key](request)
    logger.info(
        "%s: %d strikes in %.3fs", key, len(rows), time.perf_counter() - started
    )
    return rows


# ------------------------------------------------------------------
# Built-in backends
# ------------------------------------------------------------------
@register_pricer("fft")
def _price_fft(request: PricingRequest) -> list[PricedStrike]:
    grid_prices = price_fft(request.params, request.maturity, request.fft, request.drift_sign)
    return [PricedStrike(k, grid_prices.at(k)) for k in request.strikes]


@register_pricer("quad")
def _price_quad(request: PricingRequest) -> list[PricedStrike]:
    alpha = float(admissible_alphas(request.params, request.maturity, request.fft)[0])
    return [
        PricedStrike(
            k,
            price_quadrature(request.params, request.maturity, k, alpha, request.drift_sign),
        )
        for k in request.strikes
    ]


@register_pricer("mc")
def _price_mc(request: PricingRequest) -> list[PricedStrike]:
    results = price_mc_strikes(request.params, request.maturity, request.strikes, request.mc)
    return [
        PricedStrike(k, res.price, res.std_error)
        for k, res in zip(request.strikes, results)
    ]
