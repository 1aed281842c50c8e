"""Bachelier (normal model) closed forms and the normal implied-vol solver.

    call = exp(-r T) [(F - K) N(d) + s n(d)],    s = sigma_n sqrt(T),  d = (F - K) / s

The call is evaluated as intrinsic plus time value,

    (F - K) N(d) + s n(d) = max(F - K, 0) + s [n(d) - |d| N(-|d|)],

so deep in-the-money prices keep their time value instead of losing it to
rounding in N(d) ~ 1.
"""

from __future__ import annotations

import logging
import math

from scipy.stats import norm

from normalsv.errors import ImpliedVolError
from normalsv.models.params import ModelParams
from normalsv.models.surface import BachelierQuote

logger = logging.getLogger(__name__)

SIGMA_FLOOR = 1e-12
_SIGMA_CEILING = 1e12
_EPS = 2.220446049250313e-16
_TINY = 2.2250738585072014e-308   # smallest normal double


def _time_value(forward: float, strike: float, maturity: float, sigma_n: float) -> float:
    spread = sigma_n * math.sqrt(maturity)
    if spread == 0.0:
        return 0.0
    d = abs(forward - strike) / spread
    return spread * (norm.pdf(d) - d * norm.cdf(-d))


def _call(forward: float, strike: float, maturity: float, rate: float, sigma_n: float) -> float:
    intrinsic = max(forward - strike, 0.0)
    tv = max(_time_value(forward, strike, maturity, sigma_n), 0.0)
    return math.exp(-rate * maturity) * (intrinsic + tv)


def _vega(forward: float, strike: float, maturity: float, rate: float, sigma_n: float) -> float:
    root_t = math.sqrt(maturity)
    d = (forward - strike) / (sigma_n * root_t)
    return math.exp(-rate * maturity) * root_t * norm.pdf(d)


# ------------------------------------------------------------------
# Quote-level API
# ------------------------------------------------------------------
def bachelier_price(q: BachelierQuote) -> float:
    return _call(q.forward, q.strike, q.maturity, q.rate, q.sigma_n)


def bachelier_put(q: BachelierQuote) -> float:
    """Put by parity: P = C - exp(-r T) (F - K)."""
    return bachelier_price(q) - math.exp(-q.rate * q.maturity) * (q.forward - q.strike)


def bachelier_vega(q: BachelierQuote) -> float:
    """d price / d sigma_n = exp(-r T) sqrt(T) n(d)."""
    if q.sigma_n <= 0:
        raise ValueError("vega needs sigma_n > 0")
    return _vega(q.forward, q.strike, q.maturity, q.rate, q.sigma_n)


def implied_normal_vol(
    price: float, forward: float, strike: float, maturity: float, rate: float = 0.0
) -> float:
    """Normal vol reproducing ``price``; Newton steps inside a bisection bracket.

    Returns 0 at intrinsic value.  Raises ``ImpliedVolError`` below intrinsic,
    for non-finite input, or when no bracket or converged root is found.
    """
    if maturity <= 0:
        raise ValueError("maturity must be positive")
    if not math.isfinite(price):
        raise ImpliedVolError(f"price {price!r} is not finite")
    intrinsic = math.exp(-rate * maturity) * max(forward - strike, 0.0)
    if price < intrinsic - 1e-14:
        raise ImpliedVolError(
            f"price {price:.17g} below intrinsic {intrinsic:.17g} (F={forward:g}, K={strike:g})"
        )
    if price <= intrinsic:
        return 0.0

    def excess(sigma: float) -> float:
        return _call(forward, strike, maturity, rate, sigma) - price

    lo, hi = SIGMA_FLOOR, 1.0
    while excess(hi) < 0.0:
        lo, hi = hi, 2.0 * hi
        if hi > _SIGMA_CEILING:
            raise ImpliedVolError(f"price {price:g} not reachable below sigma_n={hi:g}")
    if excess(lo) >= 0.0:
        return lo

    # ATM inverse as the starting point
    guess = price * math.exp(rate * maturity) * math.sqrt(2.0 * math.pi / maturity)
    sigma = min(max(guess, lo), hi)
    for _ in range(200):
        diff = excess(sigma)
        if diff == 0.0:
            break
        if diff > 0.0:
            hi = sigma
        else:
            lo = sigma
        vega = _vega(forward, strike, maturity, rate, sigma)
        step_to = sigma - diff / vega if vega > _TINY else math.nan
        if not lo < step_to < hi:
            step_to = 0.5 * (lo + hi)
        step = abs(step_to - sigma)
        sigma = step_to
        if step <= 4.0 * _EPS * sigma or hi - lo <= 4.0 * _EPS * hi:
            break

    residual = abs(excess(sigma))
    if residual > 1e-12 * max(1.0, price):
        raise ImpliedVolError(
            f"implied vol did not converge (residual {residual:.3g} at sigma_n={sigma:.6g})"
        )
    return sigma


# ------------------------------------------------------------------
# Deterministic-variance reference
# ------------------------------------------------------------------
def integrated_variance(p: ModelParams, maturity: float) -> float:
    """int_0^T v(t) dt for the noiseless variance path dv = (a - b v) dt."""
    theta = p.long_run_variance
    decay = -math.expm1(-p.b * maturity) / p.b
    return theta * maturity + (p.v0 - theta) * decay


def deterministic_variance_price(p: ModelParams, maturity: float, strike: float) -> float:
    """Bachelier call with total variance equal to the integrated variance."""
    sigma_n = math.sqrt(max(integrated_variance(p, maturity), 0.0) / maturity)
    return _call(p.forward(maturity), strike, maturity, p.r, sigma_n)
