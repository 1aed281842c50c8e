"""Node: run_checks — the oracle suite behind ``normalsv verify``.

Every check compares one pricing path against an independent one and
reports the measured discrepancy next to its tolerance:

  - charfn_*         closed form vs normalisation, symmetry, ODE, RK4
  - fft_vs_quad      Carr–Madan FFT vs adaptive quadrature
  - deterministic_*  sigma -> 0 limit vs Bachelier with integrated variance
  - charfn_vs_mc_*   closed form vs Monte-Carlo at a non-zero drift
  - implied_vol_*    Bachelier inversion roundtrip and ATM identity
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from normalsv.config import settings
from normalsv.models.params import ModelParams
from normalsv.models.pricing import CarrMadanGrid, DriftSign, FftConfig, McConfig, SingleAlpha
from normalsv.models.run import RunConfig
from normalsv.models.surface import BachelierQuote
from normalsv.pricers.bachelier import (
    bachelier_price,
    deterministic_variance_price,
    implied_normal_vol,
    integrated_variance,
)
from normalsv.pricers.charfn import cd_solution, char_fn, integrate_riccati, ode_residual
from normalsv.pricers.mc import estimate_charfn_mc
from normalsv.pricers.transform import admissible_alphas, price_fft, price_quadrature

logger = logging.getLogger(__name__)

CHARFN_POINTS = (0.5, 1.0, 5.0, 20.0)
CHARFN_TAUS = (0.1, 1.0, 2.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float

    def to_row(self) -> list[object]:
        return [self.name, "pass" if self.passed else "fail", self.measured, self.tolerance]


def _check(name: str, measured: float, tolerance: float) -> CheckResult:
    passed = bool(measured <= tolerance)
    log = logger.info if passed else logger.error
    log("%s: %s (measured %.3g, tolerance %.3g)", name, "pass" if passed else "FAIL",
        measured, tolerance)
    return CheckResult(name, passed, float(measured), float(tolerance))


# ------------------------------------------------------------------
# Characteristic function
# ------------------------------------------------------------------
def check_charfn(p: ModelParams, drift_sign: DriftSign) -> list[CheckResult]:
    u = np.array(CHARFN_POINTS)
    zero = max(abs(char_fn(p, 0.0, tau, drift_sign) - 1.0) for tau in CHARFN_TAUS)
    conj = max(
        float(np.max(np.abs(char_fn(p, -u, tau, drift_sign)
                            - np.conj(char_fn(p, u, tau, drift_sign)))))
        for tau in CHARFN_TAUS
    )

    # Residuals are taken against the +r i w system regardless of drift_sign.
    residual = 0.0
    rk4 = 0.0
    for tau in CHARFN_TAUS:
        res_c, res_d = ode_residual(p, u, tau, 1e-5, drift_sign)
        residual = max(residual, float(np.max(np.abs(res_c))), float(np.max(np.abs(res_d))))
        closed_c, closed_d = cd_solution(p, u, tau, drift_sign)
        for k, omega in enumerate(CHARFN_POINTS):
            c, d = integrate_riccati(p, omega, tau)
            rk4 = max(
                rk4,
                abs(c - closed_c[k]) / max(abs(c), 1e-300),
                abs(d - closed_d[k]) / max(abs(d), 1e-300),
            )

    return [
        _check("charfn_normalization", float(zero), 0.0),
        _check("charfn_conjugate_symmetry", conj, 1e-14),
        _check("charfn_ode_residual", residual, 1e-6),
        _check("charfn_rk4_relative", rk4, 1e-8),
    ]


# ------------------------------------------------------------------
# Transform pricers
# ------------------------------------------------------------------
def _fft_on_node(
    p: ModelParams,
    maturity: float,
    cfg: FftConfig,
    strike: float,
    eta: float,
    drift_sign: DriftSign,
) -> float:
    """FFT price with the grid centred on ``strike`` (no interpolation)."""
    grid = CarrMadanGrid(eta=eta, n=cfg.grid.n, k0=strike)
    return price_fft(p, maturity, cfg.model_copy(update={"grid": grid}), drift_sign).at(strike)


def check_fft_vs_quad(config: RunConfig, drift_sign: DriftSign) -> CheckResult:
    strikes = config.verify.fft_strikes
    cfg = config.fft_config(strikes)
    p, maturity = config.model, config.maturity
    alpha = float(admissible_alphas(p, maturity, cfg)[0])
    worst = max(
        abs(
            _fft_on_node(p, maturity, cfg, k, config.verify.fft_eta, drift_sign)
            - price_quadrature(p, maturity, k, alpha, drift_sign)
        )
        for k in strikes
    )
    return _check("fft_vs_quad", worst, config.verify.fft_tolerance)


def check_deterministic_limit(config: RunConfig, drift_sign: DriftSign) -> list[CheckResult]:
    p = config.model.model_copy(update={"sigma": 1e-6})
    maturity = config.maturity
    spread = math.sqrt(integrated_variance(p, maturity))
    forward = p.forward(maturity)
    strikes = [forward + spread * z for z in (-3.0, -1.5, 0.0, 1.5, 3.0)]

    # The sigma -> 0 model has every exponential moment, so the bp-scale
    # damping is admissible whatever the configured mode.
    alpha = settings.DEFAULT_ALPHA
    cfg = config.fft_config(strikes).model_copy(
        update={"alpha_mode": SingleAlpha(alpha=alpha)}
    )
    fft_err = quad_err = 0.0
    for k in strikes:
        ref = deterministic_variance_price(p, maturity, k)
        fft = _fft_on_node(p, maturity, cfg, k, config.verify.fft_eta, drift_sign)
        fft_err = max(fft_err, abs(fft - ref))
        quad_err = max(quad_err, abs(price_quadrature(p, maturity, k, alpha, drift_sign) - ref))
    return [
        _check("deterministic_limit_fft", fft_err, 1e-6),
        _check("deterministic_limit_quad", quad_err, 1e-6),
    ]


# ------------------------------------------------------------------
# Monte-Carlo oracle
# ------------------------------------------------------------------
def check_charfn_vs_mc(config: RunConfig, drift_sign: DriftSign) -> list[CheckResult]:
    """Closed form vs simulation at r = verify.drift_rate.

    The measured value is the discrepancy in units of the MC standard error.
    """
    v = config.verify
    p = config.model.model_copy(update={"r": v.drift_rate})
    mc = McConfig(
        steps=v.mc_steps,
        paths=v.mc_paths,
        repetitions=v.mc_repetitions,
        partitions=config.mc.partitions,
        seed=config.mc.seed,
    )
    results = []
    for u in v.charfn_points:
        estimate, std_error = estimate_charfn_mc(p, u, config.maturity, mc)
        analytic = complex(char_fn(p, u, config.maturity, drift_sign))
        ratio = abs(analytic - estimate) / std_error if std_error > 0 else math.inf
        results.append(_check(f"charfn_vs_mc_u={u:g}", ratio, 3.0))
    return results


# ------------------------------------------------------------------
# Implied vol
# ------------------------------------------------------------------
def random_quotes(count: int, seed: int, max_moneyness: float = 4.0) -> list[BachelierQuote]:
    """Quotes with F, K in [0.5, 2], sigma_n in [0.01, 1.5], T in [0.1, 3].

    Draws with |F - K| / (sigma_n sqrt(T)) above ``max_moneyness`` are
    redrawn: their time value is below double resolution of the price.
    """
    rng = np.random.default_rng(seed)
    quotes: list[BachelierQuote] = []
    while len(quotes) < count:
        forward, strike = rng.uniform(0.5, 2.0, size=2)
        sigma_n = rng.uniform(0.01, 1.5)
        maturity = rng.uniform(0.1, 3.0)
        if abs(forward - strike) > max_moneyness * sigma_n * math.sqrt(maturity):
            continue
        quotes.append(
            BachelierQuote(
                forward=float(forward), strike=float(strike),
                maturity=float(maturity), sigma_n=float(sigma_n),
            )
        )
    return quotes


def check_implied_vol(config: RunConfig) -> list[CheckResult]:
    worst = 0.0
    for q in random_quotes(config.verify.roundtrip_quotes, config.mc.seed):
        solved = implied_normal_vol(bachelier_price(q), q.forward, q.strike, q.maturity, q.rate)
        worst = max(worst, abs(solved - q.sigma_n))

    atm = BachelierQuote(forward=1.0, strike=1.0, maturity=1.0, sigma_n=0.3)
    price = bachelier_price(atm)
    closed_form = price * math.sqrt(2.0 * math.pi / atm.maturity)
    atm_err = abs(implied_normal_vol(price, 1.0, 1.0, 1.0) - closed_form)
    return [
        _check("implied_vol_roundtrip", worst, 1e-9),
        _check("implied_vol_atm_inverse", atm_err, 1e-12),
    ]


def run_checks(
    config: RunConfig, drift_sign: DriftSign | str = DriftSign.PLUS
) -> list[CheckResult]:
    """Run the whole suite in a fixed order."""
    drift_sign = DriftSign(drift_sign)
    results: list[CheckResult] = []
    results += check_charfn(config.model, drift_sign)
    results.append(check_fft_vs_quad(config, drift_sign))
    results += check_deterministic_limit(config, drift_sign)
    results += check_charfn_vs_mc(config, drift_sign)
    results += check_implied_vol(config)
    failed = sum(not r.passed for r in results)
    logger.info("verify: %d checks, %d failed", len(results), failed)
    return results
