"""Carr–Madan transform pricer for European calls.

The damped call c(K) = exp(alpha K) C(K) has the Fourier transform

    psi_T(v) = exp(-r T) phi_T(v - i alpha) / (alpha + i v)^2

and the call is recovered by the one-sided inversion

    C(K) = exp(-alpha K) / pi * int_0^inf Re[exp(-i v K) psi_T(v)] dv.

``price_fft`` evaluates the inversion on the whole strike lattice of a
``CarrMadanGrid`` with one radix-2 FFT per damping exponent;
``price_quadrature`` integrates it adaptively for a single strike and is
the reference the FFT path is checked against.

Usage:
    from normalsv.pricers.transform import price_fft, price_quadrature
    grid_prices = price_fft(params, 1.0, FftConfig())
    grid_prices.at(0.0)
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from numpy.typing import ArrayLike

from normalsv.config import settings
from normalsv.errors import DampingError, QuadratureError, StrikeWindowError
from normalsv.models.params import ModelParams, require_finite
from normalsv.models.pricing import CarrMadanGrid, DriftSign, FftConfig, SingleAlpha
from normalsv.pricers.bachelier import integrated_variance
from normalsv.pricers.charfn import char_fn
from normalsv.pricers.dft import dft
from normalsv.pricers.quadrature import adaptive_simpson

logger = logging.getLogger(__name__)

_ALPHA_SEARCH_MAX = 1e4
_EPS = float(np.finfo(float).eps)
_IMAGE_SAFETY = 2.0
_IMAGE_DAMPING_GAP = 20.0         # e-folds of extra decay over one image offset
_IMAGE_BOUND_FRACTION = 0.9


# ------------------------------------------------------------------
# StrikePrices — output of the FFT pricer
# ------------------------------------------------------------------
@dataclass(frozen=True)
class StrikePrices:
    """FFT call prices on a strike lattice.

    ``error_bound`` is the estimated absolute pricing error per strike and
    ``valid_from`` the first index of the strike suffix where that estimate
    stays within ``settings.FFT_WINDOW_TOL``.  Prices below it are returned
    for inspection but ``at`` refuses them.
    """

    strikes: np.ndarray
    prices: np.ndarray
    alphas: np.ndarray
    error_bound: np.ndarray | None = None
    valid_from: int = 0

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return zip(self.strikes.tolist(), self.prices.tolist())

    def __len__(self) -> int:
        return self.strikes.size

    @property
    def window(self) -> tuple[float, float] | None:
        if self.valid_from >= self.strikes.size:
            return None
        return float(self.strikes[self.valid_from]), float(self.strikes[-1])

    def at(self, strike: float) -> float:
        return interpolate_strike(self, strike)


# ------------------------------------------------------------------
# Damping admissibility
# ------------------------------------------------------------------
def explosion_time(p: ModelParams, alpha: float) -> float:
    """Time at which E[exp(alpha x(tau))] becomes infinite (inf if never).

    Along u = -i alpha the Riccati equation for D is real:
    D' = (sigma^2/2) D^2 - m D + alpha^2/2 with m = b - rho sigma alpha.
    """
    m = p.b - p.rho * p.sigma * alpha
    disc = m * m - (p.sigma * alpha) ** 2
    if disc >= 0.0:
        if m >= 0.0:
            return math.inf
        root = math.sqrt(disc)
        if root == 0.0:
            return -2.0 / m
        return math.log((-m + root) / (-m - root)) / root
    beta = math.sqrt(-disc)
    return 2.0 * (0.5 * math.pi + math.atan(m / beta)) / beta


def critical_alpha(p: ModelParams, maturity: float) -> float:
    """Largest alpha with E[exp(alpha x(T))] finite; inf when unbounded."""
    if explosion_time(p, _ALPHA_SEARCH_MAX) > maturity:
        return math.inf
    lo, hi = 0.0, _ALPHA_SEARCH_MAX
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if explosion_time(p, mid) > maturity:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * hi:
            break
    return lo


def admissible_alphas(p: ModelParams, maturity: float, cfg: FftConfig) -> np.ndarray:
    """Damping exponents actually used by ``price_fft``."""
    alphas = cfg.alpha_mode.values()
    bound = critical_alpha(p, maturity)
    safe = settings.MAX_ALPHA_FRACTION * bound

    if isinstance(cfg.alpha_mode, SingleAlpha):
        alpha = float(alphas[0])
        if alpha >= bound:
            raise DampingError(
                f"alpha={alpha:g} is beyond the moment-explosion bound {bound:.6g} "
                f"for T={maturity:g}"
            )
        if alpha > safe:
            logger.warning(
                "alpha=%g is close to the moment-explosion bound %.6g; "
                "expect aliasing error", alpha, bound,
            )
        return alphas

    if not cfg.clip_alpha:
        return alphas
    keep = alphas <= safe
    if not np.any(keep):
        raise DampingError(
            f"every alpha in the averaging grid exceeds {safe:.6g} "
            f"({settings.MAX_ALPHA_FRACTION:g} x bound {bound:.6g})"
        )
    if not np.all(keep):
        logger.warning(
            "dropped %d of %d alphas above %.6g (moment-explosion bound %.6g)",
            int((~keep).sum()), alphas.size, safe, bound,
        )
    return alphas[keep]


# ------------------------------------------------------------------
# Transform and weights
# ------------------------------------------------------------------
def damped_transform_psi(
    p: ModelParams,
    v: ArrayLike,
    alpha: float,
    maturity: float,
    drift_sign: DriftSign | str = DriftSign.PLUS,
) -> np.ndarray:
    """psi_T(v) = exp(-r T) phi_T(v - i alpha) / (alpha + i v)^2."""
    vv = np.asarray(v, dtype=float)
    z = alpha + 1j * vv
    phi = char_fn(p, vv - 1j * alpha, maturity, drift_sign)
    return math.exp(-p.r * maturity) * phi / (z * z)


def simpson_weights(n: int, eta: float) -> np.ndarray:
    """w_j = eta/3 [3 + (-1)^j - delta_{j-1}], j = 1 .. n."""
    if n < 2:
        raise ValueError("need n >= 2")
    j = np.arange(1, n + 1)
    weights = 3.0 + np.where(j % 2 == 0, 1.0, -1.0)
    weights[0] -= 1.0
    return eta / 3.0 * weights


def trapezoid_weights(n: int, eta: float) -> np.ndarray:
    weights = np.full(n, eta)
    weights[0] = 0.5 * eta
    return weights


# ------------------------------------------------------------------
# Pricers
# ------------------------------------------------------------------
def _quadrature_weights(kind: str, n: int, eta: float) -> np.ndarray:
    if kind == "simpson":
        return simpson_weights(n, eta)
    return trapezoid_weights(n, eta)


def alias_images(kind: str, eta: float) -> list[tuple[float, float]]:
    """(strike offset, weight) of the periodic images folded into the FFT sum.

    The trapezoid sum repeats with period 2 pi / eta; Simpson's alternating
    correction adds a one-third image at half that period.  The first entry
    is the image nearest in strike.
    """
    if kind == "simpson":
        return [(math.pi / eta, 1.0 / 3.0), (2.0 * math.pi / eta, 1.0)]
    return [(2.0 * math.pi / eta, 1.0)]


def _invert(psi: np.ndarray, alpha: float, grid: CarrMadanGrid, weights: np.ndarray) -> np.ndarray:
    phase = np.exp(1j * grid.frequencies * (grid.half_width - grid.k0)) * weights
    with np.errstate(over="ignore", invalid="ignore"):
        prices = (np.exp(-alpha * grid.strikes) / math.pi * dft(phase * psi)).real
    return require_finite(prices, f"FFT prices at alpha={alpha:g}", DampingError)


def _image_reference(
    p: ModelParams,
    maturity: float,
    grid: CarrMadanGrid,
    weights: np.ndarray,
    offset: float,
    alpha_max: float,
    drift_sign: DriftSign | str,
) -> np.ndarray:
    """|C(K + offset)| for every lattice strike K, priced with heavier damping."""
    alpha = alpha_max + _IMAGE_DAMPING_GAP / offset
    bound = critical_alpha(p, maturity)
    if math.isfinite(bound):
        alpha = max(alpha_max, min(alpha, _IMAGE_BOUND_FRACTION * bound))
    shifted = grid.model_copy(update={"k0": grid.k0 + offset})
    psi = damped_transform_psi(p, shifted.frequencies, alpha, maturity, drift_sign)
    psi = require_finite(psi, f"psi at alpha={alpha:g}", DampingError)
    return np.abs(_invert(psi, alpha, shifted, weights))


def _error_bound(
    p: ModelParams,
    maturity: float,
    grid: CarrMadanGrid,
    kind: str,
    alpha: float,
    terms: np.ndarray,
    upper_reference: np.ndarray,
) -> np.ndarray:
    """Estimated |FFT price - C(K)| per strike for one damping exponent.

    Sums FFT round-off, the frequency tail beyond the last node and the
    images at K - offset and K + offset.  Images below K are bounded by
    the intrinsic value plus one standard deviation of x(T); the nearest
    image above K uses ``upper_reference``.
    """
    strikes = grid.strikes
    images = alias_images(kind, grid.eta)
    discount = math.exp(-p.r * maturity)
    spread = math.sqrt(max(integrated_variance(p, maturity), 0.0))
    v_last = grid.eta * (grid.n - 1)

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        damp = np.exp(-alpha * strikes) / math.pi
        roundoff = damp * _EPS * math.log2(grid.n) * float(np.abs(terms).sum())
        truncation = damp * abs(complex(terms[-1])) / grid.eta * v_last
        lower = np.zeros(grid.n)
        for offset, weight in images:
            intrinsic = np.maximum(p.forward(maturity) - strikes + offset, 0.0)
            lower += weight * math.exp(-alpha * offset) * discount * (intrinsic + spread)
        offset, weight = images[0]
        upper = _IMAGE_SAFETY * weight * np.exp(alpha * offset + np.log(upper_reference))
        bound = roundoff + truncation + lower + upper
    return np.nan_to_num(bound, nan=np.inf)


def price_fft(
    p: ModelParams,
    maturity: float,
    cfg: FftConfig,
    drift_sign: DriftSign | str = DriftSign.PLUS,
) -> StrikePrices:
    """Call prices on the full strike lattice of ``cfg.grid``.

    With an averaged damping mode the returned prices are the arithmetic
    mean over the admissible alphas, and so is the error estimate.  The
    strike window is the suffix of the lattice where the estimate stays
    within ``settings.FFT_WINDOW_TOL``; in-the-money strikes below it are
    dominated by the exp(-alpha K) growth of round-off and images.
    """
    if maturity <= 0:
        raise ValueError("maturity must be positive")
    grid = cfg.grid
    weights = _quadrature_weights(cfg.weights, grid.n, grid.eta)
    alphas = admissible_alphas(p, maturity, cfg)
    offset, _ = alias_images(cfg.weights, grid.eta)[0]
    upper_reference = _image_reference(
        p, maturity, grid, weights, offset, float(alphas.max()), drift_sign
    )

    total = np.zeros(grid.n)
    error = np.zeros(grid.n)
    for alpha in alphas:
        psi = damped_transform_psi(p, grid.frequencies, alpha, maturity, drift_sign)
        psi = require_finite(psi, f"psi at alpha={alpha:g}", DampingError)
        total += _invert(psi, alpha, grid, weights)
        error += _error_bound(
            p, maturity, grid, cfg.weights, alpha, weights * psi, upper_reference
        )
    error /= alphas.size

    rejected = np.flatnonzero(~(error <= settings.FFT_WINDOW_TOL))
    valid_from = int(rejected[-1]) + 1 if rejected.size else 0
    result = StrikePrices(
        strikes=grid.strikes,
        prices=total / alphas.size,
        alphas=alphas,
        error_bound=error,
        valid_from=valid_from,
    )

    window = result.window
    if window is None:
        logger.warning(
            "FFT error estimate exceeds %g at every strike (N=%d, eta=%g, alpha<=%g); "
            "increase alpha or reduce eta",
            settings.FFT_WINDOW_TOL, grid.n, grid.eta, float(alphas.max()),
        )
    else:
        logger.info(
            "FFT priced %d strikes (N=%d, eta=%g, %d alphas); valid window [%g, %g]",
            grid.n, grid.n, grid.eta, alphas.size, window[0], window[1],
        )
    return result


def _truncation_point(psi, start: float, cutoff: float) -> float:
    upper = start
    while abs(complex(psi(np.array([upper]))[0])) >= cutoff:
        upper *= 2.0
        if upper > 2.0**20 * start:
            raise QuadratureError(f"|psi| stays above {cutoff:g} up to v={upper:g}")
    return upper


def price_quadrature(
    p: ModelParams,
    maturity: float,
    strike: float,
    alpha: float,
    drift_sign: DriftSign | str = DriftSign.PLUS,
) -> float:
    """Single-strike reference price by adaptive Simpson integration."""
    if maturity <= 0 or alpha <= 0:
        raise ValueError("maturity and alpha must be positive")
    bound = critical_alpha(p, maturity)
    if alpha >= bound:
        raise DampingError(
            f"alpha={alpha:g} is beyond the moment-explosion bound {bound:.6g}"
        )

    def psi(v: np.ndarray) -> np.ndarray:
        return damped_transform_psi(p, v, alpha, maturity, drift_sign)

    def integrand(v: np.ndarray) -> np.ndarray:
        return (np.exp(-1j * v * strike) * psi(v)).real

    upper = _truncation_point(psi, settings.QUAD_V_START, settings.QUAD_PSI_CUTOFF)
    integral, evals = adaptive_simpson(
        integrand,
        0.0,
        upper,
        abs_tol=settings.QUAD_ABS_TOL,
        max_evals=settings.QUAD_MAX_EVALS,
        initial_panels=settings.QUAD_INITIAL_PANELS,
    )
    logger.debug("quadrature K=%g: v_max=%g, %d evaluations", strike, upper, evals)
    return math.exp(-alpha * strike) / math.pi * integral


def interpolate_strike(prices: StrikePrices, strike: float) -> float:
    """Linear interpolation on the strike lattice; exact at grid points.

    Raises ``StrikeWindowError`` for strikes off the lattice or below its
    valid window.
    """
    window = prices.window
    if window is None or not window[0] <= strike <= window[1]:
        raise StrikeWindowError(strike, window)
    return float(np.interp(strike, prices.strikes, prices.prices))


def put_from_call(call: float, p: ModelParams, maturity: float, strike: float) -> float:
    """Put price by parity: P = C - exp(-r T) (s0 + r T - K)."""
    return call - math.exp(-p.r * maturity) * (p.forward(maturity) - strike)
