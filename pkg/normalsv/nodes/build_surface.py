"""Node: build_surface — model prices and normal implied vols on a K x T grid.

Each cell is priced independently (quadrature) or per maturity row (FFT),
then inverted with ``implied_normal_vol`` against F = s0 + r T.  Cells are
written by index, so the surface is identical for any worker count.

Usage:
    from normalsv.nodes.build_surface import build_surface
    surface = build_surface(params, strikes, maturities, PricingMethod.QUAD, fft_cfg)
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numpy.typing import ArrayLike

from normalsv.config import settings
from normalsv.errors import ImpliedVolError, NumericalError, SurfaceCellError
from normalsv.models.params import ModelParams
from normalsv.models.pricing import DriftSign, FftConfig, PricingMethod
from normalsv.models.surface import VolSurface
from normalsv.pricers.bachelier import implied_normal_vol
from normalsv.pricers.transform import admissible_alphas, price_fft, price_quadrature

logger = logging.getLogger(__name__)


def build_surface(
    p: ModelParams,
    strikes: ArrayLike,
    maturities: ArrayLike,
    method: PricingMethod | str = PricingMethod.QUAD,
    cfg: FftConfig | None = None,
    drift_sign: DriftSign | str = DriftSign.PLUS,
) -> VolSurface:
    """Price every (K, T) cell and invert it to a normal implied vol.

    Raises ``SurfaceCellError`` naming the first failing cell.
    """
    method = PricingMethod(method)
    if method is PricingMethod.MC:
        raise ValueError("surfaces are built with 'fft' or 'quad'")
    cfg = cfg or FftConfig()
    k_axis = np.asarray(strikes, dtype=float)
    t_axis = np.asarray(maturities, dtype=float)
    if k_axis.size == 0 or t_axis.size == 0:
        raise ValueError("surface needs at least one strike and one maturity")

    if method is PricingMethod.FFT:
        prices = _fft_prices(p, k_axis, t_axis, cfg, drift_sign)
    else:
        prices = _quad_prices(p, k_axis, t_axis, cfg, drift_sign)

    resolution = (
        settings.FFT_WINDOW_TOL if method is PricingMethod.FFT else settings.INTRINSIC_CLAMP
    )
    vols = np.empty_like(prices)
    clamped: list[tuple[int, int]] = []
    unresolved: list[tuple[int, int]] = []
    for i, t in enumerate(t_axis):
        discount = math.exp(-p.r * t)
        forward = p.forward(t)
        for j, k in enumerate(k_axis):
            intrinsic = discount * max(forward - k, 0.0)
            if intrinsic == 0.0 and abs(prices[i, j]) < resolution:
                # time value below pricer resolution: no vol to recover
                vols[i, j] = math.nan
                unresolved.append((i, j))
                continue
            if intrinsic > 0.0 and intrinsic - resolution <= prices[i, j] < intrinsic:
                prices[i, j] = intrinsic
                clamped.append((i, j))
            try:
                vols[i, j] = implied_normal_vol(prices[i, j], forward, k, t, p.r)
            except ImpliedVolError as exc:
                raise SurfaceCellError(float(k), float(t), str(exc)) from exc

    if clamped:
        logger.warning("clamped %d in-the-money cells to intrinsic value", len(clamped))
    if unresolved:
        logger.warning(
            "%d out-of-the-money cells priced below %g; implied vol left undefined: %s",
            len(unresolved), resolution, unresolved,
        )
    logger.info(
        "built %dx%d %s surface", t_axis.size, k_axis.size, method.value,
    )
    return VolSurface(
        strikes=k_axis,
        maturities=t_axis,
        prices=prices,
        implied_vols=vols,
        method=method,
        clamped_cells=clamped,
        unresolved_cells=unresolved,
    )


def _quad_prices(
    p: ModelParams,
    strikes: np.ndarray,
    maturities: np.ndarray,
    cfg: FftConfig,
    drift_sign: DriftSign | str,
) -> np.ndarray:
    prices = np.empty((maturities.size, strikes.size))
    alphas = [float(admissible_alphas(p, t, cfg)[0]) for t in maturities]

    def cell(index: tuple[int, int]) -> float:
        i, j = index
        try:
            return price_quadrature(p, maturities[i], strikes[j], alphas[i], drift_sign)
        except NumericalError as exc:
            raise SurfaceCellError(float(strikes[j]), float(maturities[i]), str(exc)) from exc

    cells = [(i, j) for i in range(maturities.size) for j in range(strikes.size)]
    with ThreadPoolExecutor(max_workers=settings.worker_count) as pool:
        for (i, j), value in zip(cells, pool.map(cell, cells)):
            prices[i, j] = value
    return prices


def _fft_prices(
    p: ModelParams,
    strikes: np.ndarray,
    maturities: np.ndarray,
    cfg: FftConfig,
    drift_sign: DriftSign | str,
) -> np.ndarray:
    prices = np.empty((maturities.size, strikes.size))
    for i, t in enumerate(maturities):
        row = price_fft(p, float(t), cfg, drift_sign)
        for j, k in enumerate(strikes):
            try:
                prices[i, j] = row.at(float(k))
            except NumericalError as exc:
                raise SurfaceCellError(float(k), float(t), str(exc)) from exc
    return prices


def smile_minimum_strike(s: VolSurface, maturity_index: int) -> float:
    """Strike of the lowest implied vol in one maturity row (lower strike on ties).

    Unresolved and clamped cells carry no smile information and are skipped.
    """
    row = np.array(s.implied_vols[maturity_index], dtype=float)
    if row.size < 3:
        raise ValueError(f"smile needs at least 3 strikes, got {row.size}")
    for i, j in (*s.clamped_cells, *s.unresolved_cells):
        if i == maturity_index:
            row[j] = math.nan
    if np.all(np.isnan(row)):
        raise ValueError(f"no resolved cell in maturity row {maturity_index}")
    return float(s.strikes[int(np.nanargmin(row))])
