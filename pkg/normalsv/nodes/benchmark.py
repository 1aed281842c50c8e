"""Node: benchmark — wall-clock comparison of FFT and Monte-Carlo pricing.

For each (N, steps) pair the same strike set is priced once with an FFT of
size N and once with a simulation of ``steps`` time steps.  Only the
ordering of the two timings is meaningful; absolute seconds depend on the
machine.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass

import numpy as np

from normalsv.models.pricing import CarrMadanGrid, DriftSign
from normalsv.models.run import RunConfig
from normalsv.pricers.bachelier import integrated_variance
from normalsv.pricers.mc import price_mc_strikes
from normalsv.pricers.transform import price_fft

logger = logging.getLogger(__name__)

BENCH_HEADER = ("method", "n_or_ts", "strikes", "seconds")


@dataclass
class BenchRow:
    method: str
    size: int
    strikes: int
    seconds: float

    def to_row(self) -> list[object]:
        return [self.method, self.size, self.strikes, self.seconds]


def bench_strikes(config: RunConfig) -> list[float]:
    """Configured strikes, or ``n_strikes`` points within half a std-dev of F."""
    if config.bench.strikes is not None:
        return list(config.bench.strikes)
    forward = config.model.forward(config.maturity)
    half = 0.5 * math.sqrt(max(integrated_variance(config.model, config.maturity), 0.0))
    return np.linspace(forward - half, forward + half, config.bench.n_strikes).tolist()


def run_benchmark(
    config: RunConfig, drift_sign: DriftSign | str = DriftSign.PLUS
) -> tuple[list[BenchRow], list[bool]]:
    """Return timing rows (fft, mc per pair) and the fft-faster flag per pair."""
    strikes = bench_strikes(config)
    base = config.fft_config(strikes)
    rows: list[BenchRow] = []
    faster: list[bool] = []

    for n, steps in config.bench.pairs:
        fft_cfg = base.model_copy(
            update={"grid": CarrMadanGrid(eta=base.grid.eta, n=n, k0=base.grid.k0)}
        )
        started = time.perf_counter()
        grid_prices = price_fft(config.model, config.maturity, fft_cfg, drift_sign)
        for k in strikes:
            grid_prices.at(k)
        fft_seconds = time.perf_counter() - started

        mc_cfg = config.mc.model_copy(update={"steps": steps})
        started = time.perf_counter()
        price_mc_strikes(config.model, config.maturity, strikes, mc_cfg)
        mc_seconds = time.perf_counter() - started

        rows.append(BenchRow("fft", n, len(strikes), fft_seconds))
        rows.append(BenchRow("mc", steps, len(strikes), mc_seconds))
        faster.append(fft_seconds < mc_seconds)
        logger.info("N=%d: fft %.4fs, ts=%d: mc %.4fs", n, fft_seconds, steps, mc_seconds)

    return rows, faster
