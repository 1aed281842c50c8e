"""Monte-Carlo engine for the normal-SV model.

Full-truncation Euler on a uniform grid dt = T / steps:

    v+      = max(v, 0)
    v_{k+1} = v_k + (a - b v+) dt + sigma sqrt(v+ dt) Z2
    x_{k+1} = x_k + r dt + sqrt(v+ dt) Z1,        Z2 = rho Z1 + sqrt(1 - rho^2) Zp

The drift of x is deterministic and is added once as r T at the end, so a
zero-variance run returns s0 + r T exactly.

Paths are split into ``repetitions * partitions`` chunks.  Chunk ``i`` draws
from ``numpy.random.default_rng(seed + i)`` (PCG64; normals by the ziggurat
method), and per-chunk moment accumulators are merged in chunk order, so a
run is reproducible for a given (seed, paths, repetitions, partitions) no
matter how many worker threads execute it.

Usage:
    from normalsv.pricers.mc import price_mc
    result = price_mc(params, 1.0, 0.0, McConfig(steps=500, paths=100_000))
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from normalsv.config import settings
from normalsv.models.params import ModelParams, feller_ratio
from normalsv.models.pricing import McConfig, McResult

logger = logging.getLogger(__name__)


# ------------------------------------------------------------------
# Moment accumulators
# ------------------------------------------------------------------
@dataclass(frozen=True)
class Moments:
    """Count, mean and centred sum of squares of a sample."""

    n: int
    mean: float
    m2: float

    @classmethod
    def of(cls, samples: np.ndarray) -> Moments:
        if samples.size == 0:
            return cls(0, 0.0, 0.0)
        # Shifting by the first sample keeps a constant sample exactly constant.
        shift = float(samples[0])
        centred = samples - shift
        mean_c = math.fsum(centred.tolist()) / samples.size
        m2 = math.fsum(((centred - mean_c) ** 2).tolist())
        return cls(samples.size, shift + mean_c, m2)

    def merge(self, other: Moments) -> Moments:
        if other.n == 0:
            return self
        if self.n == 0:
            return other
        n = self.n + other.n
        delta = other.mean - self.mean
        mean = self.mean + delta * other.n / n
        m2 = self.m2 + other.m2 + delta * delta * self.n * other.n / n
        return Moments(n, mean, m2)

    @property
    def std_error(self) -> float:
        if self.n < 2:
            return 0.0
        return math.sqrt(self.m2 / (self.n - 1) / self.n)


def _pool(parts: Sequence[Moments]) -> Moments:
    total = Moments(0, 0.0, 0.0)
    for part in parts:
        total = total.merge(part)
    return total


# ------------------------------------------------------------------
# Path simulation
# ------------------------------------------------------------------
def _chunk_sizes(cfg: McConfig) -> list[int]:
    """Paths per chunk, repetition-major.  Antithetic chunks stay even."""
    unit = 2 if cfg.antithetic else 1
    units = cfg.paths // unit
    base, extra = divmod(units, cfg.partitions)
    per_rep = [unit * (base + (1 if i < extra else 0)) for i in range(cfg.partitions)]
    return per_rep * cfg.repetitions


def _simulate_chunk(
    p: ModelParams, maturity: float, steps: int, size: int, seed: int, antithetic: bool
) -> np.ndarray:
    """Terminal x(T) for one chunk.  Antithetic halves are [Z, -Z]."""
    rng = np.random.default_rng(seed)
    dt = maturity / steps
    drawn = size // 2 if antithetic else size
    rho_perp = math.sqrt(max(0.0, 1.0 - p.rho * p.rho))

    noise = np.zeros(size)
    v = np.full(size, p.v0)
    for _ in range(steps):
        z1 = rng.standard_normal(drawn)
        zp = rng.standard_normal(drawn)
        if antithetic:
            z1 = np.concatenate([z1, -z1])
            zp = np.concatenate([zp, -zp])
        z2 = p.rho * z1 + rho_perp * zp
        v_pos = np.maximum(v, 0.0)
        scale = np.sqrt(v_pos * dt)
        noise += scale * z1
        v = v + (p.a - p.b * v_pos) * dt + p.sigma * scale * z2
    return p.forward(maturity) + noise


def _check_inputs(p: ModelParams, maturity: float) -> None:
    if maturity <= 0:
        raise ValueError("maturity must be positive")
    ratio = feller_ratio(p)
    if ratio < 1.0:
        logger.warning(
            "Feller condition violated (2a/sigma^2 = %.3g); variance is truncated at 0",
            ratio,
        )


def _map_chunks(
    p: ModelParams,
    maturity: float,
    cfg: McConfig,
    reduce: Callable[[np.ndarray], object],
) -> list:
    sizes = _chunk_sizes(cfg)

    def run(index: int):
        x = _simulate_chunk(
            p, maturity, cfg.steps, sizes[index], cfg.seed + index, cfg.antithetic
        )
        return reduce(x)

    with ThreadPoolExecutor(max_workers=settings.worker_count) as pool:
        return list(pool.map(run, range(len(sizes))))


def simulate_terminal(p: ModelParams, maturity: float, cfg: McConfig) -> np.ndarray:
    """All ``paths * repetitions`` terminal spots, in chunk order."""
    _check_inputs(p, maturity)
    return np.concatenate(_map_chunks(p, maturity, cfg, lambda x: x))


def _pair_average(values: np.ndarray, antithetic: bool) -> np.ndarray:
    if not antithetic:
        return values
    half = values.size // 2
    return 0.5 * (values[:half] + values[half:])


# ------------------------------------------------------------------
# Estimators
# ------------------------------------------------------------------
def price_mc_strikes(
    p: ModelParams, maturity: float, strikes: Sequence[float], cfg: McConfig
) -> list[McResult]:
    """Call prices for several strikes from one set of paths."""
    _check_inputs(p, maturity)
    strike_arr = [float(k) for k in strikes]

    def reduce(x: np.ndarray) -> list[Moments]:
        return [
            Moments.of(_pair_average(np.maximum(x - k, 0.0), cfg.antithetic))
            for k in strike_arr
        ]

    chunks = _map_chunks(p, maturity, cfg, reduce)
    discount = math.exp(-p.r * maturity)
    results = []
    for j in range(len(strike_arr)):
        pooled = _pool([chunk[j] for chunk in chunks])
        results.append(
            McResult(
                price=discount * pooled.mean,
                std_error=discount * pooled.std_error,
                paths_used=cfg.paths * cfg.repetitions,
            )
        )
    logger.info(
        "MC priced %d strikes (steps=%d, paths=%d x %d)",
        len(strike_arr), cfg.steps, cfg.paths, cfg.repetitions,
    )
    return results


def price_mc(p: ModelParams, maturity: float, strike: float, cfg: McConfig) -> McResult:
    """Discounted sample mean of (x(T) - K)+ with its pooled standard error."""
    return price_mc_strikes(p, maturity, [strike], cfg)[0]


def estimate_charfn_mc(
    p: ModelParams, u: float, maturity: float, cfg: McConfig
) -> tuple[complex, float]:
    """Sample mean of exp(i u x(T)); the error combines both components."""
    _check_inputs(p, maturity)

    def reduce(x: np.ndarray) -> tuple[Moments, Moments]:
        phase = u * x
        return (
            Moments.of(_pair_average(np.cos(phase), cfg.antithetic)),
            Moments.of(_pair_average(np.sin(phase), cfg.antithetic)),
        )

    chunks = _map_chunks(p, maturity, cfg, reduce)
    re = _pool([c[0] for c in chunks])
    im = _pool([c[1] for c in chunks])
    std_error = math.hypot(re.std_error, im.std_error)
    return complex(re.mean, im.mean), std_error
