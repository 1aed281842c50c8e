"""Pricing configuration contracts.

These Pydantic models describe *how* a price is computed: the Fourier
grid and damping for the transform pricer, and the simulation controls
for the Monte-Carlo engine.  They carry no model parameters.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from normalsv.config import settings


class DriftSign(str, Enum):
    """Sign of the r*i*omega*tau term in C(tau; omega)."""

    PLUS = "plus"      # martingale-consistent (default)
    MINUS = "minus"    # sign kept for comparison; fails the ODE check


class PricingMethod(str, Enum):
    FFT = "fft"
    QUAD = "quad"
    MC = "mc"


# ------------------------------------------------------------------
# CarrMadanGrid — frequency / strike lattice
# ------------------------------------------------------------------
class CarrMadanGrid(BaseModel):
    """Frequency spacing ``eta``, size ``n`` and centre strike ``k0``.

    lambda_ * eta = 2 pi / n, and ``strikes[n // 2] == k0`` exactly.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    eta: float = Field(default=1.0, gt=0.0)
    n: int = Field(default=4096, ge=2)
    k0: float = 0.0

    @field_validator("n")
    @classmethod
    def _power_of_two(cls, v: int) -> int:
        if v & (v - 1):
            raise ValueError("n must be a power of two")
        return v

    @property
    def lambda_(self) -> float:
        return 2.0 * math.pi / (self.n * self.eta)

    @property
    def half_width(self) -> float:
        return self.n * self.lambda_ / 2.0

    @property
    def frequencies(self) -> np.ndarray:
        return self.eta * np.arange(self.n)

    @property
    def strikes(self) -> np.ndarray:
        # Offsets from k0 keep the centre strike bit-exact.
        return self.k0 + self.lambda_ * (np.arange(self.n) - self.n // 2)


# ------------------------------------------------------------------
# Damping modes
# ------------------------------------------------------------------
class SingleAlpha(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["single"] = "single"
    alpha: float = Field(gt=0.0)

    def values(self) -> np.ndarray:
        return np.array([self.alpha])


class AveragedAlpha(BaseModel):
    """alpha_k = start + k * step for k < count; prices are averaged."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["averaged"] = "averaged"
    start: float = Field(gt=0.0)
    step: float = Field(default=0.1, ge=0.0)
    count: int = Field(default=1, ge=1)

    def values(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)


AlphaMode = Annotated[SingleAlpha | AveragedAlpha, Field(discriminator="kind")]


class FftConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    grid: CarrMadanGrid = Field(default_factory=CarrMadanGrid)
    alpha_mode: AlphaMode = Field(
        default_factory=lambda: SingleAlpha(alpha=settings.DEFAULT_ALPHA)
    )
    weights: Literal["simpson", "trapezoid"] = "simpson"
    clip_alpha: bool = True


# ------------------------------------------------------------------
# Monte-Carlo
# ------------------------------------------------------------------
class McConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    steps: int = Field(default=1000, ge=1)
    paths: int = Field(default_factory=lambda: settings.MC_PATHS, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    repetitions: int = Field(default_factory=lambda: settings.MC_REPETITIONS, ge=1)
    partitions: int = Field(default_factory=lambda: settings.MC_PARTITIONS, ge=1)
    antithetic: bool = False

    @model_validator(mode="after")
    def _antithetic_pairs(self) -> McConfig:
        if self.antithetic and self.paths % 2:
            raise ValueError("antithetic sampling needs an even path count")
        return self


class McResult(BaseModel):
    price: float
    std_error: float = Field(ge=0.0)
    paths_used: int
