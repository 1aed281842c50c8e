"""RunConfig — the JSON document every CLI command reads.

Example (Table 1):

    {
      "model": {"s0": -0.001, "r": 0.0, "a": 5e-7, "b": 1.0,
                "sigma": 0.25, "rho": -0.09, "v0": 0.09},
      "maturity": 1.0,
      "strikes": [-0.0005, 0.0, 0.0005],
      "fft": {"eta": 1.0, "n": 32768,
              "alpha_grid": {"start": 5.0, "step": 0.1, "count": 500}},
      "mc": {"steps": 50000, "paths": 200000, "repetitions": 20, "seed": 7}
    }

Unknown keys are rejected at every level.
"""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from normalsv.config import settings
from normalsv.models.params import ModelParams
from normalsv.models.presets import FIGURE_MATURITY_RANGE, FIGURE_STRIKE_RANGE, TABLE2_PAIRS
from normalsv.models.pricing import (
    AveragedAlpha,
    CarrMadanGrid,
    FftConfig,
    McConfig,
    PricingMethod,
    SingleAlpha,
)

_STRICT = ConfigDict(frozen=True, extra="forbid")


class AlphaGridSection(BaseModel):
    model_config = _STRICT

    start: float = Field(gt=0.0)
    step: float = Field(default=0.1, ge=0.0)
    count: int = Field(default=1, ge=1)


class FftSection(BaseModel):
    model_config = _STRICT

    eta: float = Field(default=1.0, gt=0.0)
    n: int = Field(default=4096, ge=2)
    k0: float | None = None
    alpha: float | None = Field(default=None, gt=0.0)
    alpha_grid: AlphaGridSection | None = None
    weights: str = Field(default="simpson", pattern="^(simpson|trapezoid)$")
    clip_alpha: bool = True

    @field_validator("n")
    @classmethod
    def _power_of_two(cls, v: int) -> int:
        if v & (v - 1):
            raise ValueError("n must be a power of two")
        return v

    @model_validator(mode="after")
    def _one_damping_mode(self) -> FftSection:
        if self.alpha is not None and self.alpha_grid is not None:
            raise ValueError("give either 'alpha' or 'alpha_grid', not both")
        return self

    def build(self, model: ModelParams, strikes: list[float]) -> FftConfig:
        """Resolve defaults against the model scale and requested strikes."""
        ordered = sorted(strikes) if strikes else [model.s0]
        k0 = self.k0 if self.k0 is not None else ordered[len(ordered) // 2]
        if self.alpha_grid is not None:
            mode = AveragedAlpha(**self.alpha_grid.model_dump())
        else:
            mode = SingleAlpha(alpha=self.alpha or default_alpha(model, ordered))
        return FftConfig(
            grid=CarrMadanGrid(eta=self.eta, n=self.n, k0=k0),
            alpha_mode=mode,
            weights=self.weights,
            clip_alpha=self.clip_alpha,
        )


def default_alpha(model: ModelParams, strikes: list[float]) -> float:
    """5.0 at bp scale, 1.5 for unit-scale assets."""
    span = max(strikes) - min(strikes) if strikes else 0.0
    if max(abs(model.s0), span) > settings.UNIT_SCALE_THRESHOLD:
        return settings.DEFAULT_ALPHA_UNIT_SCALE
    return settings.DEFAULT_ALPHA


class SurfaceSection(BaseModel):
    model_config = _STRICT

    strikes: list[float] | None = None
    maturities: list[float] | None = None
    strike_range: tuple[float, float] = FIGURE_STRIKE_RANGE
    maturity_range: tuple[float, float] = FIGURE_MATURITY_RANGE
    n_strikes: int = Field(default_factory=lambda: settings.SURFACE_STRIKES, ge=1)
    n_maturities: int = Field(default_factory=lambda: settings.SURFACE_MATURITIES, ge=1)
    method: PricingMethod = PricingMethod.QUAD

    @model_validator(mode="after")
    def _no_mc_surfaces(self) -> SurfaceSection:
        if self.method is PricingMethod.MC:
            raise ValueError("surface method must be 'fft' or 'quad'")
        return self

    def strike_axis(self) -> np.ndarray:
        if self.strikes is not None:
            return np.asarray(self.strikes, dtype=float)
        return np.linspace(*self.strike_range, self.n_strikes)

    def maturity_axis(self) -> np.ndarray:
        if self.maturities is not None:
            return np.asarray(self.maturities, dtype=float)
        return np.linspace(*self.maturity_range, self.n_maturities)


class BenchSection(BaseModel):
    model_config = _STRICT

    pairs: list[tuple[int, int]] = Field(default_factory=lambda: list(TABLE2_PAIRS))
    strikes: list[float] | None = None
    n_strikes: int = Field(default=20, ge=1)


class VerifySection(BaseModel):
    model_config = _STRICT

    drift_rate: float = 0.02
    charfn_points: list[float] = Field(default_factory=lambda: [1.0, 5.0])
    fft_strikes: list[float] = Field(default_factory=lambda: [-0.0005, 0.0, 0.0005])
    fft_eta: float = Field(default=0.25, gt=0.0)
    fft_tolerance: float = 1e-5
    mc_steps: int = Field(default=200, ge=1)
    mc_paths: int = Field(default=50_000, ge=2)
    mc_repetitions: int = Field(default=2, ge=1)
    roundtrip_quotes: int = Field(default=1000, ge=1)


class RunConfig(BaseModel):
    model_config = _STRICT

    model: ModelParams
    maturity: float = Field(default=1.0, gt=0.0)
    strikes: list[float] = Field(default_factory=lambda: [0.0])
    fft: FftSection = Field(default_factory=FftSection)
    mc: McConfig = Field(default_factory=McConfig)
    surface: SurfaceSection = Field(default_factory=SurfaceSection)
    bench: BenchSection = Field(default_factory=BenchSection)
    verify: VerifySection = Field(default_factory=VerifySection)

    def fft_config(self, strikes: list[float] | None = None) -> FftConfig:
        return self.fft.build(self.model, strikes if strikes is not None else self.strikes)
