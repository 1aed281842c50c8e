"""Quote and surface containers for the normal (Bachelier) vol machinery."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from normalsv.models.pricing import PricingMethod


class BachelierQuote(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    forward: float                      # F = s0 + r T
    strike: float
    maturity: float = Field(gt=0.0)
    rate: float = 0.0
    sigma_n: float = Field(default=0.0, ge=0.0)   # price units per sqrt(year)


@dataclass(frozen=True)
class VolSurface:
    """Prices and normal implied vols on a maturity x strike lattice.

    Row i of ``prices`` / ``implied_vols`` belongs to ``maturities[i]``.
    """

    strikes: np.ndarray
    maturities: np.ndarray
    prices: np.ndarray
    implied_vols: np.ndarray
    method: PricingMethod = PricingMethod.QUAD
    clamped_cells: list[tuple[int, int]] = field(default_factory=list)
    unresolved_cells: list[tuple[int, int]] = field(default_factory=list)   # vol is NaN

    def __post_init__(self) -> None:
        shape = (self.maturities.size, self.strikes.size)
        if self.prices.shape != shape or self.implied_vols.shape != shape:
            raise ValueError(
                f"surface matrices must have shape {shape}, got "
                f"{self.prices.shape} and {self.implied_vols.shape}"
            )
        if np.any(np.diff(self.strikes) <= 0) or np.any(np.diff(self.maturities) <= 0):
            raise ValueError("strikes and maturities must be strictly ascending")

    @property
    def shape(self) -> tuple[int, int]:
        return self.prices.shape

    def rows(self):
        """Yield (strike, maturity, price, implied_vol) in maturity-major order."""
        for i, t in enumerate(self.maturities):
            for j, k in enumerate(self.strikes):
                yield float(k), float(t), float(self.prices[i, j]), float(self.implied_vols[i, j])
