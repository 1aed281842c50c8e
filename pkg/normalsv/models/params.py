"""Model parameter set and the numeric conventions shared by every pricer.

The SDE pair priced throughout the package:

    dx = r dt + sqrt(v) dz1
    dv = (a - b v) dt + sigma sqrt(v) dz2,     d<z1, z2> = rho dt

Variance ``v`` is an absolute variance (price^2 per year); strikes and prices
share the units of ``s0``.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field

from normalsv.errors import NumericalError


# ------------------------------------------------------------------
# ModelParams — SDE coefficients
# ------------------------------------------------------------------
class ModelParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    s0: float                              # initial spot, may be negative
    r: float = 0.0                         # forward-measure drift
    a: float = Field(ge=0.0)               # CIR drift constant
    b: float = Field(gt=0.0)               # mean-reversion rate
    sigma: float = Field(gt=0.0)           # vol of variance
    rho: float = Field(ge=-1.0, le=1.0)
    v0: float = Field(ge=0.0)              # initial variance

    @property
    def long_run_variance(self) -> float:
        return self.a / self.b

    def forward(self, maturity: float) -> float:
        return self.s0 + self.r * maturity


def validate_params(raw: ModelParams | Mapping[str, Any]) -> ModelParams:
    """Return validated parameters or raise ``pydantic.ValidationError``.

    The error message names the offending field.  Validating an already
    validated value returns an equal value.
    """
    data = raw.model_dump() if isinstance(raw, BaseModel) else dict(raw)
    return ModelParams.model_validate(data)


def feller_ratio(p: ModelParams) -> float:
    """2a / sigma^2.  Below 1 the variance process can reach zero."""
    return 2.0 * p.a / p.sigma**2


def require_finite(
    values: ArrayLike, what: str, error: type[NumericalError] = NumericalError
) -> np.ndarray:
    """Reject NaN/Inf before they reach a downstream sum."""
    arr = np.asarray(values)
    if not np.all(np.isfinite(arr)):
        raise error(f"non-finite values in {what}")
    return arr
