"""Shared data models — the contracts between all components."""

from normalsv.models.params import (
    ModelParams,
    feller_ratio,
    require_finite,
    validate_params,
)
from normalsv.models.pricing import (
    AveragedAlpha,
    CarrMadanGrid,
    DriftSign,
    FftConfig,
    McConfig,
    McResult,
    PricingMethod,
    SingleAlpha,
)
from normalsv.models.run import RunConfig
from normalsv.models.surface import BachelierQuote, VolSurface

__all__ = [
    "ModelParams",
    "feller_ratio",
    "require_finite",
    "validate_params",
    "AveragedAlpha",
    "CarrMadanGrid",
    "DriftSign",
    "FftConfig",
    "McConfig",
    "McResult",
    "PricingMethod",
    "SingleAlpha",
    "RunConfig",
    "BachelierQuote",
    "VolSurface",
]
