"""Exception hierarchy.

Each family maps onto one CLI exit code (see ``normalsv.main``):

    VerificationFailure  -> 1
    ConfigError          -> 2
    NumericalError       -> 3
    OutputError          -> 3
"""

from __future__ import annotations


class NormalSVError(Exception):
    """Base class for all package errors."""

    exit_code: int = 3


class ConfigError(NormalSVError):
    exit_code = 2


class NumericalError(NormalSVError):
    exit_code = 3


class DampingError(NumericalError):
    """Damping exponent outside the range where the transform exists."""


class StrikeWindowError(NumericalError):
    """Strike outside the range where FFT prices meet the error tolerance."""

    def __init__(self, strike: float, window: tuple[float, float] | None):
        self.strike = strike
        self.window = window
        where = "no strike" if window is None else f"[{window[0]:g}, {window[1]:g}]"
        super().__init__(f"strike {strike:g} outside the valid FFT window {where}")


class QuadratureError(NumericalError):
    pass


class ImpliedVolError(NumericalError):
    pass


class SurfaceCellError(NumericalError):
    def __init__(self, strike: float, maturity: float, reason: str):
        self.strike = strike
        self.maturity = maturity
        super().__init__(f"cell (K={strike:g}, T={maturity:g}): {reason}")


class OutputError(NormalSVError):
    exit_code = 3

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"cannot write {path}: {reason}")


class VerificationFailure(NormalSVError):
    exit_code = 1
