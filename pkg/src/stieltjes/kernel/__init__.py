"""Numeric substrate: precision control, jets, summation and quadrature."""

from .bigreal import BigReal, decimal_string
from .jet import Jet, convolve, exp_log_jet, jet_reciprocal_pole
from .precision import (
    ConvergenceError,
    DomainError,
    bits_for_digits,
    extra_precision,
    working_digits,
)
from .quadrature import quadrature
from .summation import STABILITY_WINDOW, SumReport, sum_until_converged

__all__ = [
    "BigReal",
    "ConvergenceError",
    "DomainError",
    "Jet",
    "STABILITY_WINDOW",
    "SumReport",
    "bits_for_digits",
    "convolve",
    "decimal_string",
    "exp_log_jet",
    "extra_precision",
    "jet_reciprocal_pole",
    "quadrature",
    "sum_until_converged",
    "working_digits",
]
