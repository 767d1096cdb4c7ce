"""Stieltjes constants gamma_k(a) to arbitrary precision, with several
independent representations cross-checked against an Euler-Maclaurin oracle."""

from .hurwitz import StieltjesValue, hurwitz_zeta_jet, stieltjes_laurent, stieltjes_reference
from .kernel.precision import ConvergenceError, DomainError

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "StieltjesValue",
    "hurwitz_zeta_jet",
    "stieltjes_laurent",
    "stieltjes_reference",
]
