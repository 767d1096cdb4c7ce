"""Working-precision management on top of the global mpmath context."""

from __future__ import annotations

import contextlib
import math
from fractions import Fraction

from mpmath import mp

#: Guard bits added on top of the bits needed for the requested decimal digits.
GUARD_BITS = 32


class DomainError(ValueError):
    """Argument outside the region where a representation is valid."""


class ConvergenceError(RuntimeError):
    """A sum, quadrature or root search did not reach its tolerance."""


def bits_for_digits(digits: int, extra: int = 0) -> int:
    return int(math.ceil(digits * math.log2(10))) + GUARD_BITS + int(extra)


def digits_for_bits(bits: int) -> int:
    return max(1, int((bits - GUARD_BITS) / math.log2(10)))


@contextlib.contextmanager
def working_digits(digits: int, extra_bits: int = 0):
    """Run the block at ``digits`` decimal digits plus guard bits."""
    with mp.workprec(bits_for_digits(digits, extra_bits)):
        yield mp.prec


@contextlib.contextmanager
def extra_precision(bits: int):
    """Temporarily raise the current precision by ``bits``."""
    with mp.workprec(mp.prec + max(0, int(bits))):
        yield mp.prec


def ulp_scale() -> "mp.mpf":
    """2^-prec at the current working precision."""
    return mp.ldexp(mp.mpf(1), -mp.prec)


def log2_factorial(n: int) -> float:
    return math.lgamma(n + 1) / math.log(2)


# strings and rationals are parsed this finely so later rounding is the caller's
PARSE_BITS = 1024


def to_mpf(x) -> "mp.mpf":
    """Convert without rounding an existing ``mpf`` to the ambient precision.

    Decimal strings and ``Fraction`` values are parsed at ``PARSE_BITS`` (or
    the working precision, if higher), so ``"0.3"`` means 0.3 to far more
    digits than any computation here uses.
    """
    if isinstance(x, mp.mpf):
        return x
    with mp.workprec(max(mp.prec, PARSE_BITS)):
        if isinstance(x, Fraction):
            return mp.mpf(x.numerator) / x.denominator
        return mp.mpf(x)
