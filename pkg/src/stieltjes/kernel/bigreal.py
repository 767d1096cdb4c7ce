"""Real numbers carrying a precision and a running error bound.

``BigReal`` is a thin value type used where results cross module boundaries
(reports, StieltjesValue). Inner loops work on raw ``mpf`` for speed.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import libmp, mp, mpf

from .precision import bits_for_digits

# Relative rounding charged per operation: 2^(-prec + ROUNDING_GUARD).
ROUNDING_GUARD = 1


def _coerce(x) -> mpf:
    return x if isinstance(x, mpf) else mpf(x)


@dataclass(frozen=True)
class BigReal:
    value: mpf
    precision_bits: int
    err_est: mpf = mpf(0)

    def __post_init__(self):
        if self.precision_bits <= 0:
            raise ValueError("precision_bits must be positive")
        if self.err_est < 0:
            raise ValueError("err_est must be nonnegative")

    @classmethod
    def from_value(cls, x, prec: int | None = None, err=0) -> "BigReal":
        prec = prec or mp.prec
        with mp.workprec(prec):
            v = mp.mpf(x)
        return cls(v, prec, mpf(err))

    @classmethod
    def from_digits(cls, text: str, digits: int) -> "BigReal":
        return cls.from_value(text, bits_for_digits(digits))

    def _round_err(self, v: mpf, prec: int) -> mpf:
        return abs(v) * mp.ldexp(mpf(1), -prec + ROUNDING_GUARD)

    def _binary(self, other, op, err_fn) -> "BigReal":
        if not isinstance(other, BigReal):
            other = BigReal.from_value(other, self.precision_bits)
        prec = min(self.precision_bits, other.precision_bits)
        with mp.workprec(prec):
            v = op(self.value, other.value)
            err = err_fn(self, other) + self._round_err(v, prec)
        return BigReal(v, prec, err)

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y, lambda s, o: s.err_est + o.err_est)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y, lambda s, o: s.err_est + o.err_est)

    def __rsub__(self, other):
        return BigReal.from_value(other, self.precision_bits) - self

    def __mul__(self, other):
        return self._binary(
            other,
            lambda x, y: x * y,
            lambda s, o: abs(s.value) * o.err_est + abs(o.value) * s.err_est + s.err_est * o.err_est,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, BigReal):
            other = BigReal.from_value(other, self.precision_bits)
        lo = abs(other.value) - other.err_est
        if lo <= 0:
            raise ZeroDivisionError("divisor interval contains zero")

        def err(s, o):
            # |x/y - x'/y'| <= (|x| e_y + |y| e_x) / (|y| (|y| - e_y))
            return (abs(s.value) * o.err_est + abs(o.value) * s.err_est) / (abs(o.value) * lo)

        return self._binary(other, lambda x, y: x / y, err)

    def __neg__(self):
        return BigReal(-self.value, self.precision_bits, self.err_est)

    def __abs__(self):
        return BigReal(abs(self.value), self.precision_bits, self.err_est)

    def __float__(self):
        return float(self.value)

    def contains(self, x) -> bool:
        return abs(_coerce(x) - self.value) <= self.err_est

    def to_decimal(self, digits: int) -> str:
        return decimal_string(self.value, digits)


def decimal_string(x, digits: int) -> str:
    """``digits`` significant digits, trailing zeros kept."""
    x = _coerce(x)
    return libmp.to_str(x._mpf_, int(digits), strip_zeros=False)
