"""Special functions at the working precision.

Digamma/polygamma and the hypergeometric series are implemented here; the
incomplete gamma function, erf and log-gamma are taken from mpmath.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Sequence

from mpmath import mp, mpf

from .combinatorics import bernoulli
from .kernel.precision import DomainError, digits_for_bits, extra_precision, to_mpf

_BERN_MPF: dict = {}
_BERN_MPF_LOCK = threading.Lock()


def bernoulli_mpf(j: int) -> mpf:
    """``B_j`` rounded to the current precision (cached)."""
    key = (j, mp.prec)
    with _BERN_MPF_LOCK:
        v = _BERN_MPF.get(key)
    if v is None:
        b = bernoulli(j)
        v = mpf(b.numerator) / b.denominator
        with _BERN_MPF_LOCK:
            _BERN_MPF[key] = v
    return v


def _shift_threshold(m: int = 0) -> int:
    return max(10, int(0.4 * digits_for_bits(mp.prec)) + 1) + m


def digamma(a) -> mpf:
    """psi(a) for a > 0 by upward recurrence and the asymptotic series."""
    a = to_mpf(a)
    if a <= 0:
        raise DomainError("digamma implemented for a > 0 only")
    with extra_precision(10):
        x = a
        acc = mpf(0)
        thr = _shift_threshold()
        while x < thr:
            acc -= 1 / x
            x += 1
        inv2 = 1 / (x * x)
        s = mp.log(x) - 1 / (2 * x)
        pw = mpf(1)
        tiny = mp.ldexp(abs(s), -mp.prec)
        prev = None
        for k in range(1, 10 * thr):
            pw *= inv2
            term = bernoulli_mpf(2 * k) / (2 * k) * pw
            if prev is not None and abs(term) > abs(prev):
                break
            s -= term
            if abs(term) < tiny:
                break
            prev = term
        return +(acc + s)


def polygamma(m: int, a) -> mpf:
    """psi^(m)(a), a > 0."""
    if m == 0:
        return digamma(a)
    a = to_mpf(a)
    if a <= 0:
        raise DomainError("polygamma implemented for a > 0 only")
    with extra_precision(10):
        sign = 1 if (m + 1) % 2 == 0 else -1  # (-1)^(m+1)
        fm = mp.factorial(m)
        x = a
        acc = mpf(0)
        thr = _shift_threshold(m)
        while x < thr:
            # psi^(m)(x) = psi^(m)(x+1) - (-1)^m m! x^(-m-1)
            acc += sign * fm / x ** (m + 1)
            x += 1
        s = mp.factorial(m - 1) / x**m + fm / (2 * x ** (m + 1))
        inv2 = 1 / (x * x)
        pw = 1 / x**m
        tiny = mp.ldexp(abs(s), -mp.prec)
        prev = None
        for k in range(1, 10 * thr):
            pw *= inv2
            term = bernoulli_mpf(2 * k) * mp.factorial(2 * k + m - 1) / mp.factorial(2 * k) * pw
            if prev is not None and abs(term) > abs(prev):
                break
            s += term
            if abs(term) < tiny:
                break
            prev = term
        return +(acc + sign * s)


def loggamma(a) -> mpf:
    return mp.loggamma(a)


def euler_gamma() -> mpf:
    return -digamma(1)


def erf(x) -> mpf:
    return mp.erf(x)


def erfc(x) -> mpf:
    return mp.erfc(x)


def incomplete_gamma(alpha, x) -> mpf:
    """Upper incomplete gamma ``Gamma(alpha, x)`` for x > 0."""
    x = to_mpf(x)
    if x <= 0:
        raise DomainError("incomplete_gamma needs x > 0")
    return mp.gammainc(alpha, x)


def expint_ei(z) -> mpf:
    """Exponential integral Ei(z) for z < 0, as ``-Gamma(0, -z)``."""
    z = to_mpf(z)
    if z >= 0:
        raise DomainError("Ei is only provided for negative arguments")
    return -incomplete_gamma(0, -z)


# generalized hypergeometric series ------------------------------------------


@dataclass(frozen=True)
class HypergeometricSpec:
    upper: tuple
    lower: tuple
    argument: mpf

    def __post_init__(self):
        for b in self.lower:
            b = to_mpf(b)
            if b <= 0 and b == int(b):
                raise DomainError(f"lower parameter {b} is a nonpositive integer")


def cancellation_guard_bits(x) -> int:
    """Bits lost summing an alternating series whose peak term is ~e^|x|."""
    x = to_mpf(x)
    if x >= 0:
        return 0
    return int(math.ceil(1.5 * float(-x) * math.log2(math.e)))


def pfq(spec: HypergeometricSpec | Sequence, lower: Sequence | None = None, x=None) -> mpf:
    """Sum ``sum_k prod (a_i)_k / prod (b_j)_k x^k / k!``.

    Accepts either a ``HypergeometricSpec`` or ``pfq(upper, lower, x)``.
    """
    if not isinstance(spec, HypergeometricSpec):
        spec = HypergeometricSpec(tuple(spec), tuple(lower), to_mpf(x))
    ups = [mpf(u) for u in spec.upper]
    lows = [to_mpf(b) for b in spec.lower]
    x = mpf(spec.argument)
    if x == 0:
        return mpf(1)
    p, q = len(ups), len(lows)
    if p > q + 1 or (p == q + 1 and abs(x) >= 1):
        raise DomainError("series diverges for these parameters")
    with extra_precision(cancellation_guard_bits(x) + 10):
        term = mpf(1)
        total = mpf(1)
        k = 0
        tiny = mp.ldexp(mpf(1), -mp.prec)
        peak = float(abs(x)) + 2
        while True:
            num = x
            for u in ups:
                num *= u + k
            den = mpf(k + 1)
            for b in lows:
                den *= b + k
            term = term * num / den
            total += term
            k += 1
            if term == 0:
                break
            if k > peak and abs(term) <= tiny * abs(total):
                break
            if k > 100000:
                raise RuntimeError("pfq series failed to converge")
    return +total


def hyp1f1(a, b, x) -> mpf:
    return pfq((a,), (b,), x)


def theta3(q) -> mpf:
    """Jacobi theta ``1 + 2 sum_{n>=1} q^(n^2)`` for 0 < q < 1."""
    q = to_mpf(q)
    if not 0 < q < 1:
        raise DomainError("theta3 needs 0 < q < 1")
    total = mpf(0)
    tiny = mp.ldexp(mpf(1), -mp.prec - 4)
    n = 1
    while True:
        term = q ** (n * n)
        total += term
        if term < tiny:
            break
        n += 1
    return 1 + 2 * total


def P1(t) -> mpf:
    """First periodic Bernoulli function ``t - floor(t) - 1/2``."""
    t = to_mpf(t)
    return t - mp.floor(t) - mpf(1) / 2


# parameter derivative of the incomplete gamma function ---------------------


def dalpha_zero_series(x) -> mpf:
    """``sum_{j>=1} (1 - j ln x) (-x)^j / (j^3 (j-1)!)`` by direct summation."""
    x = to_mpf(x)
    with extra_precision(cancellation_guard_bits(-x) + 10):
        lx = mp.log(x)
        total = mpf(0)
        pw = mpf(1)  # (-x)^j / (j-1)!
        tiny = mp.ldexp(mpf(1), -mp.prec)
        j = 1
        while True:
            pw = pw * (-x) / (j - 1) if j > 1 else -x
            term = (1 - j * lx) * pw / mpf(j) ** 3
            total += term
            if j > float(x) + 2 and abs(term) <= tiny * max(abs(total), 1):
                break
            j += 1
    return +total


def incomplete_gamma_dalpha(alpha, x) -> mpf:
    """``d/d alpha Gamma(alpha, x)`` via the 1F1/2F2 representation.

    At ``alpha = 0`` the 1/alpha^2 singularities cancel; the limit is taken
    analytically, with the remaining series closed in terms of 3F3.
    """
    x = to_mpf(x)
    if x <= 0:
        raise DomainError("incomplete_gamma_dalpha needs x > 0")
    alpha = to_mpf(alpha)
    if alpha == 0:
        with extra_precision(20):
            g = euler_gamma()
            lx = mp.log(x)
            series = -x * pfq((1, 1, 1), (2, 2, 2), -x) + (g + incomplete_gamma(0, x) + lx) * lx
            return +(g**2 / 2 + mp.pi**2 / 12 - lx**2 / 2 + series)
    if alpha < 0 and alpha == int(alpha):
        raise DomainError("alpha must not be a negative integer")
    with extra_precision(20):
        psi = digamma(alpha) if alpha > 0 else mp.digamma(alpha)
        lead = mp.gamma(alpha) * psi
        f11 = pfq((alpha,), (alpha + 1,), -x)
        f22 = pfq((alpha, alpha), (alpha + 1, alpha + 1), -x)
        return +(lead + x**alpha / alpha**2 * (-alpha * mp.log(x) * f11 + f22))
