"""Ser's polynomials and numbers for Euler's constant, Knessl's integral.

``P_{n+1}(y) = (1/n!) int_0^y x (1-x)(2-x)...(n-1-x) dx`` and
``p_{n+1} = P_{n+1}(1)``. Everything polynomial is exact (``Fraction``);
floating point enters only through integrals, logarithms and ``gamma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpf

from .combinatorics import stirling1
from .core import DEFAULT_PLAN, TruncationPlan
from .kernel.jet import Jet
from .kernel.precision import ConvergenceError, DomainError, bits_for_digits, digits_for_bits, to_mpf
from .kernel.quadrature import quadrature
from .specfun import bernoulli_mpf, euler_gamma



@dataclass(frozen=True)
class SerPolynomial:
    """Exact coefficients ``c[i]`` of ``y^i`` in ``P_{n+1}(y)``."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        if self.coeffs[0] != 0:
            raise ValueError("P_{n+1}(0) must vanish")

    def __call__(self, y) -> Fraction:
        y = Fraction(y)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def derivative(self, y) -> Fraction:
        y = Fraction(y)
        acc = Fraction(0)
        for i in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * y + i * self.coeffs[i]
        return acc


@lru_cache(maxsize=None)
def ser_poly(n: int) -> SerPolynomial:
    """Coefficients from the Stirling expansion of ``(-x)_n``."""
    if n < 1:
        raise DomainError("n must be >= 1")
    sign = -1 if n % 2 == 0 else 1  # (-1)^(n+1)
    fact = math.factorial(n)
    coeffs = [Fraction(0)] * (n + 2)
    for k in range(n + 1):
        coeffs[k + 1] = Fraction(sign * stirling1(n, k), (k + 1) * fact)
    return SerPolynomial(n, tuple(coeffs))


def ser_polynomial_stirling(n: int, y) -> Fraction:
    """``P_{n+1}(y)`` as the power sum ``(-1)^(n+1)/n! sum_k s(n,k) y^(k+1)/(k+1)``."""
    return ser_poly(n)(y)


def ser_polynomial_binomial(n: int, y) -> Fraction:
    """``P_{n+1}(y)`` from ``int_0^y x (1-x)^k dx`` weighted by ``s(n-1, k)``."""
    if n < 1:
        raise DomainError("n must be >= 1")
    y = Fraction(y)
    acc = Fraction(0)
    for k in range(1, n + 1):
        s = stirling1(n - 1, k - 1)
        if not s:
            continue
        bracket = ((k - 1) * y + y + 1) * (1 - y) ** (k - 1) * (y - 1) + 1
        acc += (-1) ** k * Fraction(s, k * (k + 1)) * bracket
    return (-1) ** n * acc / math.factorial(n)


def ser_polynomial(n: int, y) -> Fraction:
    """Exact ``P_{n+1}(y)``; both closed forms are evaluated and must agree."""
    a = ser_polynomial_stirling(n, y)
    b = ser_polynomial_binomial(n, y)
    if a != b:
        raise ArithmeticError(f"closed forms disagree at n={n}, y={y}")
    return a


@lru_cache(maxsize=None)
def ser_p(n: int) -> Fraction:
    """``p_{n+1}``, checked against both of its closed forms."""
    if n < 1:
        raise DomainError("n must be >= 1")
    fact = math.factorial(n)
    first = (-1) ** n * sum(
        (-1) ** k * Fraction(stirling1(n - 1, k - 1), k * (k + 1)) for k in range(1, n + 1)
    ) / fact
    second = (-1) ** (n + 1) * sum(Fraction(stirling1(n, k), k + 1) for k in range(1, n + 1)) / fact
    if first != second:
        raise ArithmeticError(f"p_{n + 1} closed forms disagree")
    return first


def _to_mpf(f: Fraction) -> mpf:
    return mpf(f.numerator) / f.denominator


# ----------------------------------------------------------------------------
# remainders r_n^(k) = gamma_k - D_n^(k)


def D_n(n: int, k: int) -> mpf:
    """``sum_{m<=n} ln^k(m)/m - ln^(k+1)(n+1)/(k+1)``."""
    total = sum((mp.log(m) ** k / m for m in range(1, n + 1)), mpf(0))
    return total - mp.log(n + 1) ** (k + 1) / (k + 1)


def I_km(k: int, m: int, eps) -> tuple:
    """``int_0^1 [ln^k(m)/m - ln^k(x+m)/(x+m)] dx`` as the series
    ``-sum_i [(-1)^i ln^k m + (1/i!) sum_j k!/(k-j-1)! s(i+1,j+2) ln^(k-j-1) m]
    / ((i+1) m^(i+1))``; returns ``(value, terms)``.

    The bracketed expansion in powers of ``x`` is that of the reversed
    difference, hence the leading minus sign. The inner dummy index is
    independent of the outer remainder index.
    """
    lm = mp.log(m)
    lp = [lm**e for e in range(k + 1)]
    total = mpf(0)
    mpow = mpf(m)
    small = 0
    fact = mpf(1)
    for i in range(1, 100000):
        mpow *= m
        fact *= i
        bracket = (-1) ** i * lp[k]
        for j in range(k):
            s = stirling1(i + 1, j + 2)
            if s:
                bracket += math.factorial(k) // math.factorial(k - j - 1) * s * lp[k - j - 1] / fact
        term = bracket / ((i + 1) * mpow)
        total += term
        small = small + 1 if abs(term) <= eps * max(abs(total), mp.ldexp(mpf(1), -mp.prec)) else 0
        if small >= 3:
            return -total, i
    raise ConvergenceError("I_km inner series did not converge")


def _g_jet(k: int, X, order: int) -> Jet:
    """Jet at ``X`` of ``g(x) = ln^k x / x - (ln^(k+1)(x+1) - ln^(k+1) x)/(k+1)``."""
    x = Jet.linear(mpf(X), mpf(1), order)
    lx = x.log()
    lx1 = Jet.linear(mpf(X) + 1, mpf(1), order).log()
    head = x.reciprocal() * (lx**k) if k else x.reciprocal()
    return head - (lx1 ** (k + 1) - lx ** (k + 1)) / (k + 1)


def _int_log_power(p: int, lo, hi) -> mpf:
    """``int_lo^hi ln^p x dx`` from the antiderivative ``x sum_j (-1)^(p-j) p!/j! ln^j x``."""
    def anti(x):
        lx = mp.log(x)
        return x * sum(((-1) ** (p - j) * mp.factorial(p) / mp.factorial(j) * lx**j for j in range(p + 1)), mpf(0))

    return anti(hi) - anti(lo)


def _tail_sum_g(k: int, M: int) -> mpf:
    """``sum_{m>=M} g(m)`` by Euler-Maclaurin; ``int_M^oo g`` is closed form."""
    digits = digits_for_bits(mp.prec)
    integral = _int_log_power(k + 1, M, M + 1) / (k + 1) - mp.log(M) ** (k + 1) / (k + 1)
    order = 2 * int(math.ceil(0.6 * digits)) + 4
    jet = _g_jet(k, M, order)
    total = integral + jet[0] / 2
    prev = None
    tiny = mp.ldexp(mpf(1), -mp.prec)
    for i in range(1, order // 2 + 1):
        r = 2 * i - 1
        if r > order:
            break
        term = bernoulli_mpf(2 * i) / mp.factorial(2 * i) * mp.factorial(r) * jet[r]
        if prev is not None and abs(term) > abs(prev):
            break
        total -= term
        if abs(term) < tiny:
            break
        prev = term
    return total


@dataclass(frozen=True)
class Remainder:
    value: mpf
    direct_terms: int
    inner_terms: int
    flags: tuple = ()


def remainder_rnk(n: int, k: int, plan: TruncationPlan = DEFAULT_PLAN) -> Remainder:
    """``r_n^(k)``: double series for ``m = n+1 .. M-1``, then the remaining
    ``m``-sum of the (closed) inner integrals by Euler-Maclaurin."""
    if n < 1 or k < 0:
        raise DomainError("needs n >= 1, k >= 0")
    digits = plan.resolved_digits()
    flags = ("slow",) if n < 3 else ()
    with mp.workprec(bits_for_digits(digits, 16)):
        eps = mp.ldexp(mpf(1), -mp.prec)
        M = max(n + 1, int(math.ceil(0.5 * digits)) + 5)
        total = mpf(0)
        inner = 0
        for m in range(n + 1, M):
            v, t = I_km(k, m, eps)
            total += v
            inner += t
        total += _tail_sum_g(k, M)
    with mp.workprec(bits_for_digits(digits)):
        return Remainder(+total, M - n - 1, inner, flags)


# ----------------------------------------------------------------------------
# Knessl's integral and asymptotics


def _knessl_integrand(n: int):
    def f(z):
        # e^z (1 + e^z)^-n / (z^2 + pi^2), with log1p kept stable for large |z|
        if z > 0:
            lg = z - n * (z + mp.log1p(mp.exp(-z)))
        else:
            lg = z - n * mp.log1p(mp.exp(z))
        return mp.exp(lg) / (z * z + mp.pi**2)

    return f


def knessl_p_integral(n: int, eps=None) -> mpf:
    """``p_{n+1} = int_0^oo (1+u)^-n du / (ln^2 u + pi^2)`` with ``u = e^z``;
    the line is split at the peak ``z = -ln n`` and at ``u = 1``."""
    if n < 1:
        raise DomainError("n must be >= 1")
    eps = mpf(eps) if eps is not None else mp.ldexp(mpf(1), -mp.prec)
    with mp.workprec(mp.prec + 16):
        f = _knessl_integrand(n)
        peak = -mp.log(n)
        # the piece holding the bulk first, so later pieces get an absolute target
        pieces = [(peak, 0), (-mp.inf, peak), (0, mp.inf)] if n > 1 else [(-mp.inf, 0), (0, mp.inf)]
        total = mpf(0)
        for lo, hi in pieces:
            if total:
                rep = quadrature(f, (lo, hi), eps * total / 4, max_level=14)
            else:
                rep = quadrature(f, (lo, hi), eps / 4, relative=True, max_level=14)
            if not rep.converged:
                raise ConvergenceError(f"Knessl integral did not converge on ({lo}, {hi})")
            total += rep.value
    return +total


def knessl_constants(J: int = 2) -> list:
    g = euler_gamma()
    consts = [-2 * g, 3 * g**2 - mp.pi**2 / 2]
    if J > len(consts):
        raise ValueError("only A_1 and A_2 are provided")
    return consts[:J]


def knessl_asymptotic(n: int, J: int = 2) -> mpf:
    """``(1 + sum_{j<=J} A_j / ln^j n) / (n ln^2 n)``."""
    if n < 2:
        raise DomainError("asymptotic form needs n >= 2")
    L = mp.log(n)
    corr = mpf(1) + sum((A / L ** (j + 1) for j, A in enumerate(knessl_constants(J))), mpf(0))
    return corr / (n * L**2)


# ----------------------------------------------------------------------------
# gamma from the line integral and from the p-series


def _euler_integrand(z):
    if z > 0:
        return mp.exp(z) * mp.log1p(mp.exp(-z)) / (z * z + mp.pi**2)
    return mp.exp(z) * (mp.log1p(mp.exp(z)) - z) / (z * z + mp.pi**2)


def euler_gamma_integral(eps=None) -> mpf:
    """``gamma = int e^z ln(1 + e^-z) / (z^2 + pi^2) dz`` over the real line.

    The integrand is positive; it decays like ``|z| e^z`` on the left and only
    like ``1/z^2`` on the right, which the exp-sinh map absorbs.
    """
    eps = mpf(eps) if eps is not None else mp.ldexp(mpf(1), -mp.prec)
    with mp.workprec(mp.prec + 16):
        total = mpf(0)
        for piece in ((-mp.inf, 0), (0, mp.inf)):
            rep = quadrature(_euler_integrand, piece, eps / 2, relative=True, max_level=14)
            if not rep.converged:
                raise ConvergenceError("Euler-constant integral did not converge")
            total += rep.value
    return +total


def p_series_partial(N: int) -> mpf:
    """``sum_{n<=N} p_{n+1}/n`` (exact partial sum, rounded once)."""
    acc = sum((ser_p(n) / n for n in range(1, N + 1)), Fraction(0))
    return _to_mpf(acc)


def p_series_tail_estimate(N: int, upto: int = 10**6) -> mpf:
    """``sum_{n>N} p_{n+1}/n`` from the two-term Knessl form, summed to ``upto``
    and closed by ``int dx / (x^2 ln^2 x)`` beyond."""
    A1, A2 = knessl_constants(2)
    total = mpf(0)
    step_end = min(upto, 20000)
    for n in range(N + 1, step_end + 1):
        L = math.log(n)
        total += (1 + float(A1) / L + float(A2) / L**2) / (n * n * L * L)
    # remaining terms ~ 1/(x^2 ln^2 x): integral estimate
    x = step_end + 0.5
    total += 1 / (x * math.log(x) ** 2)
    return mpf(total)


# ----------------------------------------------------------------------------
# generating-function partial sums


def gf_p_partial(z, terms: int = 150) -> mpf:
    """``sum_{n=1}^terms p_{n+1} z^(n-1)``; compare with ``1/z + 1/ln(1-z)``."""
    z = to_mpf(z)
    return sum((_to_mpf(ser_p(n)) * z ** (n - 1) for n in range(1, terms + 1)), mpf(0))


def gf_p_closed(z) -> mpf:
    z = to_mpf(z)
    return 1 / z + 1 / mp.log(1 - z)


def gf_dP_partial(y, z, terms: int = 150) -> mpf:
    """``sum_n P'_{n+1}(y) z^n`` (compare with ``1 - (1-z)^y``)."""
    z = to_mpf(z)
    return sum((_to_mpf(ser_poly(n).derivative(y)) * z**n for n in range(1, terms + 1)), mpf(0))


def harmonic_dP_partial(y, terms: int = 200) -> tuple:
    """``sum_{n<=terms} P'_{n+1}(y)/n`` and an estimate of the neglected tail.

    ``P'_{n+1}(y) ~ -n^(-y-1)/Gamma(-y)``, so the tail is close to
    ``-terms^(-y-1) / ((y+1) Gamma(-y))``.
    """
    yf = Fraction(y)
    part = sum((ser_poly(n).derivative(yf) / n for n in range(1, terms + 1)), Fraction(0))
    y = _to_mpf(yf)
    tail = -mpf(terms) ** (-y - 1) / ((y + 1) * mp.gamma(-y))
    return _to_mpf(part), tail


def gf_bernoulli_partial(z, terms: int = 150) -> mpf:
    """``sum_{n=2}^terms p_{n+1} (1 - e^z)^(n-1)``; compare with ``1/z - coth(z/2)/2``."""
    z = to_mpf(z)
    w = 1 - mp.exp(z)
    return sum((_to_mpf(ser_p(n)) * w ** (n - 1) for n in range(2, terms + 1)), mpf(0))
