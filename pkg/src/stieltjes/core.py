"""Series, asymptotic and closed representations of the Stieltjes constants.

Every routine returns values that can be compared against
``hurwitz.stieltjes_reference``. Hurwitz zeta derivatives ``zeta^(m)(j, a)``
at integer ``j >= 2`` come from the shared jet cache, so families of
representations evaluated at the same ``a`` reuse each other's work.

Precision follows ``TruncationPlan.digits`` (default: the caller's
``mp.dps``); internal sums carry extra guard bits and results are rounded
to ``digits`` plus the package guard.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from mpmath import mp, mpf

from .combinatorics import bernoulli, harmonic, stirling1
from .hurwitz import StieltjesValue, hurwitz_zeta_jet, stieltjes_reference
from .kernel.precision import ConvergenceError, DomainError, bits_for_digits, to_mpf
from .specfun import digamma, erfc, euler_gamma, expint_ei, pfq

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TruncationPlan:
    """``outer_terms`` caps (or, with ``adaptive=False``, fixes) the number of
    terms of a representation's infinite sum; inner Stirling sums are exact.
    ``eps`` is an absolute target for the neglected tail (default: one unit in
    the last requested digit, scaled by the result)."""

    outer_terms: int = 5000
    eps: mpf | None = None
    digits: int | None = None
    adaptive: bool = True

    def __post_init__(self):
        if self.outer_terms < 1:
            raise ValueError("outer_terms must be >= 1")

    def resolved_digits(self) -> int:
        return self.digits if self.digits is not None else mp.dps


DEFAULT_PLAN = TruncationPlan()


@dataclass(frozen=True)
class BoundReport:
    n: int
    a: mpf
    C_value: mpf
    bound_factorial: mpf
    bound_zw: mpf
    bound_proof: mpf
    satisfied: dict

    def __post_init__(self):
        expect = {
            "factorial": abs(self.C_value) <= self.bound_factorial,
            "zw": abs(self.C_value) <= self.bound_zw,
        }
        if {k: self.satisfied.get(k) for k in expect} != expect:
            raise ValueError("satisfied flags must match |C_value| <= bound")


# ----------------------------------------------------------------------------
# helpers


def _zeta_derivs(j: int, a: mpf, order: int) -> list:
    """``zeta^(m)(j, a)`` for ``m = 0..order`` at the current precision."""
    jet = hurwitz_zeta_jet(j, order, a)
    return [mp.factorial(m) * jet[m] for m in range(order + 1)]


def _prepare(plan: TruncationPlan, guard: int = 24):
    digits = plan.resolved_digits()
    out_bits = bits_for_digits(digits)
    return digits, out_bits, out_bits + guard


def _tail_eps(plan: TruncationPlan, out_bits: int, scale=1) -> mpf:
    if plan.eps is not None:
        return mpf(plan.eps)
    return mp.ldexp(max(mpf(1), abs(mpf(scale))), -out_bits - 4)


def _finish(k, a, value, tail, method, terms, digits, out_bits, flags=()) -> StieltjesValue:
    with mp.workprec(out_bits):
        v = +value
        err = abs(tail) + mp.ldexp(abs(v) + 1, -out_bits)
        return StieltjesValue(k, +to_mpf(a), v, +err, method, terms, digits, tuple(flags))


class _Accumulator:
    """Adaptive outer sum: stops after ``window`` consecutive terms below eps
    once the terms are decreasing; the tail estimate is the last term scaled
    by the observed ratio."""

    def __init__(self, eps, plan: TruncationPlan, window: int = 3):
        self.eps = eps
        self.plan = plan
        self.window = window
        self.total = mpf(0)
        self.small = 0
        self.count = 0
        self.last = []

    def add(self, term) -> bool:
        """Add a term; return True when the sum is finished."""
        self.total += term
        self.count += 1
        self.last.append(abs(term))
        if len(self.last) > 4:
            self.last.pop(0)
        if not self.plan.adaptive:
            return self.count >= self.plan.outer_terms
        if abs(term) <= self.eps:
            self.small += 1
        else:
            self.small = 0
        if self.small >= self.window:
            return True
        return self.count >= self.plan.outer_terms

    @property
    def converged(self) -> bool:
        return not self.plan.adaptive or self.small >= self.window

    def tail(self) -> mpf:
        if not self.last:
            return mpf(0)
        big = max(self.last)
        return 4 * big if self.plan.adaptive else 2 * self.last[-1]


def _check_converged(acc: _Accumulator, what: str):
    if not acc.converged:
        raise ConvergenceError(f"{what}: no convergence within {acc.plan.outer_terms} terms")


# ----------------------------------------------------------------------------
# addition formula and derivatives in a


def addition_terms(ell: int, a, b, count: int) -> list:
    """The ``j = 2 .. count+1`` terms of the addition series for ``gamma_ell(a+b)``."""
    a, b = to_mpf(a), to_mpf(b)
    out = []
    for j in range(2, count + 2):
        out.append(_addition_term(ell, a, b, j))
    return out


def _addition_term(ell, a, b, j):
    z = _zeta_derivs(j, a, ell)
    inner = mpf(0)
    for k in range(ell + 1):
        s = stirling1(j, k + 1)
        if s:
            inner += (-1) ** k * math.comb(ell, k) * s * math.factorial(k) * z[ell - k]
    return (-1) ** ell * b ** (j - 1) / mp.factorial(j - 1) * inner


def gamma_addition(ell: int, a, b, plan: TruncationPlan = DEFAULT_PLAN) -> StieltjesValue:
    """``gamma_ell(a + b)`` from ``gamma_ell(a)`` and the Stirling-weighted
    series in ``b`` over ``zeta^(m)(j, a)``, ``j >= 2``; needs ``|b| < a``."""
    a, b = to_mpf(a), to_mpf(b)
    if a <= 0:
        raise DomainError("addition formula needs a > 0")
    if abs(b) >= abs(a):
        raise DomainError("addition formula needs |b| < |a|")
    digits, out_bits, wp = _prepare(plan)
    base = stieltjes_reference(ell, a, digits + 8)
    if b == 0:
        return _finish(ell, a, base.value, base.err_est, "addition", 0, digits, out_bits)
    with mp.workprec(wp):
        eps = _tail_eps(plan, out_bits)
        acc = _Accumulator(eps, plan)
        j = 2
        while True:
            if acc.add(_addition_term(ell, a, b, j)):
                break
            j += 1
        _check_converged(acc, "addition series")
        value = base.value + acc.total
        tail = acc.tail() + base.err_est
    return _finish(ell, a + b, value, tail, "addition", acc.count, digits, out_bits)


def gamma1_addition_harmonic_terms(a, b, count: int) -> list:
    """Terms ``-(-b)^j [zeta'(j+1,a) + H_j zeta(j+1,a)]``, ``j = 1..count``."""
    a, b = to_mpf(a), to_mpf(b)
    out = []
    for j in range(1, count + 1):
        z = _zeta_derivs(j + 1, a, 1)
        h = harmonic(j)
        out.append(-((-b) ** j) * (z[1] + mpf(h.numerator) / h.denominator * z[0]))
    return out


def derivative_coefficients(j: int, ell: int) -> list:
    """Integer weights ``w_k`` with ``gamma_ell^(j)(a) = sum_k w_k zeta^(ell-k)(j+1, a)``."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return [
        (-1) ** (ell + k) * math.factorial(k) * math.comb(ell, k) * stirling1(j + 1, k + 1)
        for k in range(ell + 1)
    ]


def explicit_derivative_coefficients(j: int, ell: int) -> list:
    """The same weights written out for the first three derivatives."""
    sign = (-1) ** (ell + 1) if j % 2 else (-1) ** ell
    falling = [1, ell, ell * (ell - 1), ell * (ell - 1) * (ell - 2)]
    table = {1: [1, 1], 2: [2, 3, 1], 3: [6, 11, 6, 1]}
    if j not in table:
        raise ValueError("explicit forms exist for j = 1, 2, 3")
    w = [0] * (ell + 1)
    for k, c in enumerate(table[j]):
        if k <= ell:
            w[k] = sign * c * falling[k]
    return w


def gamma_derivative(j: int, ell: int, a, digits: int | None = None) -> mpf:
    """``d^j/da^j gamma_ell(a)`` as a finite Stirling sum over ``zeta^(m)(j+1, a)``."""
    a = to_mpf(a)
    if a <= 0:
        raise DomainError("gamma_derivative needs a > 0")
    digits = digits or mp.dps
    out_bits = bits_for_digits(digits)
    w = derivative_coefficients(j, ell)
    with mp.workprec(out_bits + 16):
        z = _zeta_derivs(j + 1, a, ell)
        total = sum((w[k] * z[ell - k] for k in range(ell + 1)), mpf(0))
    with mp.workprec(out_bits):
        return +total


# ----------------------------------------------------------------------------
# expansions about a - 1 and a - 1/2


def _stirling_inner(n: int, p: int, z: list) -> mpf:
    """``sum_m (-1)^m / m! s(p+1, n-m+1) zeta^(m)(p+1, a)``."""
    acc = mpf(0)
    for m in range(n + 1):
        s = stirling1(p + 1, n - m + 1)
        if s:
            acc += (-1) ** m * s * z[m] / mp.factorial(m)
    return acc


def gamma_series_prop2(variant: str, n: int, a, plan: TruncationPlan = DEFAULT_PLAN) -> StieltjesValue:
    """``gamma_n(a)`` from the expansions of ``zeta(s, a)`` about ``a - 1``
    (variant ``i``, a > 1) or ``a - 1/2`` (``ii`` and ``iii``, a > 1/2)."""
    a = to_mpf(a)
    if variant not in ("i", "ii", "iii"):
        raise ValueError("variant must be 'i', 'ii' or 'iii'")
    c = mpf(1) if variant == "i" else mpf(1) / 2
    if a <= c:
        raise DomainError(f"variant {variant} needs a > {c}")
    digits, out_bits, wp = _prepare(plan)
    with mp.workprec(wp):
        fn = mp.factorial(n)
        lead = -mp.log(a - c) ** (n + 1) / (n + 1)
        eps = _tail_eps(plan, out_bits) / max(fn, 1)
        acc = _Accumulator(eps, plan)
        k = 1
        while True:
            if variant == "i":
                term = (-1) ** k / mp.factorial(k + 1) * _stirling_inner(n, k, _zeta_derivs(k + 1, a, n))
                term = -term
            elif variant == "ii":
                p = 2 * k
                term = -_stirling_inner(n, p, _zeta_derivs(p + 1, a, n)) / (mpf(4) ** k * mp.factorial(p + 1))
            else:
                p = 2 * k
                term = (-1) ** k * _stirling_inner(n, p, _zeta_derivs(p + 1, a, n)) / (mpf(4) ** k * mp.factorial(p + 1))
                q = 4 * k
                term -= 2 * _stirling_inner(n, q, _zeta_derivs(q + 1, a, n)) / (mpf(16) ** k * mp.factorial(q + 1))
            if acc.add(term):
                break
            k += 1
        _check_converged(acc, f"variant {variant} series")
        value = lead + fn * acc.total
        tail = fn * acc.tail()
    return _finish(n, a, value, tail, "prop2" + variant, acc.count, digits, out_bits)


# ----------------------------------------------------------------------------
# Euler-Maclaurin type series with a split point N


def _prop4_auto_N(ell: int, a: mpf, digits: int) -> int:
    best, best_work = 1, None
    for N in range(1, 4 * digits + 8):
        R = digits * math.log(10) / math.log(N + float(a) + 1) + ell + 2
        work = R * (N * (ell + 1) + 0.7 * digits + ell) + N
        if best_work is None or work < best_work:
            best, best_work = N, work
    return best


def gamma_series_prop4(ell: int, a, N: int | None = None, plan: TruncationPlan = DEFAULT_PLAN) -> StieltjesValue:
    """``gamma_ell(a)`` from the partial sum up to ``N``, the log-power term and
    the ``r``-series whose brackets are (oracle zeta derivative) minus (the
    same partial sum); ``N=None`` picks the split minimising estimated work.

    For ``a < 1`` the brackets cancel by about ``r log2(1/a)`` bits, so the
    working precision is raised accordingly and the result is flagged slow.
    """
    a = to_mpf(a)
    if a <= 0:
        raise DomainError("needs a > 0")
    digits, out_bits, wp = _prepare(plan)
    if N is None:
        N = _prop4_auto_N(ell, a, digits)
    if N < 0:
        raise DomainError("N must be >= 0")
    flags = []
    R_est = int(math.ceil(digits * math.log(10) / math.log(N + float(a) + 1))) + ell + 8
    if a < 1:
        flags.append("slow")
        wp += int(math.ceil(R_est * math.log2(1 / float(a)))) + 8
        log.info("prop4 at a=%s < 1: convergence is slow, using %d bits", a, wp)
    with mp.workprec(wp):
        logs = [mp.log(n + a) for n in range(N + 1)]
        invs = [1 / (n + a) for n in range(N + 1)]
        head = sum((logs[n] ** ell * invs[n] for n in range(N + 1)), mpf(0))
        head -= logs[N] ** (ell + 1) / (ell + 1)
        pw = [mpf(1)] * (N + 1)  # (n+a)^-r
        for n in range(N + 1):
            pw[n] = invs[n]
        lpow = [[logs[n] ** e for e in range(ell + 1)] for n in range(N + 1)]
        eps = _tail_eps(plan, out_bits)
        acc = _Accumulator(eps, plan)
        r = 2
        while True:
            for n in range(N + 1):
                pw[n] *= invs[n]
            z = _zeta_derivs(r, a, ell)
            inner = mpf(0)
            for k in range(ell + 1):
                s = stirling1(r, k + 1)
                if not s:
                    continue
                partial = sum((lpow[n][ell - k] * pw[n] for n in range(N + 1)), mpf(0))
                bracket = (-1) ** ell * z[ell - k] - (-1) ** k * partial
                inner += (-1) ** k * math.comb(ell, k) * math.factorial(k) * s * bracket
            if acc.add((-1) ** r / mp.factorial(r) * inner):
                break
            r += 1
        _check_converged(acc, "split-point series")
        value = head + acc.total
    return _finish(ell, a, value, acc.tail(), "prop4", acc.count, digits, out_bits, flags)


# ----------------------------------------------------------------------------
# large-a asymptotics


def asymptotic_terms(ell: int, a, count: int) -> list:
    """Bernoulli correction terms ``m = 1..count`` (already carrying their sign)."""
    a = to_mpf(a)
    la = mp.log(a)
    lp = [la**e for e in range(ell + 1)]
    out = []
    apow = mpf(1)
    inv2 = 1 / (a * a)
    for m in range(1, count + 1):
        apow *= inv2
        inner = mpf(0)
        for k in range(ell + 1):
            s = stirling1(2 * m, k + 1)
            if s:
                inner += math.comb(ell, k) * math.factorial(k) * s * lp[ell - k]
        b = bernoulli(2 * m)
        out.append(-mpf(b.numerator) / b.denominator / mp.factorial(2 * m) * apow * inner)
    return out


def gamma_asymptotic(ell: int, a, M: int | None = None, digits: int | None = None):
    """Truncated large-``a`` expansion of ``gamma_ell(a)``.

    Returns ``(value, proxy)`` where ``proxy`` is the magnitude of the first
    omitted term. With ``M=None`` the series is cut just before its smallest
    term (optimal truncation); the series diverges for fixed ``a``.
    """
    a = to_mpf(a)
    if a <= 0:
        raise DomainError("needs a > 0")
    digits = digits or mp.dps
    out_bits = bits_for_digits(digits)
    with mp.workprec(out_bits + 16):
        la = mp.log(a)
        lead = la**ell / (2 * a) - la ** (ell + 1) / (ell + 1)
        if M is None:
            m_max = min(600, int(math.ceil(math.pi * float(a))) + ell + 6)
            terms = asymptotic_terms(ell, a, m_max)
            sizes = [abs(t) for t in terms]
            # ignore accidental near-zeros from sign changes of the inner sum
            smooth = [max(sizes[i:i + 2]) for i in range(len(sizes))]
            cut = min(range(len(smooth)), key=lambda i: smooth[i])
            value = lead + sum(terms[:cut], mpf(0))
            proxy = sizes[cut]
        else:
            terms = asymptotic_terms(ell, a, M + 1)
            value = lead + sum(terms[:M], mpf(0))
            proxy = abs(terms[M])
    with mp.workprec(out_bits):
        return +value, +proxy


# ----------------------------------------------------------------------------
# maximum of gamma_1(a)


def gamma1_prime(a) -> mpf:
    z = _zeta_derivs(2, to_mpf(a), 1)
    return z[1] + z[0]


def gamma1_second(a) -> mpf:
    z = _zeta_derivs(3, to_mpf(a), 1)
    return -(2 * z[1] + 3 * z[0])


def find_gamma1_max(digits: int, lo=1, hi=2):
    """Locate the maximum ``a*`` of ``gamma_1`` on ``[lo, hi]``.

    The root of ``gamma_1'(a) = zeta'(2,a) + zeta(2,a)`` is bracketed by
    bisection, then polished by Newton steps using ``gamma_1''``.
    Returns ``(a_star, gamma_1(a_star))``.
    """
    out_bits = bits_for_digits(digits)
    with mp.workprec(out_bits + 16):
        lo, hi = to_mpf(lo), to_mpf(hi)
        flo, fhi = gamma1_prime(lo), gamma1_prime(hi)
        if flo * fhi > 0:
            raise ConvergenceError("gamma_1' does not change sign on the bracket")
        for _ in range(30):
            mid = (lo + hi) / 2
            fm = gamma1_prime(mid)
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        x = (lo + hi) / 2
        tol = mp.ldexp(mpf(1), -out_bits - 4)
        for _ in range(60):
            step = gamma1_prime(x) / gamma1_second(x)
            x -= step
            if abs(step) < tol:
                break
        else:
            raise ConvergenceError("Newton iteration for a* did not settle")
        if not lo - 1e-6 <= x <= hi + 1e-6:
            raise ConvergenceError("Newton left the bracket")
    g = stieltjes_reference(1, x, digits).value
    with mp.workprec(out_bits):
        return +x, +g


# ----------------------------------------------------------------------------
# theta-function series for gamma and gamma_1


def _series(term, eps, cap=200):
    total = mpf(0)
    for n in range(1, cap + 1):
        t = term(n)
        total += t
        if abs(t) < eps and n >= 2:
            return total, n
    raise ConvergenceError("theta-type series did not converge")


def euler_correction_sums(plan: TruncationPlan = DEFAULT_PLAN):
    """``(sum erfc(sqrt(pi) n)/n, -sum Ei(-pi n^2), terms)``."""
    digits, out_bits, wp = _prepare(plan)
    with mp.workprec(wp):
        eps = _tail_eps(plan, out_bits)
        rp = mp.sqrt(mp.pi)
        s1, n1 = _series(lambda n: erfc(rp * n) / n, eps, plan.outer_terms)
        s2, n2 = _series(lambda n: -expint_ei(-mp.pi * n * n), eps, plan.outer_terms)
        return s1, s2, max(n1, n2)


def gamma_exp_series_euler(plan: TruncationPlan = DEFAULT_PLAN) -> mpf:
    """``gamma / 2`` from erfc and exponential-integral sums."""
    digits, out_bits, wp = _prepare(plan)
    s1, s2, _ = euler_correction_sums(plan)
    with mp.workprec(wp):
        value = s1 + s2 - 1 + mp.log(4 * mp.pi) / 2
    with mp.workprec(out_bits):
        return +value


def gamma1_exp_series(plan: TruncationPlan = DEFAULT_PLAN) -> mpf:
    """``gamma_1`` from 2F2/3F3, erf and Ei sums with Gaussian decay in n."""
    return gamma1_exp_series_terms(plan)[0]


def gamma1_exp_series_terms(plan: TruncationPlan = DEFAULT_PLAN):
    digits, out_bits, wp = _prepare(plan)
    with mp.workprec(wp):
        eps = _tail_eps(plan, out_bits)
        g = euler_gamma()
        psi_h = digamma(mpf(1) / 2)
        lpi = mp.log(mp.pi)
        pi = mp.pi
        rp = mp.sqrt(pi)
        head = pi**2 / 16 + g / 2 * psi_h + psi_h**2 / 8 - 1 + lpi / 2 - lpi**2 / 8
        half = mpf(1) / 2

        def t1(n):
            x = n * n * pi
            f22 = pfq((half, half), (3 * half, 3 * half), -x)
            return -(4 * n * f22 + psi_h - 2 * mp.log(n) - mp.erf(n * rp) * lpi) / (2 * n)

        def t2(n):
            x = n * n * pi
            f33 = pfq((1, 1, 1), (2, 2, 2), -x)
            return (
                g**2 / 4 + pi**2 / 24 - x * f33 / 2 + mp.log(x) * (2 * g + mp.log(x)) / 4
                + lpi * expint_ei(-x) / 2
            )

        s1, n1 = _series(t1, eps, plan.outer_terms)
        s2, n2 = _series(t2, eps, plan.outer_terms)
        value = head + s1 + s2
    with mp.workprec(out_bits):
        return +value, max(n1, n2)


# ----------------------------------------------------------------------------
# magnitude bounds


def bound_factorial(n: int) -> mpf:
    return mp.e * mp.factorial(n) / (mp.sqrt(n) * mpf(2) ** n)


def bound_proof(n: int) -> mpf:
    return mp.e * mpf(n) ** n / (mpf(2) ** n * mp.e**n)


def bound_zw(n: int) -> mpf:
    return (3 + (-1) ** n) * mp.factorial(2 * n) / (mpf(n) ** (n + 1) * (2 * mp.pi) ** n)


def bounds_report(n: int, a, digits: int = 30) -> BoundReport:
    """``C_n(a) = gamma_n(a) - ln^n(a)/a`` against the three magnitude bounds."""
    a = to_mpf(a)
    if not 0 < a <= 1:
        raise DomainError("bounds are stated for 0 < a <= 1")
    if n < 1:
        raise DomainError("bounds are stated for n >= 1")
    with mp.workprec(bits_for_digits(digits)):
        # C_n(a) equals gamma_n(a + 1) exactly; avoids cancelling ln^n(a)/a
        c = stieltjes_reference(n, a + 1, digits).value
        bp, bz, bpr = bound_factorial(n), bound_zw(n), bound_proof(n)
        sat = {"factorial": abs(c) <= bp, "zw": abs(c) <= bz, "proof": abs(c) <= bpr}
        return BoundReport(n, a, c, bp, bz, bpr, sat)


def zw_crossover(n_max: int = 60):
    """Smallest ``n`` from which the Zhang-Williams bound stays below the
    factorial bound up to ``n_max`` (None if never)."""
    cross = None
    for n in range(1, n_max + 1):
        if bound_zw(n) < bound_factorial(n):
            if cross is None:
                cross = n
        else:
            cross = None
    return cross


def gamma_shift(k: int, a, n: int, value) -> mpf:
    """``gamma_k(a + n)`` from ``gamma_k(a)`` by removing the first ``n`` terms."""
    a = to_mpf(a)
    return value - sum((mp.log(a + j) ** k / (a + j) for j in range(n)), mpf(0))
