"""Hurwitz zeta jets by Euler-Maclaurin summation; the reference oracle.

``hurwitz_zeta_jet`` expands ``zeta(s, a)`` in powers of ``t = s - s0``::

    zeta(s, a) = sum_{n<N} (n+a)^-s + X^(1-s)/(s-1) + X^-s / 2
                 + sum_{j=1}^M B_2j/(2j)! (s)_(2j-1) X^(-s-2j+1) + R,   X = N + a

with ``s`` carried as a jet. At ``s0 = 1`` (Laurent mode) the pole
``1/(s-1)`` is split off analytically and only the regular part is returned.
Every other representation in the package is validated against the
Stieltjes constants read off from these jets.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

from mpmath import mp, mpf

from .combinatorics import bernoulli
from .kernel.jet import Jet, convolve, exp_log_jet
from .kernel.precision import (
    ConvergenceError,
    DomainError,
    bits_for_digits,
    digits_for_bits,
    log2_factorial,
    to_mpf,
)
from .kernel.quadrature import quadrature
from .specfun import P1, bernoulli_mpf, digamma

METHODS = ("reference", "prop2i", "prop2ii", "prop2iii", "prop4", "addition", "asymptotic", "exp-series")


@dataclass(frozen=True)
class StieltjesValue:
    k: int
    a: mpf
    value: mpf
    err_est: mpf
    method: str = "reference"
    terms_used: int = 0
    digits: int = 0
    flags: tuple = ()

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if not (mp.isfinite(self.err_est) and self.err_est > 0):
            raise ValueError("err_est must be finite and positive")


@dataclass(frozen=True)
class LaurentExpansion:
    """``zeta(s,a) = pole/(s-1) + sum_k (-1)^k gamma_k(a) (s-1)^k / k!``."""

    a: mpf
    gammas: list = field(default_factory=list)
    pole_coeff: mpf = mpf(1)

    def gamma(self, k: int) -> mpf:
        return self.gammas[k].value

    def regular_jet(self) -> Jet:
        return Jet(
            [(-1) ** k * g.value / mp.factorial(k) for k, g in enumerate(self.gammas)],
            mpf(1),
        )


class ZetaJet(Jet):
    """Jet of ``zeta(s, a)`` with the parameters used and an error estimate."""

    __slots__ = ("err_est", "N", "M", "converged")

    def __init__(self, coeffs, center, err_est, N, M, converged=True):
        super().__init__(coeffs, center)
        self.err_est = err_est
        self.N = N
        self.M = M
        self.converged = converged


# ----------------------------------------------------------------------------
# Euler-Maclaurin engine


def _default_N(s0: mpf, a: mpf, K: int, tol_rel: mpf) -> int:
    digits = digits_for_bits(mp.prec)
    n_em = max(0, int(math.ceil(0.7 * digits + 0.5 * K - float(a))))
    if s0 > 1:
        # direct terms alone reach tol once (X/a)^(1-s0) is small
        need = float(-mp.log(tol_rel)) / float(s0 - 1)
        n_dir = max(0, int(math.ceil(float(a) * math.expm1(min(need, 700.0)))))
        return min(n_em, max(1, n_dir))
    return n_em


def _em_pass(s0, K, a, N, M, laurent, tol):
    """One Euler-Maclaurin evaluation; returns (coeffs, err, M_used, ok)."""
    order = K + 1 if laurent else K
    coeffs = [mpf(0)] * (K + 1)
    for n in range(N):
        x = n + a
        lx = mp.log(x)
        base = mp.exp(-s0 * lx)
        term = base
        coeffs[0] += term
        for m in range(1, K + 1):
            term = term * (-lx) / m
            coeffs[m] += term
    X = N + a
    L = mp.log(X)
    Xs = mp.exp(-s0 * L)  # X^-s0
    E = exp_log_jet(L, order)  # X^-t
    e_norm = sum(abs(c) for c in E[: K + 1])

    # Bernoulli corrections, accumulated as a polynomial in t
    Q = [mpf(0)] * (K + 1)
    Q[0] = mpf(1) / 2
    poch = [mpf(0)] * (K + 1)  # (s)_1 = s0 + t
    poch[0] = s0
    if K >= 1:
        poch[1] = mpf(1)
    Xinv2 = 1 / (X * X)
    xpow = X  # X^(-2j+1) for j = 1
    prev_mag = None
    err = None
    M_used = 0
    ok = False
    j = 1
    while True:
        xpow = xpow * Xinv2
        c = bernoulli_mpf(2 * j) / mp.factorial(2 * j) * xpow
        mag = abs(c) * max(abs(p) for p in poch) * Xs * e_norm
        if M is not None:
            if j > M:
                err = 2 * mag
                ok = err <= tol
                break
        else:
            if mag <= tol / 4:
                err = 2 * mag
                ok = True
                break
            if prev_mag is not None and mag > prev_mag:
                err = 2 * prev_mag
                ok = False
                break
        for m in range(K + 1):
            Q[m] += c * poch[m]
        M_used = j
        prev_mag = mag
        # (s)_(2j+1) = (s)_(2j-1) (s + 2j - 1)(s + 2j)
        for shift in (2 * j - 1, 2 * j):
            c0 = s0 + shift
            new = [c0 * poch[0]]
            for m in range(1, K + 1):
                new.append(c0 * poch[m] + poch[m - 1])
            poch = new
        j += 1
        if j > 4000:
            err = 2 * mag
            break

    body = convolve([Xs * e for e in E[: K + 1]], Q)
    for m in range(K + 1):
        coeffs[m] += body[m]

    if laurent:
        # X^(1-s)/(s-1) - 1/(s-1) = sum_{m>=1} (-L)^m / m! t^(m-1)
        for m in range(K + 1):
            coeffs[m] += E[m + 1]
    else:
        recip = Jet([s0 - 1, mpf(1)] + [mpf(0)] * (K - 1) if K >= 1 else [s0 - 1]).reciprocal()
        pole = convolve([X * Xs * e for e in E[: K + 1]], recip.coeffs)
        for m in range(K + 1):
            coeffs[m] += pole[m]
    return coeffs, err, M_used, ok


_JET_CACHE: dict = {}
_JET_LOCK = threading.Lock()
_JET_CACHE_MAX = 50_000


def clear_cache() -> None:
    with _JET_LOCK:
        _JET_CACHE.clear()


def hurwitz_zeta_jet(
    s0,
    K: int,
    a,
    N: int | None = None,
    M: int | None = None,
    *,
    laurent: bool = False,
    tol=None,
) -> ZetaJet:
    """Taylor jet of ``zeta(s, a)`` about ``s0`` through order ``K``.

    ``laurent=True`` requires ``s0 = 1`` and returns the regular part of the
    Laurent expansion (the pole coefficient is exactly 1). ``tol`` is an
    absolute target for the Euler-Maclaurin remainder; by default it is one
    unit in the last place relative to ``a^-s0`` (or 1 for ``s0 <= 1``).
    When ``N`` is not given it is chosen and, if the Bernoulli terms stop
    decreasing before reaching ``tol``, doubled.
    """
    s0 = to_mpf(s0)
    a = to_mpf(a)
    if a <= 0:
        raise DomainError("hurwitz_zeta_jet needs a > 0")
    if laurent and s0 != 1:
        raise DomainError("Laurent mode is only defined about s0 = 1")
    if not laurent and s0 == 1:
        raise DomainError("zeta(s, a) has a pole at s = 1; use laurent=True")
    if K < 0:
        raise ValueError("order must be nonnegative")

    key = None
    if N is None and M is None and tol is None:
        key = (s0, a, mp.prec, laurent)
        with _JET_LOCK:
            hit = _JET_CACHE.get(key)
        if hit is not None and hit.order >= K:
            if hit.order == K:
                return hit
            return ZetaJet(hit.coeffs[: K + 1], hit.center, hit.err_est, hit.N, hit.M, hit.converged)

    scale = mp.power(a, -s0) if s0 > 1 else mpf(1)
    tol = mpf(tol) if tol is not None else mp.ldexp(scale, -mp.prec)
    target = mp.prec
    guard = 12
    n_cur = N if N is not None else _default_N(s0, a, K, tol / scale)
    if s0 < 1:
        guard += int(math.ceil(float(1 - s0) * math.log2(float(n_cur + a) + 2)))
    if laurent:
        guard += int(math.ceil(math.log2(float(n_cur + a) + 2)))

    for _attempt in range(12):
        with mp.workprec(target + guard):
            coeffs, err, M_used, ok = _em_pass(s0, K, a, n_cur, M, laurent, tol)
        if ok or N is not None:
            break
        n_cur = max(2 * n_cur, n_cur + 8)
    else:
        raise ConvergenceError(f"Euler-Maclaurin failed to reach tol for s0={s0}, a={a}")

    rounding = mp.ldexp(mpf(n_cur + 8 + K), -target) * max(scale, mpf(1))
    jet = ZetaJet([+c for c in coeffs], s0, err + rounding, n_cur, M_used, ok)
    if key is not None and ok:
        with _JET_LOCK:
            if len(_JET_CACHE) > _JET_CACHE_MAX:
                _JET_CACHE.clear()
            _JET_CACHE[key] = jet
    return jet


def zeta_value(s, a) -> mpf:
    """Plain value ``zeta(s, a)`` for real ``s != 1``."""
    return hurwitz_zeta_jet(s, 0, a)[0]


def zeta_derivs(s0, a, order: int) -> list:
    """``[zeta(s0,a), zeta'(s0,a), ..., zeta^(order)(s0,a)]`` (s-derivatives)."""
    jet = hurwitz_zeta_jet(s0, order, a)
    return [mp.factorial(m) * jet[m] for m in range(order + 1)]


# ----------------------------------------------------------------------------
# Stieltjes constants from the Laurent jet


def _reference_bits(digits: int, K: int, a: mpf) -> int:
    x_est = 0.7 * digits + K + float(a) + 2
    mag = 0.0
    if a < 1:
        # gamma_k(a) ~ ln^k(a)/a; carry its size as extra relative headroom
        mag = max(0.0, K * math.log2(max(1.0, -math.log(float(a)))) - math.log2(float(a)))
    return bits_for_digits(digits, int(math.ceil(log2_factorial(K) + math.log2(x_est) + mag)) + 10)


def stieltjes_laurent(K: int, a, digits: int) -> LaurentExpansion:
    """``gamma_0(a) .. gamma_K(a)`` to about ``digits`` digits."""
    a = to_mpf(a)
    if a <= 0:
        raise DomainError("stieltjes constants need a > 0")
    out_bits = bits_for_digits(digits)
    wp = _reference_bits(digits, K, a)
    with mp.workprec(wp):
        a_w = to_mpf(a)
        jet = hurwitz_zeta_jet(1, K, a_w, laurent=True)
        raw = []
        for k in range(K + 1):
            fk = mp.factorial(k)
            val = (-1) ** k * fk * jet[k]
            err = fk * jet.err_est + mp.ldexp(abs(val), -wp + 4)
            raw.append((val, err))
    gammas = []
    with mp.workprec(out_bits):
        for k, (val, err) in enumerate(raw):
            v = +val
            e = err + mp.ldexp(abs(v) + 1, -out_bits)
            gammas.append(StieltjesValue(k, +a, v, +e, "reference", jet.N, digits))
    return LaurentExpansion(+a, gammas, mpf(1))


def stieltjes_reference(k: int, a, digits: int) -> StieltjesValue:
    """The oracle value ``gamma_k(a)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return stieltjes_laurent(k, a, digits).gammas[k]


# ----------------------------------------------------------------------------
# derivatives at s = 0 through the periodic Bernoulli integral


def _log_power_over_x_jet(X, p: int, order: int) -> Jet:
    """Jet of ``ln^p(x) / x`` about ``x = X``."""
    var = Jet.linear(mpf(X), mpf(1), order)
    out = var.reciprocal()
    if p:
        out = out * (var.log() ** p)
    return out


def periodic_bernoulli_integral(a, p: int, eps=None) -> mpf:
    """``int_a^oo ln^p(x)/x * P1(x - a) dx``.

    The sawtooth is integrated piecewise between its breakpoints ``a + m``
    up to ``X = a + M``; the remaining tail is closed by repeated integration
    by parts, ``-sum_i B_2i/(2i)! f^(2i-2)(X)``.
    """
    a = to_mpf(a)
    digits = digits_for_bits(mp.prec)
    eps = mpf(eps) if eps is not None else mp.ldexp(mpf(1), -mp.prec - 4)
    M = int(math.ceil(0.45 * digits)) + 4
    total = mpf(0)
    for m in range(M):
        lo = a + m
        shift = lo + mpf(1) / 2

        def f(x, shift=shift):
            return (x - shift) * mp.log(x) ** p / x

        rep = quadrature(f, (lo, lo + 1), eps / M)
        total += rep.value
    X = a + M
    order = 2 * int(math.ceil(0.6 * digits)) + 4
    jet = _log_power_over_x_jet(X, p, order)
    tail = mpf(0)
    prev = None
    tiny = eps
    for i in range(1, order // 2 + 1):
        r = 2 * i - 2
        term = bernoulli_mpf(2 * i) / mp.factorial(2 * i) * mp.factorial(r) * jet[r]
        if prev is not None and abs(term) > abs(prev):
            break
        tail -= term
        if abs(term) < tiny:
            break
        prev = term
    return total + tail


def zeta_deriv_at_zero(j: int, a) -> mpf:
    """``zeta^(j)(0, a)`` (s-derivative) from the closed polynomial part and
    the periodic-Bernoulli integral."""
    if j < 1:
        raise ValueError("j must be >= 1")
    a = to_mpf(a)
    if a <= 0:
        raise DomainError("zeta_deriv_at_zero needs a > 0")
    with mp.workprec(mp.prec + 16):
        la = mp.log(a)
        poly = mpf(0)
        for k in range(j + 1):
            poly += math.comb(j, k) * mp.factorial(j - k) * (-1) ** (k + 1) * la**k
        closed = a * poly + (-1) ** j * la**j / 2
        integral = periodic_bernoulli_integral(a, j - 1)
        return +(closed + (-1) ** j * j * integral)


def aux_constants(digits: int) -> dict:
    """``zeta'(2)``, ``zeta'(-1)`` and ``ln A`` (Glaisher's constant)."""
    with mp.workprec(bits_for_digits(digits, 16)):
        d2 = hurwitz_zeta_jet(2, 1, 1)[1]
        dm1 = hurwitz_zeta_jet(-1, 1, 1)[1]
        log_a = mpf(1) / 12 - dm1
    with mp.workprec(bits_for_digits(digits)):
        return {"zeta_prime_2": +d2, "zeta_prime_m1": +dm1, "log_glaisher": +log_a}


# ----------------------------------------------------------------------------
# independent validation path: real-axis integral with a complex logarithm


def stieltjes_hermite(k: int, a) -> mpf:
    """``gamma_k(a)`` from the integral over ``y > 0`` of
    ``Re[(y/a - i) ln^k(a - iy)] / ((1 + y^2/a^2)(e^(2 pi y) - 1))``."""
    a = to_mpf(a)
    if a <= 0:
        raise DomainError("needs a > 0")
    with mp.workprec(mp.prec + 20):
        la = mp.log(a)
        lead = la**k / (2 * a) - la ** (k + 1) / (k + 1)

        def f(y):
            if y == 0:
                # limit of the integrand at y -> 0
                return (la**k - k * la ** (k - 1) if k else mpf(1)) / (2 * mp.pi * a)
            w = mp.log(mp.mpc(a, -y)) ** k
            num = (y / a) * w.real + w.imag
            return num / ((1 + (y / a) ** 2) * mp.expm1(2 * mp.pi * y))

        rep = quadrature(f, (0, mp.inf), mp.ldexp(mpf(1), -mp.prec + 24))
        return +(lead + 2 / a * rep.value)


def euler_gamma_reference(digits: int) -> mpf:
    with mp.workprec(bits_for_digits(digits)):
        return -digamma(1)


# ----------------------------------------------------------------------------
# summation identities over k


def marichev_sum(n: int, a, digits: int):
    """``sum_k gamma_{k+n}(a)/k!`` with the k-sum cut once terms drop below
    ``10^-digits``; returns ``(value, terms_used)``. The closed form is
    ``(-1)^n [zeta^(n)(0, a) + n!]``."""
    a = to_mpf(a)
    K = max(30, int(1.2 * digits) + n + 10)
    while True:
        lau = stieltjes_laurent(K, a, digits + 5)
        with mp.workprec(bits_for_digits(digits, 16)):
            eps = mpf(10) ** (-digits - 3)
            total = mpf(0)
            small = 0
            for k in range(K - n + 1):
                term = lau.gamma(k + n) / mp.factorial(k)
                total += term
                small = small + 1 if abs(term) < eps else 0
                if small >= 3:
                    return +total, k + 1
        K *= 2
        if K > 4000:
            raise ConvergenceError("k-sum did not settle")


def marichev_closed(n: int, a) -> mpf:
    a = to_mpf(a)
    if n == 0:
        return mpf(1) / 2 - a + 1
    return (-1) ** n * (zeta_deriv_at_zero(n, a) + mp.factorial(n))


@dataclass(frozen=True)
class AIntegralResult:
    j: int
    z: mpf
    value: mpf
    target: mpf
    spread: mpf
    partials: tuple


class _AIntegralEngine:
    """Integrals ``int_delta^1 gamma_k(a) da`` weighted and summed over k, with
    reference Laurent data memoized per quadrature node."""

    def __init__(self, z_max, digits: int):
        self.z_max = float(z_max)
        self.digits = digits
        self.memo: dict = {}

    def gammas(self, a: mpf) -> list:
        key = a
        hit = self.memo.get(key)
        if hit is None:
            u = max(0.0, -float(mp.log(a)))
            # terms (z u)^k / k! peak near e^(zu); cancellation is ~e^(2zu)
            K = int(math.e * self.z_max * u + 2 * self.digits) + 4
            d = self.digits + int(2 * self.z_max * u / math.log(10)) + 6
            lau = stieltjes_laurent(K, a, d)
            hit = [g.value for g in lau.gammas]
            self.memo[key] = hit
        return hit

    def integrand(self, j: int, z: mpf):
        def f(v):
            a = mp.exp(-v)
            g = self.gammas(a)
            total = mpf(0)
            for k in range(j, len(g)):
                total += z**k / mp.factorial(k - j) * g[k]
            return total * a / mp.factorial(j)

        return f


def _fit_limit(deltas, values, z):
    """Constant term of the least-squares fit in ``{1, d^z, d^z ln d, d, d^2}``
    (``d^z`` and ``d`` merge when ``z = 1``)."""
    basis = [lambda d: mpf(1), lambda d: d**z, lambda d: d**z * mp.log(d), lambda d: d * d]
    if z != 1:
        basis.insert(3, lambda d: d)
    A = mp.matrix([[b(d) for b in basis] for d in deltas])
    y = mp.matrix(values)
    sol = mp.lu_solve(A, y) if len(deltas) == len(basis) else mp.qr_solve(A, y)[0]
    return sol[0], len(basis)


def a_integral_sum(j: int, z, digits: int = 10, deltas=None, engine=None) -> AIntegralResult:
    """``(1/j!) sum_{k>=j} z^k/(k-j)! int_delta^1 gamma_k(a) da`` for a ladder
    of ``delta`` values, extrapolated to ``delta -> 0``.

    The integral over ``[0, 1]`` diverges termwise at ``a = 0``; the limit is
    taken from the known form of the ``delta`` dependence. ``spread`` compares
    two overlapping windows of the ladder and serves as an error estimate.
    """
    z = to_mpf(z)
    if z <= 0:
        raise DomainError("needs z > 0")
    if deltas is None:
        deltas = [mpf(10) ** (-e / 2) for e in range(4, 11)]
    deltas = sorted((mpf(d) for d in deltas), reverse=True)
    engine = engine or _AIntegralEngine(max(z, 1), digits)
    with mp.workprec(bits_for_digits(digits, 16)):
        f = engine.integrand(j, z)
        eps = mpf(10) ** (-digits)
        edges = [mpf(0)] + [-mp.log(d) for d in deltas]
        running = mpf(0)
        partials = []
        for lo, hi in zip(edges, edges[1:]):
            rep = quadrature(f, (lo, hi), eps, max_level=10)
            running += rep.value
            partials.append(running)
        width = 5 if z != 1 else 4
        if len(deltas) < width + 1:
            raise ValueError("need at least one more delta than fit parameters")
        first, _ = _fit_limit(deltas[:width], partials[:width], z)
        second, _ = _fit_limit(deltas[-width:], partials[-width:], z)
        target = (-1) ** j / z
        return AIntegralResult(j, z, +second, +target, abs(second - first), tuple(partials))
