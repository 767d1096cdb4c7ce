"""Lipschitz-Lerch coefficients, Dirichlet L Laurent data, reflection sums.

For a rational phase ``x = p/q`` the transcendent
``L(x, s, a) = sum_n e^(2 pi i n x) (n+a)^-s`` splits into Hurwitz pieces::

    L(p/q, s, a) = q^-s sum_{r<q} w^r zeta(s, (a+r)/q),   w = e^(2 pi i p/q)

and the poles cancel because the roots of unity sum to zero. The
coefficients ``ell_n(x, a)`` are defined by
``L(x, s, a) = sum_n (-1)^n ell_n(x, a) (s-1)^n / n!``; they are complex in
general and returned as ``mpc``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpc, mpf

from .combinatorics import stirling1
from .core import DEFAULT_PLAN, TruncationPlan, gamma_series_prop2
from .hurwitz import hurwitz_zeta_jet
from .kernel.jet import convolve, exp_log_jet
from .kernel.precision import ConvergenceError, DomainError, bits_for_digits, to_mpf
from .specfun import digamma, euler_gamma, loggamma, polygamma


@dataclass(frozen=True)
class RationalPhase:
    p: int
    q: int

    def __post_init__(self):
        if self.q <= 0:
            raise DomainError("q must be positive")
        if math.gcd(self.p, self.q) != 1:
            raise DomainError("phase must be in lowest terms")
        if not 0 < self.p < self.q:
            raise DomainError("integral phases reduce to Hurwitz zeta; need 0 < p < q")

    @classmethod
    def parse(cls, x) -> "RationalPhase":
        """Accept ``Fraction``, ``"p/q"`` or a terminating decimal string; reduce mod 1."""
        f = Fraction(x) if not isinstance(x, Fraction) else x
        f = f - math.floor(f)
        if f == 0:
            raise DomainError("integral phases reduce to Hurwitz zeta")
        return cls(f.numerator, f.denominator)

    def root(self, r: int = 1) -> mpc:
        """``exp(2 pi i r p / q)``, exact for the quarter turns."""
        turn = Fraction(r * self.p, self.q) % 1
        exact = {Fraction(0): mpc(1, 0), Fraction(1, 4): mpc(0, 1),
                 Fraction(1, 2): mpc(-1, 0), Fraction(3, 4): mpc(0, -1)}
        if turn in exact:
            return exact[turn]
        return mp.expjpi(2 * mpf(turn.numerator) / turn.denominator)


# ----------------------------------------------------------------------------
# jets of L(x, s, a)


def _lerch_jet(x: RationalPhase, s0: int, order: int, a: mpf) -> list:
    """Taylor coefficients of ``L(x, s, a)`` about ``s = s0`` (integer >= 1)."""
    q = x.q
    lq = mp.log(q)
    total = [mpc(0)] * (order + 1)
    for r in range(q):
        jet = hurwitz_zeta_jet(s0, order, (a + r) / q, laurent=(s0 == 1))
        w = x.root(r)
        for m in range(order + 1):
            total[m] += w * jet[m]
    scale = exp_log_jet(lq, order, mp.power(q, -s0))
    return convolve(scale, total)


def ell_coeffs(K: int, x, a) -> list:
    """``ell_0(x, a) .. ell_K(x, a)``."""
    x = x if isinstance(x, RationalPhase) else RationalPhase.parse(x)
    a = to_mpf(a)
    if a <= 0:
        raise DomainError("needs a > 0")
    with mp.workprec(mp.prec + 20):
        c = _lerch_jet(x, 1, K, a)
        out = [(-1) ** n * mp.factorial(n) * c[n] for n in range(K + 1)]
    return [+v for v in out]


def ell_coeff(n: int, x, a) -> mpc:
    return ell_coeffs(n, x, a)[n]


def alternating_explicit(n: int, a) -> mpf:
    """``ell_n(1/2, a)`` from ``2^-s [zeta(s, a/2) - zeta(s, (a+1)/2)]``."""
    a = to_mpf(a)
    with mp.workprec(mp.prec + 20):
        j1 = hurwitz_zeta_jet(1, n, a / 2, laurent=True)
        j2 = hurwitz_zeta_jet(1, n, (a + 1) / 2, laurent=True)
        diff = [j1[m] - j2[m] for m in range(n + 1)]
        c = convolve(exp_log_jet(mp.log(2), n, mpf(1) / 2), diff)
        return +((-1) ** n * mp.factorial(n) * c[n])


def quarter_explicit(n: int, a) -> mpc:
    """``ell_n(1/4, a)`` from the four-term Hurwitz combination, real and
    imaginary parts assembled separately."""
    a = to_mpf(a)
    with mp.workprec(mp.prec + 20):
        z = [hurwitz_zeta_jet(1, n, (a + r) / 4, laurent=True) for r in range(4)]
        re = [z[0][m] - z[2][m] for m in range(n + 1)]
        im = [z[1][m] - z[3][m] for m in range(n + 1)]
        scale = exp_log_jet(mp.log(4), n, mpf(1) / 4)
        cr, ci = convolve(scale, re), convolve(scale, im)
        f = (-1) ** n * mp.factorial(n)
        return mpc(+(f * cr[n]), +(f * ci[n]))


def _lerch_derivs(x: RationalPhase, s0: int, order: int, a: mpf) -> list:
    c = _lerch_jet(x, s0, order, a)
    return [mp.factorial(j) * c[j] for j in range(order + 1)]


def _klusch_inner(n: int, k: int, derivs: list) -> mpc:
    acc = mpc(0)
    for j in range(n + 1):
        s = stirling1(k, n - j + 1)
        if s:
            acc += (-1) ** j * math.comb(n, j) * math.factorial(n - j) * s * derivs[j]
    return acc


def ell_addition(n: int, x, a, xi, plan: TruncationPlan = DEFAULT_PLAN) -> mpc:
    """``ell_n(x, a + xi)`` from ``ell_n(x, a)`` and the series in ``xi`` over
    s-derivatives of ``L(x, s, a)`` at ``s = 2, 3, ...``; needs ``|xi| < a``."""
    x = x if isinstance(x, RationalPhase) else RationalPhase.parse(x)
    a, xi = to_mpf(a), to_mpf(xi)
    if a <= 0 or abs(xi) >= a:
        raise DomainError("needs a > 0 and |xi| < a")
    digits = plan.resolved_digits()
    with mp.workprec(bits_for_digits(digits, 24)):
        base = ell_coeff(n, x, a)
        if xi == 0:
            return base
        eps = mp.ldexp(mpf(1), -bits_for_digits(digits) - 4)
        total = mpc(0)
        small = 0
        for k in range(2, plan.outer_terms + 2):
            term = xi ** (k - 1) / mp.factorial(k - 1) * _klusch_inner(n, k, _lerch_derivs(x, k, n, a))
            total += term
            small = small + 1 if abs(term) < eps else 0
            if small >= 3:
                break
        else:
            raise ConvergenceError("Lerch addition series did not converge")
        result = base + total
    with mp.workprec(bits_for_digits(digits)):
        return +result


def ell_derivative(k: int, n: int, x, a) -> mpc:
    """``d^k/da^k ell_n(x, a)`` as a finite Stirling sum over ``L^(j)(x, k+1, a)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    x = x if isinstance(x, RationalPhase) else RationalPhase.parse(x)
    a = to_mpf(a)
    if a <= 0:
        raise DomainError("needs a > 0")
    with mp.workprec(mp.prec + 20):
        val = _klusch_inner(n, k + 1, _lerch_derivs(x, k + 1, n, a))
    return +val


# ----------------------------------------------------------------------------
# Dirichlet characters


def _close(u, v, tol) -> bool:
    return abs(u - v) <= tol


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod ``modulus`` given by its values at ``1..modulus``."""

    modulus: int
    values: tuple

    def __post_init__(self):
        m = self.modulus
        if m < 1 or len(self.values) != m:
            raise DomainError("need one value per residue 1..m")
        tol = mpf(10) ** (-12)
        vals = [mpc(v) for v in self.values]
        object.__setattr__(self, "values", tuple(vals))
        for k in range(1, m + 1):
            v = vals[k - 1]
            if math.gcd(k, m) > 1:
                if v != 0:
                    raise DomainError(f"chi({k}) must vanish, gcd({k},{m}) > 1")
            elif not _close(abs(v), 1, tol):
                raise DomainError(f"chi({k}) must be a root of unity")
        if m > 1 and not _close(vals[0], 1, tol):
            raise DomainError("chi(1) must be 1")
        for i in range(1, m + 1):
            for j in range(i, m + 1):
                if not _close(self(i * j), vals[i - 1] * vals[j - 1], tol):
                    raise DomainError(f"not multiplicative at ({i}, {j})")

    def __call__(self, k: int) -> mpc:
        r = k % self.modulus
        return self.values[(r if r else self.modulus) - 1]

    @property
    def principal(self) -> bool:
        return all(v == 0 or v == 1 for v in self.values)

    @classmethod
    def from_json(cls, text: str) -> "DirichletCharacter":
        """``{"modulus": m, "values": [[re, im], ...]}``; entries may be strings."""
        data = json.loads(text)
        vals = []
        for pair in data["values"]:
            if isinstance(pair, (list, tuple)):
                re, im = pair
            else:
                re, im = pair, 0
            vals.append(mpc(mpf(str(re)), mpf(str(im))))
        return cls(int(data["modulus"]), tuple(vals))

    def to_json(self) -> str:
        return json.dumps({
            "modulus": self.modulus,
            "values": [[mp.nstr(v.real, 20), mp.nstr(v.imag, 20)] for v in self.values],
        })


@dataclass(frozen=True)
class DirichletLaurent:
    """``L(s, chi) = pole/(s-1) + sum_n coeffs[n] (s-1)^n``."""

    pole: mpc
    coeffs: list


def dirichlet_L_laurent(chi: DirichletCharacter, K: int) -> DirichletLaurent:
    """Laurent data of ``L(s, chi) = m^-s sum_k chi(k) zeta(s, k/m)`` about s = 1."""
    m = chi.modulus
    with mp.workprec(mp.prec + 20):
        lm = mp.log(m)
        reg = [mpc(0)] * (K + 1)
        pole = mpc(0)
        for k in range(1, m + 1):
            c = chi(k)
            if c == 0:
                continue
            jet = hurwitz_zeta_jet(1, K, mpf(k) / m, laurent=True)
            for n in range(K + 1):
                reg[n] += c * jet[n]
            pole += c
        # m^-s / (s-1) = m^-1 [1/t + sum_{j>=1} (-ln m)^j t^(j-1) / j!]
        scale = exp_log_jet(lm, K + 1, 1 / mpf(m))
        coeffs = convolve(scale, reg)
        for n in range(K + 1):
            coeffs[n] += pole * scale[n + 1]
        pole_coeff = pole / m
    return DirichletLaurent(+pole_coeff, [+c for c in coeffs])


# ----------------------------------------------------------------------------
# reflection sums gamma_k(a) + gamma_k(1-a)


def _loggamma_jet(x0, c, order: int) -> list:
    """Taylor coefficients of ``ln Gamma(x0 + c t)``."""
    out = [loggamma(x0)]
    for m in range(1, order + 1):
        out.append(polygamma(m - 1, x0) * c**m / mp.factorial(m))
    return out


def polylog_pair_jet(a, order: int = 2) -> list:
    """Coefficients about ``s = 0`` of ``Li_s(e^(2 pi i a)) + Li_s(e^(-2 pi i a))``.

    Obtained from the functional relation with ``zeta(1-s, a) + zeta(1-s, 1-a)``:
    the Gamma/pi factor is expanded as an exponential of a log-gamma jet and
    the Hurwitz pair through the Stieltjes constants of ``a`` and ``1-a``.
    """
    a = to_mpf(a)
    if not 0 < a < 1:
        raise DomainError("needs 0 < a < 1")
    K = order
    with mp.workprec(mp.prec + 24):
        half = mpf(1) / 2
        lg1 = _loggamma_jet(half, -half, K)
        lg2 = _loggamma_jet(mpf(1), half, K)
        lpi = mp.log(mp.pi)
        log_factor = [lg1[m] - lg2[m] for m in range(K + 1)]
        log_factor[0] += -half * lpi
        log_factor[1] += lpi
        factor = _exp_series(log_factor)
        # (s/2) [zeta(1-s,a) + zeta(1-s,1-a)] = -1 + sum_k S_k s^(k+1) / (2 k!)
        ja = hurwitz_zeta_jet(1, K, a, laurent=True)
        jb = hurwitz_zeta_jet(1, K, 1 - a, laurent=True)
        W = [mpf(-1)] + [mpf(0)] * K
        for k in range(K):
            gsum = (-1) ** k * mp.factorial(k) * (ja[k] + jb[k])
            W[k + 1] = gsum / (2 * mp.factorial(k))
        out = convolve(factor, W)
    return [+c for c in out]


def _exp_series(c: list) -> list:
    """Coefficients of ``exp(c0 + c1 t + ...)`` (same truncation)."""
    K = len(c) - 1
    out = [mp.exp(c[0])]
    for n in range(1, K + 1):
        acc = mpf(0)
        for k in range(1, n + 1):
            acc += k * c[k] * out[n - k]
        out.append(acc / n)
    return out


def prop10_sides(a, which: str, digits: int = 30):
    """``(lhs, rhs)`` of the reflection identity ``i`` (digamma form) or ``ii``
    (``gamma_1(a) + gamma_1(1-a)``)."""
    a = to_mpf(a)
    if not 0 < a < 1:
        raise DomainError("needs 0 < a < 1")
    if which not in ("i", "ii"):
        raise ValueError("which must be 'i' or 'ii'")
    with mp.workprec(bits_for_digits(digits, 24)):
        g = euler_gamma()
        lpi = mp.log(mp.pi)
        psi_h = digamma(mpf(1) / 2)
        G = polylog_pair_jet(a, 2)
        d1, d2 = G[1], 2 * G[2]
        if which == "i":
            lhs = -lpi + psi_h - mp.pi * mp.cot(mp.pi * a) - 2 * digamma(a)
            rhs = g + lpi + 2 * d1
        else:
            plan = TruncationPlan(digits=digits + 6)
            # gamma_1(b) = gamma_1(b+1) + ln(b)/b keeps the series in its domain
            lhs = mpf(0)
            for b in (a, 1 - a):
                lhs += gamma_series_prop2("ii", 1, b + 1, plan).value + mp.log(b) / b
            psum = digamma(a) + digamma(1 - a)
            rhs = (
                mp.pi**2 / 12 + lpi**2 / 4 - lpi / 2 * psi_h + psi_h**2 / 4
                + (lpi - psi_h) / 2 * psum - (g + lpi) ** 2 / 4 - (g + lpi) * d1 + d2
            )
    with mp.workprec(bits_for_digits(digits)):
        return +lhs, +rhs


def prop10_check(a, which: str, digits: int = 30):
    """``(lhs, rhs, agree)`` with agreement at ``digits`` significant digits."""
    lhs, rhs = prop10_sides(a, which, digits)
    tol = mpf(10) ** (-digits) * max(mpf(1), abs(lhs))
    return lhs, rhs, abs(lhs - rhs) <= tol
