"""Registry of numerical checks behind ``stieltjes validate``.

Each check has a stable ID, belongs to one or more suites and returns
``(passed, detail)``. Results are always reported sorted by ID.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from mpmath import mp, mpf

from . import core, hurwitz, lerch, ser
from .combinatorics import harmonic, pochhammer_deriv_at_one, stirling1
from .kernel.jet import Jet
from .kernel.precision import bits_for_digits, to_mpf
from .kernel.quadrature import quadrature
from .methods import agree, applicable, compute
from .specfun import P1, digamma, euler_gamma, incomplete_gamma, pfq

SUITES = (
    "all", "kernel", "combinatorics", "specfun", "hurwitz", "core",
    "addition", "prop2", "prop9", "ser", "lerch", "bounds", "prop6",
)


@dataclass(frozen=True)
class CheckResult:
    id: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class Check:
    id: str
    suites: frozenset
    fn: Callable[[int], tuple]


_CHECKS: dict = {}


def _register(cid: str, suites, fn):
    if cid in _CHECKS:
        raise ValueError(f"duplicate check id {cid}")
    _CHECKS[cid] = Check(cid, frozenset(suites) | {"all"}, fn)


def check(cid: str, *suites):
    def deco(fn):
        _register(cid, suites, fn)
        return fn

    return deco


def _fmt(x) -> str:
    return mp.nstr(mpf(x), 3)


def _tol(digits: int, cap: int | None = None) -> mpf:
    return mpf(10) ** (-(min(digits, cap) if cap else digits))


def _close(u, v, tol, scale=1) -> tuple:
    d = abs(u - v)
    bound = tol * max(mpf(1), abs(mpf(scale)))
    return d <= bound, f"diff {_fmt(d)} vs tol {_fmt(bound)}"


def _all_close(pairs, tol) -> tuple:
    worst = mpf(0)
    ok = True
    for u, v, scale in pairs:
        d = abs(u - v) / max(mpf(1), abs(scale))
        worst = max(worst, d)
        ok = ok and d <= tol
    return ok, f"max rel diff {_fmt(worst)} vs tol {_fmt(tol)}"


# ----------------------------------------------------------------------------
# numeric substrate


@check("kernel.jet-center", "kernel")
def _jet_center(digits):
    x0 = mpf(13) / 10
    x = Jet.variable(x0, 6)
    expr = ((x * x + 3).log() * x).exp() / (x + 1) + x**mpf("0.5") - x.reciprocal()
    scalar = mp.exp(mp.log(x0 * x0 + 3) * x0) / (x0 + 1) + mp.sqrt(x0) - 1 / x0
    return _close(expr[0], scalar, mp.ldexp(mpf(1), -mp.prec + 8), scalar)


@check("kernel.precision-doubling", "kernel")
def _precision_doubling(digits):
    worst = mpf(0)
    ok = True
    for k, a in ((0, "1"), (3, "0.5"), (6, "2.5")):
        lo = hurwitz.stieltjes_reference(k, to_mpf(a), digits)
        hi = hurwitz.stieltjes_reference(k, to_mpf(a), 2 * digits)
        r = abs(lo.value - hi.value) / lo.err_est
        worst = max(worst, r)
        ok = ok and r < 1
    return ok, f"max |change|/err_est {_fmt(worst)}"


@check("kernel.quadrature-odd", "kernel")
def _quadrature_odd(digits):
    eps = _tol(digits)
    rep = quadrature(lambda x: x**3 * mp.exp(x * x) + mp.sin(5 * x), (-2, 2), eps)
    return abs(rep.value) <= eps, f"|integral| {_fmt(abs(rep.value))}"


# ----------------------------------------------------------------------------
# exact tables


@check("stirling.binomial-sum", "combinatorics")
def _stirling_binomial(digits):
    for j in range(26):
        for ell in range(j + 1):
            lhs = sum((-1) ** k * stirling1(j, k) * math.comb(k, ell) for k in range(ell, j + 1))
            if lhs != (-1) ** ell * stirling1(j + 1, ell + 1):
                return False, f"fails at j={j}, l={ell}"
    return True, "exact for 0 <= l <= j <= 25"


@check("stirling.low-columns", "combinatorics")
def _stirling_columns(digits):
    for n in range(21):
        f = math.factorial(n)
        h1, h2 = harmonic(n), harmonic(n, 2)
        want = ((-1) ** n * f, (-1) ** (n + 1) * f * h1, (-1) ** n * f * (h1 * h1 - h2) / 2)
        got = tuple(stirling1(n + 1, c) for c in (1, 2, 3))
        if got != want:
            return False, f"fails at n={n}"
    return True, "exact for n <= 20"


@check("pochhammer.jet", "combinatorics")
def _pochhammer_jet(digits):
    with mp.workprec(256):
        for j in range(13):
            s = Jet.variable(mpf(1), 12)
            p = Jet.constant(mpf(1), 12, mpf(1))
            for i in range(j):
                p = p * (s + i)
            for ell in range(13):
                if mp.factorial(ell) * p[ell] != pochhammer_deriv_at_one(j, ell):
                    return False, f"fails at j={j}, l={ell}"
    return True, "exact for j, l <= 12"


# ----------------------------------------------------------------------------
# special functions


@check("specfun.sawtooth-bound", "specfun")
def _sawtooth(digits):
    rng = random.Random(20240611)
    worst = mpf(0)
    with mp.workprec(80):
        for _ in range(200):
            a = mpf(rng.uniform(0, 5))
            b = mpf(rng.uniform(-5, 5))
            c = b + mpf(rng.uniform(0, 6))
            # integrate the sawtooth piecewise between its jumps
            cuts = [b] + [a + m for m in range(int(mp.ceil(b - a)), int(mp.floor(c - a)) + 1) if b < a + m < c] + [c]
            total = mpf(0)
            for lo, hi in zip(cuts, cuts[1:]):
                mid = P1((lo + hi) / 2 - a)
                total += mid * (hi - lo)
            worst = max(worst, abs(total))
    return worst <= mpf(1) / 6, f"max |integral| {_fmt(worst)}"


@check("specfun.erf-incomplete-gamma", "specfun")
def _erf_gamma(digits):
    pairs = []
    for x in ("0.1", "0.5", "1", "2.5", "4"):
        x = to_mpf(x)
        pairs.append((mp.erf(x) + incomplete_gamma(mpf(1) / 2, x * x) / mp.sqrt(mp.pi), mpf(1), 1))
    return _all_close(pairs, _tol(digits) * 10)


@check("specfun.pfq-doubling", "specfun")
def _pfq_doubling(digits):
    worst = mpf(0)
    ok = True
    bits = bits_for_digits(digits)
    for n in range(1, 9):
        with mp.workprec(bits):
            lo = pfq((mpf(1) / 2, mpf(1) / 2), (mpf(3) / 2, mpf(3) / 2), -n * n * mp.pi)
            err = mp.ldexp(max(abs(lo), mpf(1)), -bits + 8)
        with mp.workprec(2 * bits):
            hi = pfq((mpf(1) / 2, mpf(1) / 2), (mpf(3) / 2, mpf(3) / 2), -n * n * mp.pi)
            r = abs(lo - hi) / err
        worst = max(worst, r)
        ok = ok and r < 1
    return ok, f"max |change|/err_est {_fmt(worst)}"


# ----------------------------------------------------------------------------
# Hurwitz oracle identities


@check("hurwitz.shift", "hurwitz")
def _hurwitz_shift(digits):
    ok = True
    worst = mpf(0)
    for a in ("0.3", "1", "2.2"):
        a = to_mpf(a)
        base = hurwitz.stieltjes_laurent(6, a, digits)
        for n in range(1, 6):
            moved = hurwitz.stieltjes_laurent(6, a + n, digits)
            for k in range(7):
                g0, g1 = base.gammas[k], moved.gammas[k]
                d = abs(core.gamma_shift(k, a, n, g0.value) - g1.value)
                worst = max(worst, d / (g0.err_est + g1.err_est))
                ok = ok and d <= g0.err_est + g1.err_est
    return ok, f"max |diff|/err_est {_fmt(worst)}"


@check("hurwitz.hermite", "hurwitz")
def _hurwitz_hermite(digits):
    d = min(digits, 40)
    pairs = []
    with mp.workprec(bits_for_digits(d, 8)):
        for a in (1, 2):
            for k in range(4):
                ref = hurwitz.stieltjes_reference(k, a, d + 5).value
                pairs.append((hurwitz.stieltjes_hermite(k, a), ref, ref))
    return _all_close(pairs, _tol(d - 3))


def _marichev(n, a, digits):
    value, terms = hurwitz.marichev_sum(n, a, digits)
    ok, detail = _close(value, hurwitz.marichev_closed(n, a), _tol(digits), value)
    return ok, f"{detail}, {terms} k-terms"


for _n in range(3):
    for _a in ("1/2", "1"):
        _register(
            f"hurwitz.marichev.n{_n}.a{_a}", ("hurwitz",),
            lambda digits, n=_n, a=_a: _marichev(n, mpf(Fraction(a).numerator) / Fraction(a).denominator, min(digits, 40)),
        )


def _log_gamma_sum(a, digits):
    value, terms = hurwitz.marichev_sum(1, a, digits)
    closed = mp.log(2 * mp.pi) / 2 - mp.loggamma(a) - 1
    ok, detail = _close(value, closed, _tol(digits), closed)
    return ok, f"{detail}, {terms} k-terms"


for _a in ("1/2", "1"):
    _register(
        f"hurwitz.log-gamma-sum.a{_a}", ("hurwitz",),
        lambda digits, a=_a: _log_gamma_sum(mpf(Fraction(a).numerator) / Fraction(a).denominator, max(20, min(digits, 40))),
    )


@lru_cache(maxsize=4)
def _a_integral_results(digits: int):
    engine = hurwitz._AIntegralEngine(1, digits)
    return {
        (j, z): hurwitz.a_integral_sum(j, to_mpf(z), digits, engine=engine)
        for z in ("1", "0.5")
        for j in (0, 1)
    }


def _prop6(j, z):
    def fn(digits):
        r = _a_integral_results(10)[(j, z)]
        diff = abs(r.value - r.target)
        ok = diff <= mpf(10) ** -6 and r.spread <= mpf(10) ** -6
        return ok, f"|sum - target| {_fmt(diff)}, window spread {_fmt(r.spread)} (asserted to 1e-6)"

    return fn


for _j in (0, 1):
    for _z in ("1", "0.5"):
        _register(f"prop6.j{_j}.z{_z}", ("prop6", "hurwitz"), _prop6(_j, _z))


# ----------------------------------------------------------------------------
# representations of gamma_k(a)

CROSS_GRID = tuple((n, a) for n in range(7) for a in ("0.75", "1", "1.5", "3"))


def cross_values(n: int, a, digits: int) -> dict:
    inside, _ = applicable(n, to_mpf(a))
    return {m: compute(m, n, a, digits) for m in inside}


def _cross(n, a):
    def fn(digits):
        vals = cross_values(n, a, digits)
        worst = mpf(0)
        bad = []
        names = sorted(vals)
        for i, u in enumerate(names):
            for v in names[i + 1:]:
                x, y = vals[u], vals[v]
                worst = max(worst, abs(x.value - y.value) / (x.err_est + y.err_est))
                if not agree(x, y):
                    bad.append(f"{u}/{v}")
        detail = f"{len(names)} methods, max |diff|/err {_fmt(worst)}"
        return not bad, detail + (f"; disagree: {', '.join(bad)}" if bad else "")

    return fn


for _n, _a in CROSS_GRID:
    _register(f"cross.n{_n}.a{_a}", ("prop2", "core"), _cross(_n, _a))


@check("core.shift-all-methods", "prop2", "addition", "core")
def _shift_all(digits):
    bad = []
    a = mpf("0.75")
    for k in (0, 2, 4):
        for n in (1, 2):
            for m in applicable(k, a)[0]:
                lo = compute(m, k, a, digits)
                hi = compute(m, k, a + n, digits)
                if abs(core.gamma_shift(k, a, n, lo.value) - hi.value) > lo.err_est + hi.err_est:
                    bad.append(f"{m}:k{k}n{n}")
    return not bad, "all methods shift-consistent" if not bad else "fails: " + ", ".join(bad)


@check("addition.harmonic-terms", "addition", "core")
def _addition_harmonic(digits):
    a, b = mpf(1), mpf("0.3")
    u = core.addition_terms(1, a, b, 30)
    v = core.gamma1_addition_harmonic_terms(a, b, 30)
    worst = max(abs(x - y) for x, y in zip(u, v))
    return worst <= mp.ldexp(mpf(1), -mp.prec + 8), f"max termwise diff {_fmt(worst)}"


def _addition_vs_reference(k, a, b):
    def fn(digits):
        r = core.gamma_addition(k, a, b, core.TruncationPlan(digits=digits))
        ref = hurwitz.stieltjes_reference(k, a + b, digits)
        d = abs(r.value - ref.value)
        return d <= r.err_est + ref.err_est, f"diff {_fmt(d)} vs err {_fmt(r.err_est + ref.err_est)}, {r.terms_used} terms"

    return fn


for _k, _a, _b in ((0, "1", "0.5"), (1, "1", "-0.5"), (2, "2", "0.9"), (3, "0.5", "0.25"), (5, "3", "-1.2")):
    _register(f"addition.k{_k}.a{_a}.b{_b}", ("addition", "core"), _addition_vs_reference(_k, mpf(_a), mpf(_b)))


@check("derivative.explicit-forms", "core")
def _derivative_forms(digits):
    for j in (1, 2, 3):
        for ell in range(6):
            if core.explicit_derivative_coefficients(j, ell) != core.derivative_coefficients(j, ell):
                return False, f"fails at j={j}, l={ell}"
    return True, "exact for j <= 3, l <= 5"


def gamma1_prime_closed(digits: int) -> mpf:
    """Closed form of ``gamma_1'(1)`` in ``zeta(2)``, ``gamma``, ``ln 2 pi``, ``zeta'(-1)``."""
    c = hurwitz.aux_constants(digits + 5)
    with mp.workprec(bits_for_digits(digits, 16)):
        v = mp.zeta(2) * (euler_gamma() + mp.log(2 * mp.pi) + 12 * c["zeta_prime_m1"])
    with mp.workprec(bits_for_digits(digits)):
        return +v


@check("derivative.gamma1-prime-at-1", "core")
def _gamma1_prime(digits):
    a = core.gamma_derivative(1, 1, 1, digits + 5)
    b = gamma1_prime_closed(digits + 5)
    return _close(a, b, _tol(digits), b)


@check("prop5.extremum", "core")
def _prop5_extremum(digits):
    x, g = core.find_gamma1_max(min(digits, 30))
    ok = abs(x - mpf("1.39112")) <= mpf("1e-5") and abs(g - mpf("0.0379557")) <= mpf("1e-6")
    return ok, f"a* = {mp.nstr(x, 12)}, gamma_1(a*) = {mp.nstr(g, 12)}"


@check("prop5.monotone", "core")
def _prop5_monotone(digits):
    x, _ = core.find_gamma1_max(20)
    with mp.workprec(bits_for_digits(20)):
        left = mp.linspace(mpf("0.2") + mpf("0.01"), x - mpf("0.05"), 12)
        right = [x + mpf("0.05")] + [mpf(v) for v in ("1.6", "2", "3", "5", "8", "13", "21", "34", "50")]
        bad = [v for v in left if core.gamma1_prime(v) <= 0] + [v for v in right if core.gamma1_prime(v) >= 0]
    return not bad, "sign pattern holds" if not bad else f"fails at {[mp.nstr(v, 5) for v in bad]}"


# ----------------------------------------------------------------------------
# theta-type series at a = 1


@check("correction≈0.0230957", "prop9", "core")
def _correction(digits):
    plan = core.TruncationPlan(digits=max(digits, 20))
    s1, s2, terms = core.euler_correction_sums(plan)
    total = s1 + s2
    ok = abs(total - mpf("0.0230957")) <= mpf("1e-6")
    return ok, f"sum {mp.nstr(total, 10)} with {terms} terms"


@check("prop9.euler-half", "prop9", "core")
def _euler_half(digits):
    d = max(digits, 30)
    plan = core.TruncationPlan(digits=d)
    terms = core.euler_correction_sums(plan)[2]
    v = core.gamma_exp_series_euler(plan)
    ok, detail = _close(v, euler_gamma() / 2, _tol(30))
    return ok and terms <= 12, f"{detail}, {terms} terms per sum"


@check("prop9.gamma1", "prop9", "core")
def _gamma1_series(digits):
    d = max(digits, 25)
    v = core.gamma1_exp_series(core.TruncationPlan(digits=d))
    ref = hurwitz.stieltjes_reference(1, 1, d + 5).value
    return _close(v, ref, _tol(25), ref)


# ----------------------------------------------------------------------------
# magnitude bounds


@lru_cache(maxsize=4)
def _bound_grid(digits: int):
    rows = []
    for i in range(1, 11):
        a = mpf(i) / 10
        lau = hurwitz.stieltjes_laurent(30, a + 1, digits)
        for n in range(1, 31):
            c = lau.gamma(n)
            rows.append((n, a, c, abs(c) <= core.bound_factorial(n), abs(c) <= core.bound_zw(n)))
    return rows


def _bound(n):
    def fn(digits):
        rows = [r for r in _bound_grid(max(digits, 15)) if r[0] == n]
        bad = [mp.nstr(r[1], 2) for r in rows if not (r[3] and r[4])]
        worst = max(abs(r[2]) / core.bound_zw(n) for r in rows)
        detail = f"max |C|/zw-bound {_fmt(worst)}"
        return not bad, detail + (f"; fails at a = {bad}" if bad else "")

    return fn


for _n in range(1, 31):
    _register(f"bounds.n{_n:02d}", ("bounds",), _bound(_n))


@check("bounds.zw-tighter", "bounds")
def _zw_tighter(digits):
    n0 = core.zw_crossover(60)
    return n0 == 1, f"ZW bound below the factorial bound from n = {n0}"


# ----------------------------------------------------------------------------
# Lerch and Dirichlet


@check("lerch.alternating", "lerch")
def _lerch_alternating(digits):
    pairs = []
    for a in ("0.4", "1", "1.7"):
        a = to_mpf(a)
        ell = lerch.ell_coeffs(4, "1/2", a)
        for n in range(5):
            v = lerch.alternating_explicit(n, a)
            pairs.append((ell[n].real, v, v))
            pairs.append((ell[n].imag, 0, v))
    return _all_close(pairs, _tol(digits) * 100)


@check("lerch.quarter", "lerch")
def _lerch_quarter(digits):
    pairs = []
    for a in ("0.4", "1.7"):
        ell = lerch.ell_coeffs(3, "1/4", to_mpf(a))
        for n in range(4):
            v = lerch.quarter_explicit(n, to_mpf(a))
            pairs.append((ell[n], v, abs(v)))
    return _all_close(pairs, _tol(digits) * 100)


def half_turn_lines(a, digits: int) -> list:
    """Right-hand sides for ``ell_0 .. ell_2`` at ``x = 1/2`` from digamma and
    Stieltjes constants at ``a/2`` and ``(a+1)/2``."""
    a = to_mpf(a)
    u = hurwitz.stieltjes_laurent(2, a / 2, digits + 5)
    v = hurwitz.stieltjes_laurent(2, (a + 1) / 2, digits + 5)
    with mp.workprec(bits_for_digits(digits, 16)):
        l2 = mp.log(2)
        dpsi = digamma((a + 1) / 2) - digamma(a / 2)
        d1 = u.gamma(1) - v.gamma(1)
        d2 = u.gamma(2) - v.gamma(2)
        return [dpsi / 2, (l2 * dpsi + d1) / 2, (l2 * l2 * dpsi + 2 * l2 * d1 + d2) / 2]


def _half_turn(line, a):
    def fn(digits):
        rhs = half_turn_lines(to_mpf(a), digits)[line]
        lhs = lerch.ell_coeff(line, "1/2", to_mpf(a))
        return _close(lhs.real, rhs, _tol(digits) * 100, rhs)

    return fn


for _a in ("0.4", "1", "1.7"):
    for _line in range(3):
        _register(f"lerch.half-turn.l{_line}.a{_a}", ("lerch",), _half_turn(_line, _a))


@check("lerch.addition", "lerch")
def _lerch_addition(digits):
    plan = core.TruncationPlan(digits=digits)
    pairs = []
    for x, a, xi in (("1/3", "1", "0.4"), ("1/2", "2", "-0.7")):
        for n in range(3):
            v = lerch.ell_addition(n, x, to_mpf(a), to_mpf(xi), plan)
            w = lerch.ell_coeff(n, x, to_mpf(a) + to_mpf(xi))
            pairs.append((v, w, abs(w)))
    return _all_close(pairs, _tol(digits) * 100)


@check("dirichlet.nonprincipal", "lerch")
def _dirichlet_nonprincipal(digits):
    chi = lerch.DirichletCharacter(4, (1, 0, -1, 0))
    lau = lerch.dirichlet_L_laurent(chi, 2)
    finite = all(mp.isfinite(c.real) and mp.isfinite(c.imag) for c in lau.coeffs)
    ok, detail = _close(lau.coeffs[0], mp.pi / 4, _tol(digits) * 100)
    return ok and lau.pole == 0 and finite, f"pole {lau.pole}, {detail}"


@check("dirichlet.principal", "lerch")
def _dirichlet_principal(digits):
    chi = lerch.DirichletCharacter(6, (1, 0, 0, 0, 1, 0))
    lau = lerch.dirichlet_L_laurent(chi, 1)
    return _close(lau.pole, mpf(1) / 3, _tol(digits) * 100)


@check("prop10.i.a1/2", "lerch")
def _prop10_half(digits):
    d = max(digits, 30)
    lhs, rhs = lerch.prop10_sides(mpf(1) / 2, "i", d)
    closed = euler_gamma() - mp.log(mp.pi) + 2 * mp.log(2)
    ok1, d1 = _close(lhs, closed, _tol(30))
    ok2, d2 = _close(rhs, closed, _tol(30))
    return ok1 and ok2, f"lhs {d1}; rhs {d2}"


@check("prop10.ii.a1/3", "lerch")
def _prop10_third(digits):
    d = max(digits, 25)
    lhs, rhs = lerch.prop10_sides(mpf(1) / 3, "ii", d)
    return _close(lhs, rhs, _tol(25), rhs)


# ----------------------------------------------------------------------------
# Ser polynomials and Euler's constant


@check("ser.forms-agree", "ser")
def _ser_forms(digits):
    for n in range(1, 31):
        for y in (Fraction(1, 3), Fraction(1, 2), Fraction(1)):
            if ser.ser_polynomial_stirling(n, y) != ser.ser_polynomial_binomial(n, y):
                return False, f"fails at n={n}, y={y}"
    return True, "exact for n <= 30"


def _gf_p(z):
    def fn(digits):
        d = min(digits, 40)
        with mp.workprec(bits_for_digits(d, 16)):
            return _close(ser.gf_p_partial(z, 150), ser.gf_p_closed(z), _tol(d))

    return fn


for _z in ("1/4", "1/2", "-1/2"):
    _register(f"ser.gf-p.z{_z}", ("ser",), _gf_p(mpf(Fraction(_z).numerator) / Fraction(_z).denominator))


@check("ser.gf-dP", "ser")
def _gf_dp(digits):
    d = min(digits, 40)
    with mp.workprec(bits_for_digits(d, 16)):
        z = mpf(1) / 3
        return _close(ser.gf_dP_partial(Fraction(1, 2), z, 150), 1 - (1 - z) ** (mpf(1) / 2), _tol(d))


@check("ser.harmonic-dP", "ser")
def _harmonic_dp(digits):
    part, tail = ser.harmonic_dP_partial(Fraction(1, 2), 200)
    target = digamma(mpf(3) / 2) + euler_gamma()
    miss = abs(part - target)
    corrected = abs(part + tail - target)
    ok = miss <= 1.01 * abs(tail) and corrected <= abs(tail) / 20
    return ok, f"|partial - target| {_fmt(miss)}, tail estimate {_fmt(tail)}"


@check("ser.gf-bernoulli", "ser")
def _gf_bernoulli(digits):
    d = min(digits, 40)
    with mp.workprec(bits_for_digits(d, 16)):
        z = mpf(1) / 10
        return _close(ser.gf_bernoulli_partial(z, 150), 1 / z - mp.coth(z / 2) / 2, _tol(d))


def _knessl_exact(n):
    def fn(digits):
        d = max(30, min(digits, 40))
        with mp.workprec(bits_for_digits(d, 8)):
            exact = ser._to_mpf(ser.ser_p(n))
            return _close(ser.knessl_p_integral(n), exact, _tol(d) * exact)

    return fn


for _n in (1, 5, 10, 20):
    _register(f"ser.knessl-exact.n{_n}", ("ser",), _knessl_exact(_n))


KNESSL_TOL = mpf("5e-2")


def knessl_ratio_deviation(n: int = 10**6) -> mpf:
    with mp.workprec(bits_for_digits(20)):
        return abs(ser.knessl_p_integral(n) / ser.knessl_asymptotic(n, 2) - 1)


@check("ser.knessl-asymptotic", "ser")
def _knessl_asym(digits):
    dev = knessl_ratio_deviation()
    return dev <= KNESSL_TOL, f"|ratio - 1| {_fmt(dev)} at n = 1e6 vs tol {_fmt(KNESSL_TOL)}"


@check("ser.euler-integral", "ser")
def _euler_integral(digits):
    d = max(30, min(digits, 40))
    with mp.workprec(bits_for_digits(d, 8)):
        return _close(ser.euler_gamma_integral(), euler_gamma(), _tol(d))


@check("ser.p-series", "ser")
def _p_series(digits):
    with mp.workprec(bits_for_digits(20)):
        part = ser.p_series_partial(200)
        tail = ser.p_series_tail_estimate(200)
        miss = abs(part + tail - euler_gamma())
    return miss <= tail / 10, f"|partial + tail - gamma| {_fmt(miss)}, tail {_fmt(tail)}"


def _remainder(k):
    def fn(digits):
        d = min(digits, 40)
        plan = core.TruncationPlan(digits=d)
        r = ser.remainder_rnk(10, k, plan)
        ref = hurwitz.stieltjes_reference(k, 1, d + 5).value
        with mp.workprec(bits_for_digits(d, 16)):
            return _close(r.value, ref - ser.D_n(10, k), _tol(d) * 100)

    return fn


for _k in (0, 1, 2):
    _register(f"ser.remainder.k{_k}", ("ser",), _remainder(_k))


@check("ser.remainder-decay", "ser")
def _remainder_decay(digits):
    plan = core.TruncationPlan(digits=20)
    r10 = ser.remainder_rnk(10, 0, plan).value
    r50 = ser.remainder_rnk(50, 0, plan).value
    return abs(r50) < abs(r10), f"|r_10| {_fmt(abs(r10))}, |r_50| {_fmt(abs(r50))}"


# ----------------------------------------------------------------------------
# runner


def check_ids(suite: str = "all") -> list:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return sorted(cid for cid, c in _CHECKS.items() if suite in c.suites)


def run_check(cid: str, digits: int) -> CheckResult:
    c = _CHECKS[cid]
    try:
        with mp.workprec(bits_for_digits(digits, 16)):
            passed, detail = c.fn(digits)
    except Exception as exc:  # a crashing check is a failing check
        return CheckResult(cid, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(cid, bool(passed), str(detail))


def run_suite(suite: str, digits: int) -> list:
    return [run_check(cid, digits) for cid in check_ids(suite)]
