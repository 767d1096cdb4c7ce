from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpc, mpf

from stieltjes import lerch
from stieltjes.core import TruncationPlan
from stieltjes.checks import half_turn_lines
from stieltjes.kernel.precision import DomainError

from conftest import hp

# ell_n(1/2, 0.7) from mpmath.lerchphi differentiated numerically; good to ~30 digits
ELL_HALF_07 = [
    "1.057900135568065514580467078188853347694",
    "-0.6365115189460023922634258652884197007252",
    "0.1660348136780791160321785209920567836825",
]
# L'(1, chi_4), the derivative of the Dirichlet beta function at 1
BETA_PRIME_1 = "0.19290131679691242936"


def _close(u, v, digits):
    return abs(u - v) <= mpf(10) ** -digits * max(1, abs(v))


def test_ell_half_against_frozen():
    mp.dps = 40
    vals = lerch.ell_coeffs(2, "1/2", hp("0.7"))
    for got, want in zip(vals, ELL_HALF_07):
        assert _close(got.real, mpf(want), 27)
        assert abs(got.imag) < mpf(10) ** -35


@pytest.mark.parametrize("a", ["0.4", "1", "1.7"])
def test_half_turn_closed_lines(a):
    mp.dps = 35
    a = hp(a)
    lhs = lerch.ell_coeffs(2, "1/2", a)
    rhs = half_turn_lines(a, 35)
    for n in range(3):
        assert _close(lhs[n].real, rhs[n], 32)


def test_half_turn_zeroth_line_is_log_two_at_one():
    mp.dps = 30
    assert _close(lerch.ell_coeff(0, "1/2", 1).real, mp.log(2), 28)


@pytest.mark.parametrize("a", ["0.4", "2.2"])
def test_alternating_and_quarter_forms(a):
    mp.dps = 30
    a = hp(a)
    half = lerch.ell_coeffs(3, "1/2", a)
    quarter = lerch.ell_coeffs(3, "1/4", a)
    for n in range(4):
        assert _close(half[n], lerch.alternating_explicit(n, a), 27)
        assert _close(quarter[n], lerch.quarter_explicit(n, a), 27)


def test_quarter_turn_zeroth_value():
    # sum_k i^k / (k + 1) = -log(1 - i) / i
    mp.dps = 30
    v = lerch.ell_coeff(0, "1/4", 1)
    want = -mp.log(1 - mpc(0, 1)) / mpc(0, 1)
    assert _close(v, want, 27)


@pytest.mark.parametrize("x,a,xi", [("1/3", "1", "0.4"), ("1/2", "2", "-0.7"), ("2/5", "0.8", "0.3")])
def test_addition_shift(x, a, xi):
    mp.dps = 30
    a, xi = hp(a), hp(xi)
    plan = TruncationPlan(digits=30)
    for n in range(3):
        mp.dps = 30
        got = lerch.ell_addition(n, x, a, xi, plan)
        mp.dps = 60
        b = a + xi
        mp.dps = 30
        assert _close(got, lerch.ell_coeff(n, x, b), 26)


def test_addition_needs_small_shift():
    with pytest.raises(DomainError):
        lerch.ell_addition(1, "1/3", 1, 2)


@pytest.mark.parametrize("k,n", [(1, 0), (1, 2), (2, 1)])
def test_derivative_against_finite_difference(k, n):
    mp.dps = 30
    a = hp("1.3")
    got = lerch.ell_derivative(k, n, "1/3", a)
    with mp.workprec(300):
        h = mpf(10) ** -12
        f = [lerch.ell_coeff(n, "1/3", a + i * h) for i in (-1, 0, 1)]
        fd = (f[2] - f[0]) / (2 * h) if k == 1 else (f[2] - 2 * f[1] + f[0]) / h**2
    assert _close(got, fd, 18)


@given(st.integers(-20, 20), st.integers(2, 40))
def test_phase_parse_reduces_mod_one(p, q):
    f = Fraction(p, q)
    if f.denominator == 1:
        with pytest.raises(DomainError):
            lerch.RationalPhase.parse(f)
        return
    ph = lerch.RationalPhase.parse(f)
    assert Fraction(ph.p, ph.q) == f - (f.numerator // f.denominator)
    assert 0 < ph.p < ph.q


def test_phase_validation():
    assert lerch.RationalPhase.parse("0.25") == lerch.RationalPhase(1, 4)
    with pytest.raises(DomainError):
        lerch.RationalPhase(2, 4)
    with pytest.raises(DomainError):
        lerch.RationalPhase(1, 0)
    assert lerch.RationalPhase(1, 4).root() == mpc(0, 1)


def test_character_validation():
    with pytest.raises(DomainError):
        lerch.DirichletCharacter(4, (1, 0, 1))
    with pytest.raises(DomainError):
        lerch.DirichletCharacter(4, (1, 1, -1, 0))
    with pytest.raises(DomainError):
        lerch.DirichletCharacter(5, (1, 1, -1, -1, 0))
    with pytest.raises(DomainError):
        lerch.DirichletCharacter(3, (1, 2, 0))


def test_character_json_round_trip():
    mp.dps = 30
    chi = lerch.DirichletCharacter(5, (1, mpc(0, 1), mpc(0, -1), -1, 0))
    back = lerch.DirichletCharacter.from_json(chi.to_json())
    assert back.modulus == 5
    assert all(abs(u - v) < mpf(10) ** -15 for u, v in zip(chi.values, back.values))
    assert not back.principal


def test_beta_laurent_data():
    mp.dps = 30
    chi = lerch.DirichletCharacter(4, (1, 0, -1, 0))
    lau = lerch.dirichlet_L_laurent(chi, 2)
    assert lau.pole == 0
    assert _close(lau.coeffs[0], mp.pi / 4, 27)
    assert _close(lau.coeffs[1], mpf(BETA_PRIME_1), 19)


def test_principal_character_pole():
    mp.dps = 30
    chi = lerch.DirichletCharacter(6, (1, 0, 0, 0, 1, 0))
    assert chi.principal
    lau = lerch.dirichlet_L_laurent(chi, 1)
    assert _close(lau.pole, mpf(1) / 3, 27)
    # L(s, chi_0) = zeta(s)(1 - 2^-s)(1 - 3^-s)
    want = (mp.euler + mp.log(2)) / 3 + mp.log(3) / 6
    assert _close(lau.coeffs[0], want, 27)


def test_reflection_digamma_form_at_half():
    lhs, rhs = lerch.prop10_sides(mpf(1) / 2, "i", 30)
    mp.dps = 35
    closed = mp.euler - mp.log(mp.pi) + 2 * mp.log(2)
    assert _close(lhs, closed, 30) and _close(rhs, closed, 30)


@pytest.mark.parametrize("a", ["1/3", "0.2", "0.75"])
def test_reflection_gamma1_form(a):
    a = Fraction(a)
    lhs, rhs, ok = lerch.prop10_check(mpf(a.numerator) / a.denominator, "ii", 25)
    assert ok, (lhs, rhs)


def test_reflection_domain():
    with pytest.raises(DomainError):
        lerch.prop10_sides(1, "i")
