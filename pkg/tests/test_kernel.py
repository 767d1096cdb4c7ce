from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from stieltjes.kernel import (
    BigReal,
    ConvergenceError,
    DomainError,
    Jet,
    bits_for_digits,
    convolve,
    decimal_string,
    exp_log_jet,
    jet_reciprocal_pole,
    quadrature,
    sum_until_converged,
    working_digits,
)

centers = st.fractions(min_value=Fraction(1, 10), max_value=Fraction(5)).map(lambda f: mpf(f.numerator) / f.denominator)


def test_bits_for_digits_grows_with_digits():
    assert bits_for_digits(50) > bits_for_digits(30) > 30 * 3.32


def test_working_digits_sets_precision():
    with working_digits(40) as prec:
        assert mp.prec == prec == bits_for_digits(40)


@given(centers)
def test_jet_center_matches_scalar(x0):
    mp.dps = 40
    x = Jet.variable(x0, 5)
    expr = (x * x + 1).log() * x.exp() - (x + 2).reciprocal() + x ** mpf("1.5")
    scalar = mp.log(x0 * x0 + 1) * mp.exp(x0) - 1 / (x0 + 2) + x0 ** mpf("1.5")
    assert abs(expr[0] - scalar) <= mpf(10) ** -35 * max(1, abs(scalar))


@given(centers)
def test_jet_exp_log_roundtrip(x0):
    mp.dps = 40
    x = Jet.variable(x0, 8)
    back = x.log().exp()
    assert abs(back[0] - x0) < mpf(10) ** -35
    assert abs(back[1] - 1) < mpf(10) ** -35
    assert all(abs(c) < mpf(10) ** -30 for c in back.coeffs[2:])


@given(centers)
def test_jet_reciprocal_times_self_is_one(x0):
    mp.dps = 30
    j = Jet([x0, mpf(2), mpf(-1), mpf(3)])
    one = j * j.reciprocal()
    assert abs(one[0] - 1) < mpf(10) ** -25
    assert all(abs(c) < mpf(10) ** -25 for c in one.coeffs[1:])


def test_jet_derivatives_of_exp():
    mp.dps = 30
    j = Jet.variable(mpf(0), 6).exp()
    assert [j.derivative(m) for m in range(7)] == pytest.approx([1] * 7)


def test_jet_power_matches_repeated_product():
    mp.dps = 30
    x = Jet.variable(mpf(2), 4)
    assert all(abs(u - v) < mpf(10) ** -25 for u, v in zip((x**3).coeffs, (x * x * x).coeffs))


def test_convolve_and_exp_log_jet():
    mp.dps = 30
    c = exp_log_jet(mp.log(3), 5, 2)
    # 2 * 3^-t at t = 1/2
    val = sum(c[m] * mpf("0.5") ** m for m in range(6))
    assert abs(val - 2 / mp.sqrt(3)) < 1e-3
    assert convolve([1, 1], [1, 1]) == [1, 2]


def test_reciprocal_pole_split():
    mp.dps = 30
    # 1 / (t + t^2) = 1/t - 1 + t - ...
    pole, reg = jet_reciprocal_pole(Jet([mpf(0), mpf(1), mpf(1), mpf(0)]))
    assert pole == 1
    assert [float(c) for c in reg.coeffs] == [-1.0, 1.0]
    with pytest.raises(DomainError):
        jet_reciprocal_pole(Jet([mpf(1), mpf(1)]))


@given(st.floats(min_value=0.1, max_value=3), st.integers(min_value=1, max_value=4))
def test_quadrature_odd_function_vanishes(c, p):
    mp.dps = 30
    eps = mpf(10) ** -25
    rep = quadrature(lambda x: x ** (2 * p - 1) * mp.exp(-x * x) + mp.sin(3 * x), (-mpf(c), mpf(c)), eps)
    assert abs(rep.value) <= eps


def test_quadrature_known_integrals():
    mp.dps = 30
    eps = mpf(10) ** -28
    assert abs(quadrature(lambda x: mp.exp(-x * x), (-mp.inf, mp.inf), eps).value - mp.sqrt(mp.pi)) < 1e-26
    assert abs(quadrature(lambda x: 1 / (1 + x * x), (0, mp.inf), eps).value - mp.pi / 2) < 1e-26
    assert abs(quadrature(lambda x: mp.log(x), (0, 1), eps).value + 1) < 1e-26
    rev = quadrature(lambda x: x, (1, 0), eps)
    assert abs(rev.value + mpf("0.5")) < 1e-26


def test_summation_converges_and_reports_tail():
    mp.dps = 30
    rep = sum_until_converged(lambda n: mpf(1) / mp.factorial(n), mpf(10) ** -28)
    assert rep.converged
    assert abs(rep.value - mp.e) < 1e-27
    assert rep.tail_bound < 1e-27


def test_summation_flags_nonconvergence():
    mp.dps = 20
    rep = sum_until_converged(lambda n: mpf(1) / (n + 1), mpf(10) ** -15, max_terms=50)
    assert not rep.converged
    with pytest.raises(ConvergenceError):
        sum_until_converged(lambda n: mp.inf, 1e-10)


def test_decimal_string_has_requested_digits():
    mp.dps = 50
    s = decimal_string(mp.euler, 30)
    assert s == "0.577215664901532860606512090082"
    assert len(s.replace("0.", "", 1)) == 30
    assert decimal_string(mpf("0.5"), 12) == "0.500000000000"


def test_bigreal_tracks_error():
    x = BigReal.from_value("0.1", 100)
    y = x + x * 3
    assert y.err_est > 0
    mp.prec = 100
    assert abs(y.value - mpf("0.4")) < 1e-25
    with pytest.raises(ValueError):
        BigReal(mpf(1), 0)


def test_precision_doubling_bounded_by_err_est():
    from stieltjes.hurwitz import stieltjes_reference

    for k, a in ((0, "1"), (4, "0.3"), (7, "5")):
        lo = stieltjes_reference(k, mpf(a), 25)
        hi = stieltjes_reference(k, mpf(a), 50)
        mp.dps = 60
        assert abs(lo.value - hi.value) < lo.err_est
