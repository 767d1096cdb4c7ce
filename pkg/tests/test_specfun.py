import random

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from stieltjes.kernel.precision import DomainError
from stieltjes.specfun import (
    P1,
    HypergeometricSpec,
    bernoulli_mpf,
    cancellation_guard_bits,
    dalpha_zero_series,
    digamma,
    erf,
    euler_gamma,
    expint_ei,
    hyp1f1,
    incomplete_gamma,
    incomplete_gamma_dalpha,
    pfq,
    polygamma,
    theta3,
)

# polygamma values frozen from an independent library at 55 digits
PSI = {
    (0, "0.1"): "-10.42375494041107679516821621901002540429164256244418892",
    (0, "1"): "-0.5772156649015328606065120900824024310421593359399235988",
    (0, "7.25"): "1.910453526883736028382494561222141388516544974492935635",
    (1, "0.5"): "4.934802200544679309417245499938075567656849703620395313",
    (2, "3"): "-0.1541138063191885707994763230228999815299725846809977636",
    (3, "0.2"): "3753.244994864725780151962544216788905310959817298161124",
}
F22 = "0.6072070021961248470443184322371916688470461058437"
F11 = "0.18643458241109327338636479713493777696943655970468"


@pytest.mark.parametrize("key", sorted(PSI))
def test_polygamma_frozen(key):
    mp.dps = 50
    m, a = key
    want = mpf(PSI[key])
    assert abs(polygamma(m, mpf(a)) - want) <= mpf(10) ** -45 * abs(want)


def test_digamma_recurrence_and_gamma():
    mp.dps = 40
    a = mpf("2.75")
    assert abs(digamma(a + 1) - digamma(a) - 1 / a) < mpf(10) ** -38
    assert abs(euler_gamma() - mp.euler) < mpf(10) ** -38
    with pytest.raises(DomainError):
        digamma(0)


def test_bernoulli_mpf():
    mp.dps = 30
    assert bernoulli_mpf(2) == mpf(1) / 6


def test_hypergeometric_frozen():
    mp.dps = 50
    h = mpf(1) / 2
    assert abs(pfq((h, h), (3 * h, 3 * h), -3 * mp.pi) - mpf(F22)) < mpf(10) ** -45
    assert abs(hyp1f1(mpf(2) / 3, mpf(5) / 2, -20) - mpf(F11)) < mpf(10) ** -45
    spec = HypergeometricSpec((h,), (3 * h,), mpf(-1))
    assert abs(pfq(spec) - mp.sqrt(mp.pi) / 2 * mp.erf(1)) < mpf(10) ** -45


def test_pfq_domain():
    with pytest.raises(DomainError):
        HypergeometricSpec((1,), (-2,), mpf(1))
    with pytest.raises(DomainError):
        pfq((1, 1, 1), (2,), mpf("0.5"))


@given(st.integers(1, 8))
def test_pfq_doubling_within_err(n):
    bits = 120
    h = mpf(1) / 2
    with mp.workprec(bits):
        lo = pfq((h, h), (3 * h, 3 * h), -n * n * mp.pi)
    with mp.workprec(2 * bits):
        hi = pfq((h, h), (3 * h, 3 * h), -n * n * mp.pi)
        assert abs(lo - hi) < mp.ldexp(mpf(1), -bits + 8)


def test_cancellation_guard():
    assert cancellation_guard_bits(mpf(5)) == 0
    assert cancellation_guard_bits(mpf(-20)) >= 40


@given(st.floats(min_value=0.01, max_value=6))
def test_erf_incomplete_gamma_identity(x):
    mp.dps = 30
    x = mpf(x)
    total = erf(x) + incomplete_gamma(mpf(1) / 2, x * x) / mp.sqrt(mp.pi)
    assert abs(total - 1) < mpf(10) ** -27


def test_expint():
    mp.dps = 30
    assert abs(expint_ei(-1) - mp.ei(-1)) < mpf(10) ** -28
    with pytest.raises(DomainError):
        expint_ei(1)


def test_theta3_and_sawtooth():
    mp.dps = 30
    q = mp.exp(-mp.pi)
    assert abs(theta3(q) - mp.jtheta(3, 0, q)) < mpf(10) ** -28
    assert P1(mpf("2.25")) == mpf("-0.25")


def test_sawtooth_integral_bound_random():
    rng = random.Random(7)
    for _ in range(300):
        a, b = rng.uniform(0, 3), rng.uniform(-3, 3)
        c = b + rng.uniform(0, 5)
        # antiderivative of the sawtooth is ({t}^2 - {t})/2, periodic
        F = lambda t: ((t % 1) ** 2 - (t % 1)) / 2
        assert abs(F(c - a) - F(b - a)) <= 1 / 6


def test_incomplete_gamma_dalpha_against_finite_difference():
    mp.dps = 40
    x = mpf("1.7")
    for alpha in (mpf(0), mpf("0.5"), mpf(2)):
        h = mpf(10) ** -12
        with mp.workprec(400):
            fd = (mp.gammainc(alpha + h, x) - mp.gammainc(alpha - h, x)) / (2 * h)
        assert abs(incomplete_gamma_dalpha(alpha, x) - fd) < mpf(10) ** -20


def test_dalpha_zero_series_matches_closed_form():
    mp.dps = 40
    x = mpf(3)
    lx = mp.log(x)
    closed = -x * pfq((1, 1, 1), (2, 2, 2), -x) + (mp.euler + mp.gammainc(0, x) + lx) * lx
    assert abs(dalpha_zero_series(x) - closed) < mpf(10) ** -35
