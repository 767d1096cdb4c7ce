import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from stieltjes.core import (
    BoundReport,
    TruncationPlan,
    addition_terms,
    bound_factorial,
    bound_proof,
    bound_zw,
    bounds_report,
    derivative_coefficients,
    euler_correction_sums,
    explicit_derivative_coefficients,
    find_gamma1_max,
    gamma1_addition_harmonic_terms,
    gamma1_exp_series,
    gamma1_prime,
    gamma_addition,
    gamma_asymptotic,
    gamma_derivative,
    gamma_exp_series_euler,
    gamma_series_prop2,
    gamma_series_prop4,
    gamma_shift,
    zw_crossover,
)
from stieltjes.checks import gamma1_prime_closed
from stieltjes.hurwitz import stieltjes_reference
from stieltjes.kernel.precision import ConvergenceError, DomainError
from stieltjes.methods import applicable, compute

from conftest import hp

# independent oracle values (mpmath.stieltjes), 55 digits
ORACLE = {
    (1, "1"): "-0.0728158454836767248605863758749013191377363383343379526",
    (2, "2.5"): "-0.1016428552115557576809181346648980319881165594413669121",
    (5, "0.3"): "-8.431967968417140787477617527853937388745445474509790786",
    (8, "1"): "-0.0003521233538030395096020521650012087417291805337923503567",
}
GAMMA1_PRIME_AT_1 = "0.707385812532382682769841072078"


def _near(v, want, digits):
    return abs(v - want) <= mpf(10) ** -digits * max(1, abs(want))


@pytest.mark.parametrize("key", sorted(ORACLE))
def test_every_method_matches_oracle(key):
    k, a = key
    a = hp(a)
    inside, _ = applicable(k, a)
    assert "reference" in inside and "prop4" in inside
    for m in inside:
        v = compute(m, k, a, 35)
        mp.dps = 60
        assert abs(v.value - mpf(ORACLE[key])) <= v.err_est + mpf(10) ** -50, m


@pytest.mark.parametrize("n", [0, 3, 6])
@pytest.mark.parametrize("a", ["0.75", "1", "1.5", "3"])
def test_cross_representation_agreement(n, a):
    a = hp(a)
    vals = [compute(m, n, a, 30) for m in applicable(n, a)[0]]
    mp.dps = 50
    for i, u in enumerate(vals):
        for v in vals[i + 1:]:
            assert abs(u.value - v.value) <= u.err_est + v.err_est, (u.method, v.method)


def test_prop2_domains():
    with pytest.raises(DomainError):
        gamma_series_prop2("i", 1, 1)
    with pytest.raises(DomainError):
        gamma_series_prop2("ii", 1, mpf("0.5"))
    with pytest.raises(ValueError):
        gamma_series_prop2("iv", 1, 2)


def test_prop2_nonconvergence_is_reported():
    with pytest.raises(ConvergenceError):
        gamma_series_prop2("ii", 2, 2, TruncationPlan(outer_terms=3, digits=30))


def test_prop4_flags_small_a_and_converges():
    v = gamma_series_prop4(2, hp("0.3"), plan=TruncationPlan(digits=25))
    assert "slow" in v.flags
    ref = stieltjes_reference(2, hp("0.3"), 30)
    mp.dps = 40
    assert abs(v.value - ref.value) <= v.err_est + ref.err_est


def test_prop4_fixed_N_agrees_with_auto():
    plan = TruncationPlan(digits=30)
    u = gamma_series_prop4(3, 2, N=5, plan=plan)
    w = gamma_series_prop4(3, 2, plan=plan)
    mp.dps = 40
    assert abs(u.value - w.value) <= u.err_est + w.err_est


def test_truncation_plan_validation():
    with pytest.raises(ValueError):
        TruncationPlan(outer_terms=0)
    assert TruncationPlan(digits=17).resolved_digits() == 17


def test_addition_against_reference_both_directions():
    plan = TruncationPlan(digits=35)
    for a, b in (("1", "0.6"), ("2", "-1.3"), ("0.5", "0.45")):
        mp.dps = 60
        a, b = hp(a), hp(b)
        v = gamma_addition(3, a, b, plan)
        r = stieltjes_reference(3, a + b, 35)
        mp.dps = 60
        assert abs(v.value - r.value) <= v.err_est + r.err_est


def test_addition_domain():
    with pytest.raises(DomainError):
        gamma_addition(1, 1, 1)
    with pytest.raises(DomainError):
        gamma_addition(1, -1, mpf("0.5"))


def test_addition_harmonic_specialization_termwise():
    mp.dps = 40
    a, b = mpf(1), hp("0.3")
    u = addition_terms(1, a, b, 30)
    v = gamma1_addition_harmonic_terms(a, b, 30)
    assert len(u) == len(v) == 30
    assert all(abs(x - y) <= mpf(10) ** -38 * max(1, abs(x)) for x, y in zip(u, v))


@pytest.mark.parametrize("j", [1, 2, 3])
@pytest.mark.parametrize("ell", range(6))
def test_explicit_derivative_forms_equal_general(j, ell):
    assert explicit_derivative_coefficients(j, ell) == derivative_coefficients(j, ell)


def test_gamma1_prime_at_one_two_ways():
    a = gamma_derivative(1, 1, 1, 45)
    b = gamma1_prime_closed(45)
    mp.dps = 50
    assert _near(a, b, 40)
    assert _near(a, mpf(GAMMA1_PRIME_AT_1), 29)
    assert mp.nstr(a, 12) == "0.707385812532"


@pytest.mark.parametrize("j,ell,a", [(1, 0, "2"), (2, 1, "1.5"), (3, 2, "0.8")])
def test_gamma_derivative_against_finite_difference(j, ell, a):
    a = hp(a)
    h = mpf(10) ** -8
    with mp.workprec(400):
        vals = [stieltjes_reference(ell, a + i * h, 80).value for i in range(-2, 3)]
        if j == 1:
            fd = (vals[1] * -8 + vals[3] * 8 + vals[0] - vals[4]) / (12 * h)
        elif j == 2:
            fd = (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * h * h)
        else:
            fd = (-vals[0] + 2 * vals[1] - 2 * vals[3] + vals[4]) / (2 * h**3)
    got = gamma_derivative(j, ell, a, 30)
    mp.dps = 30
    assert _near(got, fd, 12)


def test_asymptotic_within_proxy():
    mp.dps = 30
    for ell in (0, 1, 3):
        value, proxy = gamma_asymptotic(ell, 20, digits=30)
        ref = stieltjes_reference(ell, 20, 35).value
        # proxy bounds truncation only; the sum itself is rounded at 30 digits
        assert abs(value - ref) <= 2 * proxy + mpf(10) ** -28 * abs(ref)


def test_prop5_extremum_and_monotonicity():
    x, g = find_gamma1_max(20)
    assert abs(x - mpf("1.39112")) <= mpf("1e-5")
    assert abs(g - mpf("0.0379557")) <= mpf("1e-6")


@given(st.floats(min_value=0.2, max_value=50))
def test_gamma1_prime_sign(a):
    mp.dps = 20
    a_star = mpf("1.3911189573887")
    a = mpf(a)
    if abs(a - a_star) < mpf("0.05"):
        return
    assert (gamma1_prime(a) > 0) == (a < a_star)


def test_theta_series_at_one():
    plan = TruncationPlan(digits=35)
    s1, s2, terms = euler_correction_sums(plan)
    mp.dps = 40
    assert abs(s1 + s2 - mpf("0.0230957")) <= mpf("1e-6")
    assert terms <= 12
    assert abs(gamma_exp_series_euler(plan) - mp.euler / 2) < mpf(10) ** -33
    assert abs(gamma1_exp_series(plan) - stieltjes_reference(1, 1, 40).value) < mpf(10) ** -33


@given(st.integers(1, 30), st.integers(1, 10))
def test_bounds_hold_on_grid(n, tenth):
    r = bounds_report(n, mpf(tenth) / 10, digits=20)
    assert r.satisfied["factorial"] and r.satisfied["zw"]
    assert r.bound_zw < r.bound_factorial


def test_bound_report_flags_are_checked():
    with pytest.raises(ValueError):
        BoundReport(1, mpf(1), mpf(10), mpf(1), mpf(1), mpf(1), {"factorial": True, "zw": False})
    with pytest.raises(DomainError):
        bounds_report(0, mpf("0.5"))
    with pytest.raises(DomainError):
        bounds_report(3, mpf("1.5"))


def test_bound_formulas_and_crossover():
    mp.dps = 30
    assert abs(bound_factorial(2) - mp.e * 2 / (mp.sqrt(2) * 4)) < mpf(10) ** -25
    assert bound_proof(2) < bound_factorial(2)
    assert abs(bound_zw(1) - 2 * 2 / (2 * mp.pi)) < mpf(10) ** -25
    assert zw_crossover(40) == 1


@given(st.sampled_from(["prop2ii", "prop2iii", "prop4", "addition", "reference"]), st.integers(0, 4), st.integers(1, 3))
def test_shift_identity_for_every_representation(method, k, n):
    mp.dps = 50
    a = hp("0.9")
    lo = compute(method, k, a, 25)
    hi = compute(method, k, a + n, 25)
    mp.dps = 50
    assert abs(gamma_shift(k, a, n, lo.value) - hi.value) <= lo.err_est + hi.err_est
