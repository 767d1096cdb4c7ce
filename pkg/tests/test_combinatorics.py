import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from stieltjes.combinatorics import (
    StirlingTable,
    bernoulli,
    harmonic,
    pochhammer_deriv_at_one,
    rising_factorial_coeffs,
    seed_cache,
    stirling1,
)
from stieltjes.kernel.jet import Jet

# signed Stirling numbers of the first kind, frozen from an independent CAS
S10 = [0, -362880, 1026576, -1172700, 723680, -269325, 63273, -9450, 870, -45, 1]
S25 = {1: 620448401733239439360000, 5: 2677503356427960382362624, 12: -130770928736755873500, 24: -300}


def test_stirling_frozen_rows():
    assert [stirling1(10, k) for k in range(11)] == S10
    for k, v in S25.items():
        assert stirling1(25, k) == v


def test_stirling_edges():
    assert stirling1(0, 0) == 1
    assert stirling1(5, 0) == 0
    assert stirling1(3, 5) == 0


@given(st.integers(0, 25))
def test_stirling_binomial_identity(j):
    for ell in range(j + 1):
        lhs = sum((-1) ** k * stirling1(j, k) * math.comb(k, ell) for k in range(ell, j + 1))
        assert lhs == (-1) ** ell * stirling1(j + 1, ell + 1)


@given(st.integers(0, 20))
def test_stirling_low_columns(n):
    f = math.factorial(n)
    h1, h2 = harmonic(n), harmonic(n, 2)
    assert stirling1(n + 1, 1) == (-1) ** n * f
    assert stirling1(n + 1, 2) == (-1) ** (n + 1) * f * h1
    assert stirling1(n + 1, 3) == (-1) ** n * f * (h1 * h1 - h2) / 2


@given(st.integers(1, 30))
def test_stirling_row_sums(n):
    # sum_k s(n, k) = 0 and sum_k |s(n, k)| = n!
    row = [stirling1(n, k) for k in range(n + 1)]
    assert sum(row) == (1 if n == 1 else 0)
    assert sum(abs(v) for v in row) == math.factorial(n)


def test_bernoulli_frozen():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(20) == Fraction(-174611, 330)
    assert bernoulli(30) == Fraction(8615841276005, 14322)
    assert bernoulli(60) == Fraction(-1215233140483755572040304994079820246041491, 56786730)
    assert bernoulli(31) == 0


def test_harmonic():
    assert harmonic(0) == 0
    assert harmonic(4) == Fraction(25, 12)
    assert harmonic(3, 2) == Fraction(49, 36)
    with pytest.raises(ValueError):
        harmonic(-1)


@given(st.integers(0, 12), st.integers(0, 12))
def test_pochhammer_derivative_matches_jet(j, ell):
    with mp.workprec(256):
        s = Jet.variable(mpf(1), 12)
        p = Jet.constant(mpf(1), 12, mpf(1))
        for i in range(j):
            p = p * (s + i)
        assert mp.factorial(ell) * p[ell] == pochhammer_deriv_at_one(j, ell)


def test_rising_factorial_coeffs():
    # (s)_3 = s^3 + 3 s^2 + 2 s
    assert rising_factorial_coeffs(3) == [0, 2, 3, 1]


def test_table_roundtrip_and_corruption(tmp_path):
    t = StirlingTable()
    t.ensure(30)
    path = tmp_path / "stirling1.txt"
    t.dump(path)
    back = StirlingTable.load(path)
    assert back.row(30) == t.row(30)
    path.write_text(path.read_text().replace("-300", "-301"))
    with pytest.raises(ValueError):
        StirlingTable.load(path)


def test_seed_cache_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("STIELTJES_CACHE", str(tmp_path))
    seed_cache(n_max=40)
    assert (tmp_path / "stirling1.txt").exists()
    seed_cache(tmp_path)
    assert stirling1(40, 39) == -math.comb(40, 2)
