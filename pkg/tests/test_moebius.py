import math
import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from threshold_grid.moebius import (
    alpha,
    basel_partial,
    divisor_sum,
    frac,
    harmonic,
    mertens_weighted,
    mertens_weighted_prefix,
    moebius_table,
    mu_trial_division,
    sieve_moebius,
    to_mpf,
    weighted_mu_sum,
)

TABLE = sieve_moebius(10_000)


def test_small_cases():
    assert list(sieve_moebius(1).values[1:]) == [1]
    assert TABLE[1] == 1
    assert TABLE[12] == 0
    assert TABLE[30] == -1
    assert [int(TABLE[k]) for k in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_rejects_zero_limit():
    with pytest.raises(ValueError):
        sieve_moebius(0)


def test_table_bounds():
    with pytest.raises(IndexError):
        TABLE[0]
    with pytest.raises(ValueError):
        TABLE.require(10_001)
    assert not TABLE.values.flags.writeable


def test_matches_trial_division():
    assert all(int(TABLE[k]) == mu_trial_division(k) for k in range(1, 10_001))


def test_squarefree_zeroes():
    for k in range(1, 2000):
        has_square = any(k % (p * p) == 0 for p in range(2, math.isqrt(k) + 1))
        assert (TABLE[k] == 0) == has_square


def test_delta_identity():
    for k in range(1, 10_001):
        assert divisor_sum(TABLE, k) == (1 if k == 1 else 0)


@given(st.integers(1, 100), st.integers(1, 100))
def test_multiplicative_on_coprime(a, b):
    if math.gcd(a, b) == 1:
        assert TABLE[a * b] == TABLE[a] * TABLE[b]


def test_shared_table_is_cached():
    assert moebius_table(100) is moebius_table(120)
    assert moebius_table(100).limit >= 100


def test_mertens_weighted_examples():
    assert mertens_weighted(1) == 1
    assert mertens_weighted(2) == mpq(1, 2)
    brute = sum(Fraction(mu_trial_division(k), k) for k in range(1, 101))
    assert mertens_weighted(100) == brute
    assert abs(brute) <= 1


def test_mertens_prefix_agrees():
    nums, den = mertens_weighted_prefix(300)
    for m in (1, 2, 17, 150, 300):
        assert mpq(nums[m - 1], den) == mertens_weighted(m)


def test_basel_partial_examples():
    assert basel_partial(1) == 1
    assert basel_partial(2) == mpq(3, 4)
    with mpmath.workdps(40):
        target = 6 / mpmath.pi**2
        assert abs(to_mpf(basel_partial(10**5)) - target) < mpmath.mpf("1e-5")


def test_basel_tail_bound_sweep():
    # float64 prefix sums; accumulated rounding is far below the margin tested
    mu = moebius_table(10**6).values[1 : 10**6 + 1].astype(np.float64)
    d = np.arange(1, 10**6 + 1, dtype=np.float64)
    partial = np.cumsum(mu / d**2)
    gap = np.abs(partial - 6 / math.pi**2)
    assert np.all(gap + 1e-9 < 1 / d)


def test_alpha_examples():
    assert alpha(1, 7).value == 0
    assert alpha(2, 3).value == mpq(-1, 4)
    assert alpha(2, 2).value == 0
    big = alpha(1000, 2500)
    assert abs(big.value) <= harmonic(1000)
    assert float(harmonic(1000)) == pytest.approx(7.485470860550345)


def _alpha_oracle(m, n):
    return sum(Fraction(mu_trial_division(d), d) * (Fraction(n, d) - n // d) for d in range(1, m + 1))


@settings(max_examples=60)
@given(st.integers(1, 120), st.integers(1, 500))
def test_alpha_matches_direct_sum(m, n):
    a = alpha(m, n)
    assert a.value == _alpha_oracle(m, n)
    assert abs(a.value) <= harmonic(m)


def test_frac():
    assert frac(7, 3) == mpq(1, 3)
    assert frac(6, 3) == 0


@settings(max_examples=50)
@given(st.lists(st.fractions(0, 1, max_denominator=50), min_size=1, max_size=300))
def test_coefficient_bounds(cs):
    m = len(cs)
    assert abs(weighted_mu_sum(cs)) <= m
    assert abs(weighted_mu_sum(cs, power=1)) <= harmonic(m)
    assert harmonic(m) <= 1 + math.log(m)


def test_random_alpha_bound():
    rng = random.Random(3)
    for _ in range(50):
        m, n = rng.randint(1, 3000), rng.randint(1, 3000)
        assert abs(alpha(m, n).value) <= harmonic(m)
