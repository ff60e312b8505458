import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threshold_grid.counting import (
    CountResult,
    GridDims,
    f_moebius,
    f_naive,
    f_q,
    f_q_moebius,
    f_q_naive,
    part1_identity_check,
    part1_rhs,
    proof_sums_moebius,
    proof_sums_naive,
    t_count,
    total_mass,
)
from threshold_grid.moebius import sieve_moebius


def brute_f(m, n, q=1):
    """Literal double sum over the whole rectangle, gcd(0, k) = |k|."""
    return sum(
        (m - abs(i)) * (n - abs(j))
        for i in range(-m + 1, m)
        for j in range(-n + 1, n)
        if math.gcd(i, j) == q
    )


def brute_sums(m, n):
    pairs = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1) if math.gcd(i, j) == 1]
    return (len(pairs), sum(i for i, _ in pairs), sum(j for _, j in pairs), sum(i * j for i, j in pairs))


@pytest.mark.parametrize("m,n,f", [(2, 2, 12), (2, 3, 26), (3, 3, 56), (3, 2, 26)])
def test_small_values(m, n, f):
    assert brute_f(m, n) == f
    assert f_naive(m, n) == f
    assert f_moebius(m, n) == f
    assert t_count(m, n).t_value == f + 2


def test_matches_literal_sum():
    for m in range(2, 13):
        for n in range(2, 13):
            want = brute_f(m, n)
            assert f_naive(m, n) == want
            assert f_moebius(m, n) == want
            assert f_moebius(m, n, exact=True) == want


def test_five_by_nine():
    assert f_moebius(5, 9) == f_naive(5, 9) == brute_f(5, 9)


def test_large_spot_check():
    assert f_moebius(2000, 6000) == f_naive(2000, 6000)


def test_int64_and_exact_paths_agree():
    for m, n in [(4999, 5000), (2, 5000), (3001, 17)]:
        assert f_moebius(m, n) == f_moebius(m, n, exact=True)


def test_exact_path_beyond_int64():
    # (mn)^2 is far past int64 here; only the exact path applies
    m, n = 300_000, 300_000
    assert f_moebius(m, n) == f_moebius(m, n, exact=True)
    assert abs(f_moebius(m, n) - 6 / math.pi**2 * (m * n) ** 2) < 10 * m * n * n


def test_workers_bit_identical():
    assert f_naive(1500, 2500, workers=4) == f_naive(1500, 2500, workers=1)


def test_short_table_rejected():
    with pytest.raises(ValueError):
        f_moebius(50, 60, table=sieve_moebius(10))


@pytest.mark.parametrize("m,n", [(1, 5), (5, 1), (0, 0)])
def test_grid_validation(m, n):
    with pytest.raises(ValueError):
        GridDims(m, n)
    with pytest.raises(ValueError):
        f_naive(m, n)


def test_grid_type_validation():
    with pytest.raises(TypeError):
        GridDims(2.5, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 200), st.integers(2, 200))
def test_symmetry_and_monotonicity(m, n):
    f = f_moebius(m, n)
    assert f == f_moebius(n, m) == f_naive(n, m)
    assert f < f_moebius(m + 1, n)
    assert f < f_moebius(m, n + 1)


def test_count_result():
    r = t_count(3, 3, method="naive")
    assert (r.f_value, r.t_value, r.method) == (56, 58, "naive")
    assert t_count(2, 3, method="oracle").t_value == 28
    with pytest.raises(ValueError):
        CountResult(GridDims(2, 2), 12, 13, "naive")
    with pytest.raises(ValueError):
        t_count(2, 2, method="magic")


def test_proof_sums_examples():
    assert proof_sums_naive(1, 1).as_tuple() == (1, 1, 1, 1)
    assert proof_sums_moebius(1, 1).as_tuple() == (1, 1, 1, 1)
    assert proof_sums_naive(2, 2).as_tuple() == (3, 4, 4, 5)
    assert proof_sums_moebius(2, 2).as_tuple() == (3, 4, 4, 5)
    assert proof_sums_naive(3, 4) == proof_sums_moebius(3, 4)
    assert proof_sums_naive(100, 250) == proof_sums_moebius(100, 250)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), st.integers(1, 40))
def test_proof_sums_against_brute(m, n):
    want = brute_sums(m, n)
    s = proof_sums_moebius(m, n)
    assert proof_sums_naive(m, n).as_tuple() == want == s.as_tuple()
    assert s.s2 == proof_sums_moebius(n, m).s3
    assert s.s1 >= 1 and s.s4 >= 1


def test_part1_examples():
    assert part1_identity_check(1, 1)
    assert part1_rhs(1, 1) == 12
    assert part1_identity_check(2, 4)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 300), st.integers(1, 300))
def test_part1_identity(m, n):
    assert part1_identity_check(m, n)


def test_f_q_examples():
    assert f_q(2, 2, 1) == 12
    assert all(f_q(2, 2, q) == 0 for q in range(2, 6))
    # (0,+-2), (+-2,0) weigh 3 each, (+-2,+-2) weigh 1 each
    assert brute_f(3, 3, 2) == 16
    assert f_q(3, 3, 2) == f_q(3, 3, 2, method="naive") == 16
    assert sum(f_q(4, 7, q) for q in range(1, 7)) == total_mass(4, 7) == 756


def test_f_q_rejects_bad_q():
    with pytest.raises(ValueError):
        f_q(3, 3, 0)
    with pytest.raises(ValueError):
        f_q(3, 3, 1, method="nope")


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 30), st.integers(2, 30), st.integers(1, 35))
def test_f_q_routes_agree(m, n, q):
    want = brute_f(m, n, q)
    assert f_q_naive(m, n, q) == want
    assert f_q_moebius(m, n, q) == want
    if q > max(m, n) - 1:
        assert want == 0


def test_f_q_one_is_f():
    rng = random.Random(11)
    for _ in range(20):
        m, n = rng.randint(2, 400), rng.randint(2, 400)
        assert f_q(m, n, 1) == f_moebius(m, n)


def test_total_mass_sweep():
    for m in range(2, 25):
        for n in range(m, 25):
            assert sum(f_q(m, n, q) for q in range(1, n)) == total_mass(m, n)
