"""Möbius sieve and the exact Möbius-weighted partial sums built on it.

All rational results are ``gmpy2.mpq`` values.  Sums with many terms are
accumulated by binary splitting so that the (very large) common
denominators are only formed near the root of the reduction tree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import gmpy2
import mpmath
import numpy as np
from gmpy2 import mpq, mpz

__all__ = [
    "MoebiusTable",
    "FracPartSum",
    "sieve_moebius",
    "moebius_table",
    "mu_trial_division",
    "divisor_sum",
    "mertens_weighted",
    "mertens_weighted_prefix",
    "basel_partial",
    "harmonic",
    "alpha",
    "frac",
    "weighted_mu_sum",
    "to_mpf",
]

_LEAF = 32


@dataclass(frozen=True)
class MoebiusTable:
    """Dense read-only table of mu(0..limit); ``values[0]`` is a placeholder 0."""

    limit: int
    values: np.ndarray

    def __getitem__(self, k):
        if isinstance(k, (int, np.integer)) and not 1 <= k <= self.limit:
            raise IndexError(f"mu({k}) outside table range 1..{self.limit}")
        return self.values[k]

    def __len__(self) -> int:
        return self.limit

    def require(self, limit: int) -> None:
        if limit > self.limit:
            raise ValueError(
                f"Moebius table holds mu(1..{self.limit}) but mu up to {limit} is needed"
            )


@dataclass(frozen=True)
class FracPartSum:
    """alpha(m, n) = sum_{d<=m} mu(d)/d * {n/d}, kept exact."""

    m: int
    n: int
    value: mpq

    def __float__(self) -> float:
        return float(self.value)


def to_mpf(q) -> mpmath.mpf:
    """Round an exact rational to an mpmath float at the current precision."""
    q = mpq(q)
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def sieve_moebius(limit: int) -> MoebiusTable:
    """Sieve mu(k) for 1 <= k <= limit.

    >>> t = sieve_moebius(30)
    >>> int(t[12]), int(t[30])
    (0, -1)
    """
    if limit < 1:
        raise ValueError("sieve limit must be >= 1")
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    for p in np.flatnonzero(is_prime):
        p = int(p)
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    mu.setflags(write=False)
    return MoebiusTable(limit, mu)


@lru_cache(maxsize=8)
def _cached_table(limit: int) -> MoebiusTable:
    return sieve_moebius(limit)


def moebius_table(limit: int) -> MoebiusTable:
    """Shared table covering at least ``limit`` (sizes rounded up to a power of two)."""
    size = 1 << max(6, (max(limit, 1) - 1).bit_length())
    return _cached_table(size)


def mu_trial_division(k: int) -> int:
    """mu(k) by factoring k directly; slow, used as an independent check."""
    if k < 1:
        raise ValueError("mu is defined for k >= 1")
    sign = 1
    p = 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            sign = -sign
        p += 1
    if k > 1:
        sign = -sign
    return sign


def divisor_sum(table: MoebiusTable, k: int) -> int:
    """sum of mu(d) over d | k; equals 1 for k == 1 and 0 otherwise."""
    table.require(k)
    total = 0
    for d in range(1, math.isqrt(k) + 1):
        if k % d == 0:
            total += int(table[d])
            e = k // d
            if e != d:
                total += int(table[e])
    return total


def _split_sum(term: Callable[[int], mpq | int], lo: int, hi: int) -> mpq:
    # sum term(d) for lo <= d < hi by binary splitting
    if hi - lo <= _LEAF:
        s = mpq(0)
        for d in range(lo, hi):
            s += term(d)
        return s
    mid = (lo + hi) // 2
    return _split_sum(term, lo, mid) + _split_sum(term, mid, hi)


def _mu_weighted(limit: int, power: int, table: MoebiusTable | None) -> mpq:
    if limit < 1:
        raise ValueError("limit must be >= 1")
    table = table or moebius_table(limit)
    table.require(limit)
    mu = table.values

    def term(d: int):
        s = int(mu[d])
        return mpq(s, d**power) if s else 0

    return _split_sum(term, 1, limit + 1)


def mertens_weighted(limit: int, table: MoebiusTable | None = None) -> mpq:
    """Exact sum_{k<=limit} mu(k)/k."""
    return _mu_weighted(limit, 1, table)


def basel_partial(limit: int, table: MoebiusTable | None = None) -> mpq:
    """Exact sum_{d<=limit} mu(d)/d**2 (tends to 6/pi**2)."""
    return _mu_weighted(limit, 2, table)


def mertens_weighted_prefix(limit: int, table: MoebiusTable | None = None):
    """All prefix sums of mu(k)/k for k <= limit over one common denominator.

    Returns ``(numerators, denominator)`` with ``numerators[m-1] / denominator``
    equal to ``mertens_weighted(m)``.  Exact, and much cheaper than reducing
    ``limit`` separate fractions.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    table = table or moebius_table(limit)
    table.require(limit)
    den = mpz(1)
    for k in range(2, limit + 1):
        den = gmpy2.lcm(den, k)
    mu = table.values
    nums = []
    acc = mpz(0)
    for k in range(1, limit + 1):
        s = int(mu[k])
        if s:
            acc += s * (den // k)
        nums.append(acc)
    return nums, den


def harmonic(m: int) -> mpq:
    """H_m = sum_{d<=m} 1/d."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return mpq(0)
    return _split_sum(lambda d: mpq(1, d), 1, m + 1)


def frac(n: int, d: int) -> mpq:
    """Fractional part {n/d} as the exact rational (n mod d)/d."""
    return mpq(n % d, d)


def alpha(m: int, n: int, table: MoebiusTable | None = None) -> FracPartSum:
    """Exact alpha(m, n) = sum_{d=1}^{m} mu(d)/d * {n/d}.

    ``alpha(m, m)`` is the one-argument alpha(m).

    >>> alpha(2, 3).value
    mpq(-1,4)
    """
    if m < 1 or n < 1:
        raise ValueError("alpha needs m, n >= 1")
    table = table or moebius_table(m)
    table.require(m)
    mu = table.values

    def term(d: int):
        s = int(mu[d])
        r = n % d
        return mpq(s * r, d * d) if s and r else 0

    return FracPartSum(m, n, _split_sum(term, 1, m + 1))


def weighted_mu_sum(coeffs: Sequence | Iterable, table: MoebiusTable | None = None, power: int = 0) -> mpq:
    """sum_k c_k mu(k) / k**power for k = 1..len(coeffs), exact."""
    cs = [mpq(c) for c in coeffs]
    m = len(cs)
    if m == 0:
        return mpq(0)
    table = table or moebius_table(m)
    table.require(m)
    mu = table.values
    return _split_sum(lambda k: cs[k - 1] * int(mu[k]) / k**power if mu[k] else 0, 1, m + 1)

