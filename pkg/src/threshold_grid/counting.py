"""Exact values of f(m,n), t(m,n), f_q(m,n) and the moment sums s1..s4.

Every quantity has a naive evaluator (a direct gcd-filtered double sum) and a
Möbius-accelerated evaluator that loops over d <= min(m,n) - 1 only.  The two
routes share nothing except the input, so each checks the other.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .moebius import MoebiusTable, moebius_table

__all__ = [
    "GridDims",
    "CountResult",
    "ProofSums",
    "f_naive",
    "f_moebius",
    "t_count",
    "f_q",
    "f_q_naive",
    "f_q_moebius",
    "proof_sums_naive",
    "proof_sums_moebius",
    "part1_rhs",
    "part1_identity_check",
    "total_mass",
]

_I64_SAFE = 1 << 62
_BLOCK_CELLS = 1 << 20
METHODS = ("naive", "moebius", "oracle")


@dataclass(frozen=True)
class GridDims:
    """Dimensions of G(m,n) = {0..m-1} x {0..n-1}; both sides at least 2."""

    m: int
    n: int

    def __post_init__(self):
        for name in ("m", "n"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise TypeError(f"{name} must be an integer, got {v!r}")
            if v < 2:
                raise ValueError(f"grid side {name}={v} must be >= 2")

    @property
    def cells(self) -> int:
        return self.m * self.n

    def sorted(self) -> tuple[int, int]:
        return (self.m, self.n) if self.m <= self.n else (self.n, self.m)


@dataclass(frozen=True)
class CountResult:
    dims: GridDims
    f_value: int
    t_value: int
    method: str

    def __post_init__(self):
        if self.t_value != self.f_value + 2:
            raise ValueError("t must equal f + 2")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")


@dataclass(frozen=True)
class ProofSums:
    """Sums over 1<=i<=m, 1<=j<=n, gcd(i,j)=1 of 1, i, j and i*j."""

    s1: int
    s2: int
    s3: int
    s4: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.s1, self.s2, self.s3, self.s4)


def _tri(k):
    return k * (k + 1) // 2


def _axis_weight(m: int, n: int, q: int = 1) -> int:
    # pairs on the axes with gcd(i, j) == q, using gcd(0, k) == |k|
    total = 0
    for j in range(-(n - 1), n):
        if math.gcd(0, j) == q:
            total += m * (n - abs(j))
    for i in range(-(m - 1), m):
        if i != 0 and math.gcd(i, 0) == q:
            total += (m - abs(i)) * n
    return total


def _quadrant_block(m, n, q, i_lo, i_hi, use_i64):
    # sum over i in [i_lo, i_hi), 1 <= j < n with gcd(i, j) == q of (m-i)(n-j)
    i = np.arange(i_lo, i_hi, dtype=np.int64)[:, None]
    j = np.arange(1, n, dtype=np.int64)[None, :]
    hit = np.gcd(i, j) == q
    if use_i64:
        w = (m - i) * (n - j)
        return int(np.sum(w, where=hit, dtype=np.int64))
    rows, cols = np.nonzero(hit)
    return sum((m - i_lo - int(r)) * (n - 1 - int(c)) for r, c in zip(rows, cols))


def _quadrant_naive(m: int, n: int, q: int, workers: int) -> int:
    if m < 2 or n < 2:
        return 0
    rows_per_block = max(1, _BLOCK_CELLS // (n - 1))
    use_i64 = rows_per_block * (n - 1) * m * n < _I64_SAFE
    starts = list(range(1, m, rows_per_block))
    jobs = [(m, n, q, s, min(s + rows_per_block, m), use_i64) for s in starts]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda a: _quadrant_block(*a), jobs))
    else:
        parts = [_quadrant_block(*a) for a in jobs]
    return sum(parts)


def f_naive(m: int, n: int, workers: int = 1) -> int:
    """f(m,n) by direct summation over the coprime pairs of the rectangle.

    Uses the four-fold sign symmetry: only the open positive quadrant is
    scanned, axis pairs are added separately.
    """
    GridDims(m, n)
    return 4 * _quadrant_naive(m, n, 1, workers) + _axis_weight(m, n)


def f_q_naive(m: int, n: int, q: int, workers: int = 1) -> int:
    """Literal sum of (m-|i|)(n-|j|) over pairs with gcd(i, j) == q."""
    GridDims(m, n)
    if q < 1:
        raise ValueError("q must be >= 1")
    return 4 * _quadrant_naive(m, n, q, workers) + _axis_weight(m, n, q)


def _table_for(limit: int, table: MoebiusTable | None) -> MoebiusTable:
    if table is None:
        return moebius_table(limit)
    table.require(limit)
    return table


def _moebius_quadrant_py(m, n, q, mu) -> int:
    M, N = m - 1, n - 1
    top = min(M, N) // q
    total = 0
    for d in range(1, top + 1):
        s = int(mu[d])
        if not s:
            continue
        qd = q * d
        A = M // qd
        B = N // qd
        total += s * (m * A - qd * _tri(A)) * (n * B - qd * _tri(B))
    return total


def _moebius_quadrant_np(m, n, q, mu) -> int:
    M, N = m - 1, n - 1
    top = min(M, N) // q
    if top < 1:
        return 0
    d = np.arange(1, top + 1, dtype=np.int64)
    qd = q * d
    A = M // qd
    B = N // qd
    fa = m * A - qd * (A * (A + 1) // 2)
    fb = n * B - qd * (B * (B + 1) // 2)
    return int(np.sum(mu[1 : top + 1].astype(np.int64) * fa * fb))


def _quadrant_moebius(m, n, q, table, exact):
    top = max(0, min(m, n) - 1)
    mu = _table_for(max(top, 1), table).values
    # every partial sum is below (mn)^2 * zeta(2) < 2 (mn)^2
    if not exact and 2 * (m * n) ** 2 < _I64_SAFE:
        return _moebius_quadrant_np(m, n, q, mu)
    return _moebius_quadrant_py(m, n, q, mu)


def f_moebius(m: int, n: int, table: MoebiusTable | None = None, exact: bool = False) -> int:
    """f(m,n) from the Möbius-inverted closed form in O(min(m,n)) steps.

    With M = m-1, N = n-1, A = M//d, B = N//d and T(k) = k(k+1)/2::

        f = 4 * sum_d mu(d) (m A - d T(A)) (n B - d T(B)) + 2m(n-1) + 2(m-1)n

    A fixed-width numpy path is used when the result provably fits in
    int64; ``exact=True`` forces Python integers throughout.
    """
    GridDims(m, n)
    quad = _quadrant_moebius(m, n, 1, table, exact)
    return 4 * quad + 2 * m * (n - 1) + 2 * (m - 1) * n


def f_q_moebius(m: int, n: int, q: int, table: MoebiusTable | None = None, exact: bool = False) -> int:
    GridDims(m, n)
    if q < 1:
        raise ValueError("q must be >= 1")
    quad = _quadrant_moebius(m, n, q, table, exact)
    axis = 0
    if q <= n - 1:
        axis += 2 * m * (n - q)
    if q <= m - 1:
        axis += 2 * (m - q) * n
    return 4 * quad + axis


def f_q(m: int, n: int, q: int, method: str = "moebius") -> int:
    """Weighted count of pairs with gcd exactly q; ``f_q(m, n, 1) == f(m, n)``."""
    if method == "naive":
        return f_q_naive(m, n, q)
    if method == "moebius":
        return f_q_moebius(m, n, q)
    raise ValueError(f"unknown method {method!r}")


def total_mass(m: int, n: int) -> int:
    """m^2 n^2 - m n: the weight of every nonzero pair in the rectangle."""
    return (m * n) ** 2 - m * n


def t_count(m: int, n: int, method: str = "moebius", **kw) -> CountResult:
    """Number of threshold functions on G(m,n), t = f + 2."""
    dims = GridDims(m, n)
    if method == "naive":
        f = f_naive(m, n, **kw)
    elif method == "moebius":
        f = f_moebius(m, n, **kw)
    elif method == "oracle":
        from .separability import count_by_enumeration

        f = count_by_enumeration(m, n, **kw) - 2
    else:
        raise ValueError(f"unknown method {method!r}")
    return CountResult(dims, f, f + 2, method)


def proof_sums_naive(m: int, n: int) -> ProofSums:
    if m < 1 or n < 1:
        raise ValueError("m, n must be >= 1")
    dtype = np.int64 if (m * n) ** 2 < _I64_SAFE else object
    hit = (np.gcd.outer(np.arange(1, m + 1), np.arange(1, n + 1)) == 1).astype(dtype)
    i = np.arange(1, m + 1).astype(dtype)
    j = np.arange(1, n + 1).astype(dtype)
    return ProofSums(
        int(hit.sum()),
        int(i @ hit.sum(axis=1)),
        int(hit.sum(axis=0) @ j),
        int(i @ (hit @ j)),
    )


def proof_sums_moebius(m: int, n: int, table: MoebiusTable | None = None) -> ProofSums:
    """s1..s4 from their exact Möbius forms, d = 1..min(m, n)."""
    if m < 1 or n < 1:
        raise ValueError("m, n must be >= 1")
    top = min(m, n)
    mu = _table_for(top, table).values
    s1 = s2 = s3 = s4 = 0
    for d in range(1, top + 1):
        s = int(mu[d])
        if not s:
            continue
        a, b = m // d, n // d
        ta, tb = _tri(a), _tri(b)
        s1 += s * a * b
        s2 += s * d * ta * b
        s3 += s * d * a * tb
        s4 += s * d * d * ta * tb
    return ProofSums(s1, s2, s3, s4)


def part1_rhs(m: int, n: int, sums: ProofSums | None = None) -> int:
    """Right side of f(m+1, n+1) written through s1..s4 of (m, n)."""
    s = sums or proof_sums_moebius(m, n)
    core = (m + 1) * (n + 1) * s.s1 - (n + 1) * s.s2 - (m + 1) * s.s3 + s.s4
    return 4 * core + 2 * (m + 1) * n + 2 * m * (n + 1)


def part1_identity_check(m: int, n: int) -> bool:
    """Compare naive f(m+1, n+1) against the s1..s4 decomposition."""
    return f_naive(m + 1, n + 1) == part1_rhs(m, n)
