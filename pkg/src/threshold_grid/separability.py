"""Exact linear-separability oracle for labelings of G(m,n).

A labeling tau is a threshold function when some (a, b, c) gives
tau(x, y) = 0 exactly when a*x + b*y + c <= 0.  The strict side is
normalised to a unit margin (>= 1), which is harmless because the system
is finite and positively homogeneous, and feasibility is decided by
Fourier-Motzkin elimination (c first, then b) over the rationals.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .counting import GridDims

__all__ = [
    "Labeling",
    "HalfPlaneWitness",
    "GridTooLarge",
    "DEFAULT_CAP",
    "HARD_CAP",
    "is_threshold",
    "verify_witness",
    "fourier_motzkin",
    "labeling_from_halfplane",
    "threshold_codes",
    "count_by_enumeration",
]

DEFAULT_CAP = 20
HARD_CAP = 24


class GridTooLarge(ValueError):
    """Raised when exhaustive enumeration is requested above the cell cap."""


@dataclass(frozen=True)
class Labeling:
    """tau: G(m,n) -> {0,1}; ``bits[y*m + x]`` is tau(x, y)."""

    m: int
    n: int
    bits: tuple[int, ...]

    def __post_init__(self):
        GridDims(self.m, self.n)
        if len(self.bits) != self.m * self.n:
            raise ValueError(f"expected {self.m * self.n} bits, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("labeling entries must be 0 or 1")

    def __call__(self, x: int, y: int) -> int:
        return self.bits[y * self.m + x]

    @property
    def code(self) -> int:
        return sum(b << k for k, b in enumerate(self.bits))

    @classmethod
    def from_code(cls, m: int, n: int, code: int) -> "Labeling":
        return cls(m, n, tuple((code >> k) & 1 for k in range(m * n)))

    @classmethod
    def from_function(cls, m: int, n: int, tau) -> "Labeling":
        return cls(m, n, tuple(int(tau(x, y)) for y in range(n) for x in range(m)))

    def complement(self) -> "Labeling":
        return Labeling(self.m, self.n, tuple(1 - b for b in self.bits))

    def to_text(self) -> str:
        rows = ["".join(str(b) for b in self.bits[y * self.m : (y + 1) * self.m]) for y in range(self.n)]
        return f"{self.m} {self.n}\n" + "\n".join(rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Labeling":
        """Parse ``"m n"`` followed by n rows of m characters from {0, 1}."""
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty labeling file")
        head = lines[0].split()
        if len(head) != 2:
            raise ValueError(f"header must be 'm n', got {lines[0]!r}")
        try:
            m, n = int(head[0]), int(head[1])
        except ValueError:
            raise ValueError(f"header must hold two integers, got {lines[0]!r}") from None
        rows = lines[1:]
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, found {len(rows)}")
        bits = []
        for y, row in enumerate(rows):
            if len(row) != m or set(row) - {"0", "1"}:
                raise ValueError(f"row {y} must be {m} characters of 0/1, got {row!r}")
            bits.extend(int(ch) for ch in row)
        return cls(m, n, tuple(bits))


@dataclass(frozen=True)
class HalfPlaneWitness:
    a: Fraction
    b: Fraction
    c: Fraction

    def __call__(self, x, y):
        return self.a * x + self.b * y + self.c


def verify_witness(labeling: Labeling, w: HalfPlaneWitness) -> bool:
    """Exact check that ``a x + b y + c <= 0`` holds exactly on the 0-points."""
    a, b, c = Fraction(w.a), Fraction(w.b), Fraction(w.c)
    m = labeling.m
    for k, bit in enumerate(labeling.bits):
        x, y = k % m, k // m
        if (a * x + b * y + c <= 0) != (bit == 0):
            return False
    return True


def labeling_from_halfplane(m: int, n: int, a, b, c) -> Labeling:
    """The labeling induced by a half-plane under the boundary-is-0 rule."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    return Labeling.from_function(m, n, lambda x, y: 0 if a * x + b * y + c <= 0 else 1)


# Constraints are (coeffs, rhs) meaning sum(coeffs[k] * v[k]) >= rhs, with
# integer coefficients and a rational right-hand side.


def _normalize(coeffs: tuple[int, ...], rhs: Fraction):
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    if g == 0:
        return None, rhs
    return tuple(c // g for c in coeffs), rhs / g


def _add(system: dict, coeffs, rhs) -> bool:
    key, r = _normalize(coeffs, rhs)
    if key is None:
        return r <= 0
    old = system.get(key)
    if old is None or r > old:
        system[key] = r
    return True


def _eliminate(system: dict, k: int):
    """Project out variable k; returns the new system or None if infeasible."""
    out: dict = {}
    lower, upper = [], []
    for coeffs, rhs in system.items():
        ck = coeffs[k]
        if ck > 0:
            lower.append((coeffs, rhs))
        elif ck < 0:
            upper.append((coeffs, rhs))
        elif not _add(out, coeffs, rhs):
            return None
    for lc, lr in lower:
        for uc, ur in upper:
            p, q = -uc[k], lc[k]
            coeffs = tuple(p * x + q * y for x, y in zip(lc, uc))
            if not _add(out, coeffs, p * lr + q * ur):
                return None
    return out


def _pick(system: dict, k: int, values: dict):
    # feasible value for variable k given values of all others in the system
    lo = hi = None
    for coeffs, rhs in system.items():
        rest = rhs - sum(c * values[v] for v, c in enumerate(coeffs) if v != k and c)
        ck = coeffs[k]
        if ck == 0:
            if rest > 0:
                return None
            continue
        bound = Fraction(rest) / ck
        if ck > 0:
            lo = bound if lo is None or bound > lo else lo
        else:
            hi = bound if hi is None or bound < hi else hi
    if lo is not None and hi is not None and lo > hi:
        return None
    if (lo is None or lo <= 0) and (hi is None or hi >= 0):
        return Fraction(0)
    return lo if lo is not None and lo > 0 else hi


def fourier_motzkin(constraints: Iterable[tuple[tuple[int, ...], Fraction]], order: list[int]):
    """Decide ``A v >= r`` by eliminating variables in ``order``.

    Every variable must appear in ``order``.  Returns a feasible point as a
    tuple of Fractions, or None.  Duplicate directions are pruned at each
    stage by keeping the tightest right-hand side.
    """
    system: dict = {}
    nvars = None
    for coeffs, rhs in constraints:
        nvars = len(coeffs)
        if not _add(system, tuple(coeffs), Fraction(rhs)):
            return None
    if nvars is None:
        return ()
    if sorted(order) != list(range(nvars)):
        raise ValueError("elimination order must name every variable once")
    stages = [system]
    for k in order[:-1]:
        system = _eliminate(system, k)
        if system is None:
            return None
        stages.append(system)
    values = {v: Fraction(0) for v in range(nvars)}
    for k, stage in zip(reversed(order), reversed(stages)):
        val = _pick(stage, k, values)
        if val is None:
            return None
        values[k] = val
    return tuple(values[v] for v in range(nvars))


def _halfplane_system(m: int, bits, boundary: int):
    # variables (a, b, c); 0-points: a x + b y + c <= 0, 1-points: >= 1
    # (boundary=1 moves the margin: 0-points <= -1, 1-points >= 0)
    zero_rhs, one_rhs = (0, 1) if boundary == 0 else (1, 0)
    for k, bit in enumerate(bits):
        x, y = k % m, k // m
        if bit:
            yield (x, y, 1), one_rhs
        else:
            yield (-x, -y, -1), zero_rhs


def _solve(m: int, bits, boundary: int):
    sol = fourier_motzkin(_halfplane_system(m, bits, boundary), order=[2, 1, 0])
    if sol is None:
        return None
    return HalfPlaneWitness(*sol)


class _LineMasks:
    """Bit masks used to reject labelings that change twice along a row or column.

    Restricted to any line, a threshold labeling changes value at most once,
    so this is a sound shortcut in front of the exact solver.
    """

    def __init__(self, m: int, n: int):
        self.m = m
        self.h = sum(1 << (y * m + x) for y in range(n) for x in range(m - 1))
        self.v = (1 << ((n - 1) * m)) - 1
        self.rows = [((1 << (m - 1)) - 1) << (y * m) for y in range(n)]
        self.cols = [sum(1 << (y * m + x) for y in range(n - 1)) for x in range(m)]

    def ok(self, code: int) -> bool:
        hc = (code ^ (code >> 1)) & self.h
        for r in self.rows:
            t = hc & r
            if t & (t - 1):
                return False
        vc = (code ^ (code >> self.m)) & self.v
        for c in self.cols:
            t = vc & c
            if t & (t - 1):
                return False
        return True


def is_threshold(labeling: Labeling, boundary: int = 0, prefilter: bool = True) -> HalfPlaneWitness | None:
    """Witness (a, b, c) if ``labeling`` is a threshold function, else None.

    ``boundary`` selects which class receives points on the line (0 is the
    usual convention).  With ``prefilter`` off every labeling goes through
    the Fourier-Motzkin solver.
    """
    if boundary not in (0, 1):
        raise ValueError("boundary must be 0 or 1")
    m, n = labeling.m, labeling.n
    if prefilter and not _LineMasks(m, n).ok(labeling.code):
        return None
    return _solve(m, labeling.bits, boundary)


def _scan(args):
    m, n, lo, hi, boundary, prefilter, check = args
    masks = _LineMasks(m, n)
    cells = m * n
    found = []
    for code in range(lo, hi):
        if prefilter and not masks.ok(code):
            continue
        bits = [(code >> k) & 1 for k in range(cells)]
        w = _solve(m, bits, boundary)
        if w is None:
            continue
        if check:
            lab = Labeling(m, n, tuple(bits))
            ok = verify_witness(lab if boundary == 0 else lab.complement(),
                                w if boundary == 0 else HalfPlaneWitness(-w.a, -w.b, -w.c))
            if not ok:
                raise AssertionError(f"solver returned a bad witness for code {code}")
        found.append(code)
    return found


def threshold_codes(
    m: int,
    n: int,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
    boundary: int = 0,
    prefilter: bool = True,
    check_witnesses: bool = True,
) -> list[int]:
    """Sorted integer codes of all threshold labelings of G(m,n).

    Every one of the 2**(m n) labelings is judged on its own.  The code
    space is split into contiguous ranges for ``workers`` processes and the
    partial lists are concatenated in order, so the result does not depend
    on ``workers``.
    """
    GridDims(m, n)
    if m * n > cap:
        raise GridTooLarge(f"grid {m}x{n} has {m * n} cells, above the enumeration cap of {cap}")
    if cap > HARD_CAP:
        raise GridTooLarge(f"enumeration cap {cap} exceeds the hard limit {HARD_CAP}")
    total = 1 << (m * n)
    chunks = max(1, workers) * 4 if workers > 1 else 1
    step = -(-total // chunks)
    jobs = [(m, n, lo, min(lo + step, total), boundary, prefilter, check_witnesses) for lo in range(0, total, step)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan, jobs))
    else:
        parts = [_scan(j) for j in jobs]
    return [c for part in parts for c in part]


def count_by_enumeration(m: int, n: int, cap: int = DEFAULT_CAP, workers: int = 1, **kw) -> int:
    """t(m,n) obtained by testing every labeling for separability."""
    return len(threshold_codes(m, n, cap=cap, workers=workers, **kw))
