"""Main terms, normalised residuals and sweep studies of t(m,n).

The main term (6/pi^2)(mn)^2 is evaluated with mpmath at 60 significant
digits; residuals are reported in three normalisations:

* ``norm_mn2``  residual / (m n^2) with m <= n (proved O(mn^2) scale)
* ``norm_n3``   residual / n^3 with n the longer side (square-grid scale)
* ``norm_conj`` residual / (mn)^(3/2) (conjectured scale, report only)
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .counting import GridDims, f_moebius
from .moebius import alpha, harmonic, moebius_table

__all__ = [
    "ResidualRecord",
    "SweepSpec",
    "SHAPES",
    "CSV_COLUMNS",
    "MAX_N",
    "six_over_pi2",
    "main_term",
    "residual",
    "sweep_cells",
    "sweep",
    "fit_exponent",
    "alpha_profile",
    "records_to_csv",
    "records_from_csv",
]

DPS = 60
MAX_N = 5000
SHAPES = ("square", "fixed-m", "aspect", "triangle")
CSV_COLUMNS = ("m", "n", "t_exact", "main_term", "residual", "norm_mn2", "norm_n3", "norm_conj")


def six_over_pi2(dps: int = DPS) -> mpmath.mpf:
    with mpmath.workdps(dps):
        return 6 / mpmath.pi**2


def main_term(m: int, n: int, dps: int = DPS) -> mpmath.mpf:
    with mpmath.workdps(dps):
        return six_over_pi2(dps) * mpmath.mpf(m * n) ** 2


@dataclass(frozen=True)
class ResidualRecord:
    m: int
    n: int
    t_exact: int
    main_term: float
    residual: float
    norm_mn2: float
    norm_n3: float
    norm_conj: float


def residual(m: int, n: int) -> ResidualRecord:
    """Exact t(m,n) against its main term; m and n are put in order m <= n."""
    GridDims(m, n)
    m, n = min(m, n), max(m, n)
    t = f_moebius(m, n) + 2
    with mpmath.workdps(DPS):
        main = main_term(m, n)
        r = mpmath.mpf(t) - main
        return ResidualRecord(
            m=m,
            n=n,
            t_exact=t,
            main_term=float(main),
            residual=float(r),
            norm_mn2=float(r / (m * n * n)),
            norm_n3=float(r / mpmath.mpf(n) ** 3),
            norm_conj=float(r / mpmath.mpf(m * n) ** 1.5),
        )


def residual_rational(m: int, n: int) -> float:
    """t - main term with the constant taken as a rational approximation.

    Independent of ``residual``: no floating subtraction happens until the
    final rounding.
    """
    m, n = min(m, n), max(m, n)
    c = Fraction(mpmath.nstr(six_over_pi2(), DPS - 5, min_fixed=-1, max_fixed=1))
    return float(Fraction(f_moebius(m, n) + 2) - c * (m * n) ** 2)


@dataclass(frozen=True)
class SweepSpec:
    """Which (m, n) cells to visit.

    ``square``: m = n for n in [min_n, max_n].
    ``fixed-m``: m fixed, n in [max(m, min_n), max_n].
    ``aspect``: m = isqrt(n) (at least 2), n in [max(min_n, 4), max_n].
    ``triangle``: every 2 <= m <= n <= max_n.
    """

    shape: str
    max_n: int
    min_n: int = 2
    m: int | None = None

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"shape must be one of {SHAPES}, got {self.shape!r}")
        if self.max_n > MAX_N:
            raise ValueError(f"max_n={self.max_n} exceeds the configured maximum {MAX_N}")
        if self.shape == "fixed-m" and (self.m is None or self.m < 2):
            raise ValueError("fixed-m sweep needs m >= 2")


def sweep_cells(spec: SweepSpec) -> list[tuple[int, int]]:
    lo = max(2, spec.min_n)
    if spec.shape == "square":
        cells = [(n, n) for n in range(lo, spec.max_n + 1)]
    elif spec.shape == "fixed-m":
        cells = [(spec.m, n) for n in range(max(lo, spec.m), spec.max_n + 1)]
    elif spec.shape == "aspect":
        cells = [(math.isqrt(n), n) for n in range(max(lo, 4), spec.max_n + 1)]
    else:
        cells = [(m, n) for n in range(lo, spec.max_n + 1) for m in range(2, n + 1)]
    if not cells:
        raise ValueError(f"sweep {spec} selects no grids")
    return sorted(cells)


def _residual_batch(cells):
    return [residual(m, n) for m, n in cells]


def sweep(spec: SweepSpec, workers: int = 1) -> list[ResidualRecord]:
    """Residual records for every cell of ``spec``, ordered by (m, n)."""
    cells = sweep_cells(spec)
    moebius_table(spec.max_n)
    if workers <= 1 or len(cells) < 64:
        records = _residual_batch(cells)
    else:
        batches = [cells[k::workers * 4] for k in range(workers * 4)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            records = [r for part in ex.map(_residual_batch, batches) for r in part]
    return sorted(records, key=lambda r: (r.m, r.n))


def fit_exponent(records: Iterable[ResidualRecord]) -> dict[str, float]:
    """Least-squares slope of log|residual| against log(mn).

    Exploratory only: compares the observed growth with the proved and the
    conjectured error scales.
    """
    pts = [(math.log(r.m * r.n), math.log(abs(r.residual))) for r in records if r.residual != 0]
    if len(pts) < 3:
        raise ValueError("need at least 3 records with nonzero residual")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if np.ptp(x) == 0:
        raise ValueError("degenerate fit: all records share the same m*n")
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    fitted = A @ np.array([slope, intercept])
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return {"slope": float(slope), "intercept": float(intercept), "r2": r2}


def alpha_profile(max_m: int) -> list[dict]:
    """alpha(m, m) with its bound H_m for m = 1..max_m (exact rationals)."""
    if max_m < 1:
        raise ValueError("max_m must be >= 1")
    table = moebius_table(max_m)
    return [{"m": m, "alpha": alpha(m, m, table).value, "bound": harmonic(m)} for m in range(1, max_m + 1)]


def _fmt(x: float) -> str:
    return format(x, ".12g")


def records_to_csv(records: Sequence[ResidualRecord], fh=None) -> str:
    """Write records in the fixed column order; returns the CSV text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([r.m, r.n, r.t_exact] + [_fmt(getattr(r, c)) for c in CSV_COLUMNS[3:]])
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text


def records_from_csv(text: str) -> list[ResidualRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise ValueError(f"CSV header must be {','.join(CSV_COLUMNS)}")
    kinds = {f.name: (int if f.type in (int, "int") else float) for f in fields(ResidualRecord)}
    return [ResidualRecord(**{c: kinds[c](v) for c, v in zip(CSV_COLUMNS, row)}) for row in rows[1:]]
