"""Residuals of t(m,n) against (6/pi^2)(mn)^2 in three regimes.

Run with ``python demos/03_error_terms.py``.  Writes ``square.csv`` to the
current directory for external plotting.
"""
from threshold_grid import SweepSpec, alpha_profile, fit_exponent, sweep
from threshold_grid.asymptotics import records_to_csv

# %% square grids: residual / n^3 stays bounded
square = sweep(SweepSpec("square", 1000))
print("square   max |norm_n3|  =", max(abs(r.norm_n3) for r in square))
for r in square[::200]:
    print(f"  n={r.n:>4}  t={r.t_exact}  residual={r.residual:.4g}  norm_n3={r.norm_n3:.4f}")

# %% fixed short side and m ~ sqrt(n)
fixed = sweep(SweepSpec("fixed-m", 1000, m=3))
aspect = sweep(SweepSpec("aspect", 1000))
print("fixed-m  max |norm_mn2| =", max(abs(r.norm_mn2) for r in fixed))
print("aspect   max |norm_mn2| =", max(abs(r.norm_mn2) for r in aspect))

# %% growth exponent of |residual| (exploratory, compare with 1.5 and 2)
print("fitted slope:", fit_exponent(square))

# %% the fractional-part sums alpha(m) stay well inside H_m
prof = alpha_profile(200)
print("max |alpha(m)| / H_m for m<=200:", max(abs(float(p["alpha"]) / float(p["bound"])) for p in prof))

with open("square.csv", "w") as fh:
    records_to_csv(square, fh)
