"""Counting threshold functions on small and large grids.

Run with ``python demos/01_counting.py``.
"""
import time

from threshold_grid import f_moebius, f_naive, f_q, proof_sums_moebius, t_count
from threshold_grid.counting import part1_rhs, total_mass

# %% t(m,n) = f(m,n) + 2 on a few small grids
for m, n in [(2, 2), (2, 3), (3, 3), (4, 5)]:
    r = t_count(m, n)
    print(f"G({m},{n}): f={r.f_value:>4}  t={r.t_value:>4}")

# %% the two evaluators agree, at very different cost
m = n = 3000
t0 = time.perf_counter()
a = f_naive(m, n)
t1 = time.perf_counter()
b = f_moebius(m, n)
t2 = time.perf_counter()
print(f"\nf({m},{n}) = {a}")
print(f"naive {t1 - t0:.3f}s   moebius {t2 - t1:.5f}s   equal={a == b}")

# %% f(m+1, n+1) rebuilt from the four coprime moment sums of (m, n)
m, n = 40, 75
s = proof_sums_moebius(m, n)
print(f"\ns1..s4({m},{n}) = {s.as_tuple()}")
print(f"f({m + 1},{n + 1}) = {f_moebius(m + 1, n + 1)}  from sums: {part1_rhs(m, n, s)}")

# %% splitting all nonzero pairs by gcd class
m, n = 4, 7
parts = {q: f_q(m, n, q) for q in range(1, n)}
print(f"\nf_q({m},{n}) = {parts}")
print(f"sum = {sum(parts.values())}, m^2 n^2 - mn = {total_mass(m, n)}")
