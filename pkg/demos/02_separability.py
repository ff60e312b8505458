"""The geometric oracle: deciding and counting separable labelings exactly.

Run with ``python demos/02_separability.py``.
"""
from threshold_grid import Labeling, count_by_enumeration, f_naive, is_threshold, verify_witness

# %% a labeling cut by a line, and one that is not
half = Labeling.from_function(4, 4, lambda x, y: int(2 * x + y >= 4))
print(half.to_text())
w = is_threshold(half)
print(f"witness a={w.a} b={w.b} c={w.c}  verified={verify_witness(half, w)}")

xor = Labeling(2, 2, (0, 1, 1, 0))
print("\nXOR on 2x2 separable?", is_threshold(xor) is not None)

# %% exhaustive enumeration against the coprime-pair formula
print("\n m  n   oracle  f+2")
for m, n in [(2, 2), (2, 3), (3, 3), (2, 6), (3, 4), (4, 4)]:
    print(f"{m:>2} {n:>2} {count_by_enumeration(m, n):>8} {f_naive(m, n) + 2:>4}")
