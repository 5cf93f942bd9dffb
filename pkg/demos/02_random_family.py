"""Ten seeded random matrices of order 50 with uniform entries.

Most draws have a negative real eigenvalue and so no real square root
that is a function of the matrix.  Those draws are skipped; the first ten
admissible seeds are used.
"""
import time

from shsqrt import compute_root
from shsqrt.generators import example3_cases

start = time.perf_counter()
cases = example3_cases(10, 50)
print(f"admissible seeds: {[s for s, _ in cases]}  (scan took {time.perf_counter() - start:.1f} s)")

worst = {}
for seed, W in cases:
    for alg in ("schur", "skewham", "ham"):
        _, rep = compute_root(W, alg)
        worst[alg] = max(worst.get(alg, 0.0), rep.relative_residual)
for alg, res in worst.items():
    print(f"{alg:8s} max residual {res:.1e}")
