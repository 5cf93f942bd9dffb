"""Every real square root that is a function of a matrix.

With r distinct positive real eigenvalues and c distinct complex pairs
there are 2**(r + c) such roots: one sign per eigenvalue group.
"""
import numpy as np

from shsqrt import enumerate_real_root_functions

A = np.array([[5.0, 1.0, 0.0],
              [0.0, 1.0, 2.0],
              [0.0, -2.0, 1.0]])   # eigenvalues 5 and 1 +- 2i: r = 1, c = 1
roots = enumerate_real_root_functions(A)
print(f"{len(roots)} roots")
for X in roots:
    ev = np.linalg.eigvals(X)
    print(f"  residual {np.linalg.norm(X @ X - A) / np.linalg.norm(A):.1e}   "
          f"eigenvalues {np.array2string(np.sort_complex(ev), precision=3)}")
