"""Square roots of the two fixed example matrices by all three methods.

The order-10 matrix has three positive real eigenvalues and one complex
pair, each appearing twice.  The order-8 matrix has four distinct
eigenvalues that sit almost on the imaginary axis.  Each method should
return a root with a residual near machine precision, and the structured
methods should return roots that keep their structure exactly.
"""
from shsqrt import compute_root
from shsqrt.generators import example1, example2

for name, W in (("order 10", example1()), ("order 8", example2())):
    print(f"\n{name}")
    print(f"  {'method':22s} {'residual':>9s} {'alpha':>7s} {'skew def':>9s} {'ham def':>8s} {'flops':>7s}")
    for alg in ("schur", "skewham", "ham"):
        _, rep = compute_root(W, alg)
        print(f"  {rep.algorithm:22s} {rep.relative_residual:9.1e} {rep.alpha:7.2f} "
              f"{rep.skew_hamiltonian_defect:9.1e} {rep.hamiltonian_defect:8.1e} {rep.flops['total']:7d}")

# The unstructured root is skew-Hamiltonian only up to rounding; the
# skew-Hamiltonian root is exactly so, and the Hamiltonian root is a
# different square root altogether (a Hamiltonian matrix is not a function
# of W).
