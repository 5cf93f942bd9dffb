"""Test matrices: the three worked examples and a random well-posed family.

Random draws use numpy's ``default_rng(seed)``, i.e. the PCG64 bit
generator, so a seed fixes the matrix on every platform.
"""
from __future__ import annotations

import numpy as np

from .errors import ConfigError, NegativeRealEigenvalue, SingularMatrix
from .matcore import frobenius_norm
from .sqrtm import check_root_spectrum
from .symplectic import SkewHamiltonianMatrix, skew_hamiltonian_schur

EXAMPLES = ("example1", "example2", "example3", "random_skewham")


def _half(size):
    if isinstance(size, bool) or not isinstance(size, (int, np.integer)):
        raise ConfigError(f"size must be an integer, got {size!r}")
    if size < 2 or size % 2:
        raise ConfigError(f"size must be even and at least 2, got {size}")
    return int(size) // 2


def example1() -> SkewHamiltonianMatrix:
    """``[[e e^T, A], [-A^T, e e^T]]`` of order 10 with a skew 5x5 ``A``.

    Spectrum: three positive reals and one complex pair, each twice.
    """
    d = 1e-6
    A = np.array([
        [0.0, d, 1.0, 0.0, 0.0],
        [-d, 0.0, 1.0, d, 0.0],
        [-1.0, -1.0, 0.0, d, 1.0],
        [0.0, -d, -d, 0.0, 1.0],
        [0.0, 0.0, -1.0, -1.0, 0.0],
    ])
    if not np.array_equal(A, -A.T):
        raise AssertionError("example1 block must be skew-symmetric")
    E = np.ones((5, 5))
    return SkewHamiltonianMatrix(E, A, -A.T)


def example2() -> SkewHamiltonianMatrix:
    """``[[A, B], [B, A^T]]`` of order 8; eigenvalues all close to the imaginary axis."""
    d = 1e-6
    A = np.array([
        [0.0, -d, 0.0, 0.0],
        [d, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, d],
        [0.0, 0.0, -d, 0.0],
    ])
    B = np.array([
        [0.0, 1.0, 2.0, 3.0],
        [-1.0, 0.0, 2.0, 3.0],
        [-2.0, -2.0, 0.0, 3.0],
        [-3.0, -3.0, -3.0, 0.0],
    ])
    if not np.array_equal(B, -B.T):
        raise AssertionError("example2 block must be skew-symmetric")
    return SkewHamiltonianMatrix(A, B, B)


def example3(size=50, seed=0) -> SkewHamiltonianMatrix:
    """``[[A, B - B^T], [C - C^T, A^T]]`` with uniform(0, 1) entries.

    Draws A, B, C in that order.  Many draws have negative real
    eigenvalues; see :func:`admissible`.
    """
    n = _half(size)
    rng = np.random.default_rng(seed)
    A = rng.random((n, n))
    B = rng.random((n, n))
    C = rng.random((n, n))
    return SkewHamiltonianMatrix(A, B - B.T, C - C.T)


def random_skewham(size, seed=0) -> SkewHamiltonianMatrix:
    """Random skew-Hamiltonian matrix with spectrum in the open right half-plane.

    Standard normal ``A``, ``G0``, ``F0`` give ``W0 = [[A, G0 - G0^T],
    [F0 - F0^T, A^T]]``; adding ``||W0||_F I`` pushes every eigenvalue to
    the right of the imaginary axis, since ``rho(W0) <= ||W0||_F``.
    """
    n = _half(size)
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n))
    G = rng.standard_normal((n, n))
    F = rng.standard_normal((n, n))
    W0 = SkewHamiltonianMatrix(A, G - G.T, F - F.T)
    shift = frobenius_norm(W0.full())
    return SkewHamiltonianMatrix(A + shift * np.eye(n), W0.G, W0.F)


def generate(example, size=None, seed=0) -> SkewHamiltonianMatrix:
    """Build an example by name (``example1``, ``example2``, ``example3``, ``random_skewham``)."""
    if example == "example1":
        return example1()
    if example == "example2":
        return example2()
    if example == "example3":
        return example3(50 if size is None else size, seed)
    if example == "random_skewham":
        if size is None:
            raise ConfigError("random_skewham needs a size")
        return random_skewham(size, seed)
    raise ConfigError(f"unknown example {example!r}; choose from {', '.join(EXAMPLES)}")


def admissible(W: SkewHamiltonianMatrix) -> bool:
    """True when `W` is nonsingular with no negative real eigenvalue.

    Judged on the structured Schur form, with the same tests the root
    solvers apply.
    """
    form = skew_hamiltonian_schur(W)
    try:
        check_root_spectrum(form.N1, form.blocks, scale=frobenius_norm(W.full()))
    except (NegativeRealEigenvalue, SingularMatrix):
        return False
    return True


def example3_cases(count=10, size=50, first_seed=0, max_draws=10000):
    """The first `count` admissible example3 draws, scanning seeds upward.

    Returns a list of ``(seed, W)``.
    """
    out = []
    seed = first_seed
    while len(out) < count:
        if seed - first_seed >= max_draws:
            raise ConfigError(f"only {len(out)} admissible draws in {max_draws} seeds")
        W = example3(size, seed)
        if admissible(W):
            out.append((seed, W))
        seed += 1
    return out
