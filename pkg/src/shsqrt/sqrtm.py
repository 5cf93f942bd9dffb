"""Real Schur method for real square roots of real matrices.

A square root of a quasi-upper-triangular ``R`` inherits its block
structure.  Diagonal blocks are rooted directly; off-diagonal blocks follow
one superdiagonal at a time from the small Sylvester equations

    Z_ii Z_ij + Z_ij Z_jj = R_ij - sum_{k=i+1}^{j-1} Z_ik Z_kj,

each a linear system of order 1, 2 or 4.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (NegativeRealEigenvalue, SingularMatrix, StructureError,
                     SylvesterSingular, TooManyBranches)
from .matcore import (EPS, _tally, as_matrix, frobenius_norm, mat_mul,
                      mul_quasi_upper, require_square, solve_complete_pivoting)
from .schur import RealSchurForm, real_schur, spectrum_of

# two diagonal blocks belong to one eigenvalue group when their
# representative eigenvalues agree to this relative tolerance
GROUP_TOL = 1e-8


@dataclass(frozen=True)
class BranchChoice:
    """Sign of the root taken on each eigenvalue group.

    ``groups[b]`` is the group index of diagonal block ``b``; ``signs[g]`` is
    +1 or -1.  Blocks in one group share a sign by construction.
    """

    groups: tuple
    signs: tuple

    def block_sign(self, b) -> int:
        return self.signs[self.groups[b]]

    @property
    def is_principal(self):
        return all(s > 0 for s in self.signs)


@dataclass(frozen=True)
class QuasiTriangularRoot:
    Z: np.ndarray
    blocks: tuple
    branch: BranchChoice


def _block_eigenvalue(R, s, sz):
    if sz == 1:
        return complex(R[s, s], 0.0)
    return complex(spectrum_of((R[s:s + 2, s:s + 2], ((0, 2),))).eigenvalues[0])


def group_blocks(R, blocks, tol=GROUP_TOL) -> tuple:
    """Group diagonal blocks whose eigenvalues coincide within `tol`.

    Returns the group index of every block, groups numbered in order of
    first appearance.
    """
    reps = []
    out = []
    for s, sz in blocks:
        lam = _block_eigenvalue(R, s, sz)
        for g, mu in enumerate(reps):
            if abs(lam - mu) <= tol * max(1.0, abs(lam)):
                out.append(g)
                break
        else:
            reps.append(lam)
            out.append(len(reps) - 1)
    return tuple(out)


def principal_branch(R, blocks) -> BranchChoice:
    groups = group_blocks(R, blocks)
    return BranchChoice(groups, (1,) * (max(groups) + 1 if groups else 0))


def sqrt_block_1x1(r: float, sign: int = 1) -> float:
    """``sign * sqrt(r)`` for a positive real eigenvalue."""
    if r == 0.0:
        raise SingularMatrix("zero eigenvalue: matrix is singular")
    if r < 0.0:
        raise NegativeRealEigenvalue(
            f"eigenvalue {r:.6g} is real and negative; no real square root is a function of the matrix")
    return math.copysign(math.sqrt(r), sign)


def sqrt_block_2x2(Rii, sign: int = 1, ctx=None) -> np.ndarray:
    """Real square root of a 2x2 block with eigenvalues ``theta +- i mu``.

    With ``(alpha + i beta)^2 = theta + i mu`` and ``alpha > 0`` the root is
    ``+-(alpha I + (Rii - theta I) / (2 alpha))``.
    """
    Rii = np.asarray(Rii, dtype=float)
    r11, r12, r21, r22 = Rii[0, 0], Rii[0, 1], Rii[1, 0], Rii[1, 1]
    theta = 0.5 * (r11 + r22)
    disc = 0.25 * (r11 - r22) ** 2 + r12 * r21
    if disc >= 0.0:
        raise StructureError("2x2 block has real eigenvalues")
    mu = math.sqrt(-disc)
    modulus = math.hypot(theta, mu)
    if theta >= 0.0:
        alpha = math.sqrt(0.5 * (theta + modulus))
    else:
        # theta + modulus cancels; go through beta = sqrt((modulus - theta)/2)
        alpha = mu / (2.0 * math.sqrt(0.5 * (modulus - theta)))
    _tally(ctx, adds=8, muls=10, divs=3, sqrts=4)
    Z = (Rii - theta * np.eye(2)) / (2.0 * alpha)
    Z[0, 0] += alpha
    Z[1, 1] += alpha
    return sign * Z


def solve_block_sylvester(P, Qm, C, ctx):
    """Solve ``P Y + Y Qm = C`` for small blocks via the Kronecker system."""
    p, q = P.shape[0], Qm.shape[0]
    if p == 1 and q == 1:
        d = P[0, 0] + Qm[0, 0]
        if d == 0.0 or abs(d) <= 4 * EPS * (abs(P[0, 0]) + abs(Qm[0, 0])):
            raise SylvesterSingular("1x1 Sylvester coefficient vanishes")
        _tally(ctx, adds=1, divs=1)
        return C / d
    K = np.kron(np.eye(q), P) + np.kron(Qm.T, np.eye(p))
    _tally(ctx, adds=p * q * (p + q))
    try:
        x = solve_complete_pivoting(K, C.reshape(-1, order="F"), ctx)
    except SingularMatrix as exc:
        raise SylvesterSingular(str(exc)) from None
    return x.reshape((p, q), order="F")


def check_root_spectrum(R, blocks, scale=None):
    """Reject quasi-triangular `R` that is singular or has a negative real eigenvalue.

    A 2x2 block whose conjugate pair sits within the grouping tolerance of
    the negative real axis counts as negative real.
    """
    n = R.shape[0]
    if scale is None:
        scale = frobenius_norm(R)
    tiny = n * EPS * scale
    for s, sz in blocks:
        lam = _block_eigenvalue(R, s, sz)
        if abs(lam) <= tiny:
            raise SingularMatrix(f"eigenvalue {lam:.3g} is zero to working precision")
        if lam.real < 0.0 and abs(lam.imag) <= GROUP_TOL * abs(lam):
            raise NegativeRealEigenvalue(
                f"eigenvalue {lam.real:.6g} is real and negative; "
                "no real square root is a function of the matrix")


def sqrt_quasi_triangular(R, blocks, branch: BranchChoice | None = None,
                          ctx=None) -> QuasiTriangularRoot:
    """Square root ``Z`` of a quasi-upper-triangular ``R`` on a given branch.

    Parameters
    ----------
    R : (n, n) ndarray
        Quasi-upper-triangular, 2x2 diagonal blocks carrying nonreal pairs.
    blocks : sequence of (start, size)
        Diagonal partition of `R`.
    branch : BranchChoice, optional
        Defaults to the principal branch (every sign +1).

    Returns
    -------
    QuasiTriangularRoot
    """
    R = np.asarray(R, dtype=float)
    blocks = tuple(blocks)
    if branch is None:
        branch = principal_branch(R, blocks)
    check_root_spectrum(R, blocks)
    n = R.shape[0]
    m = len(blocks)
    Z = np.zeros((n, n))
    for b, (s, sz) in enumerate(blocks):
        sign = branch.block_sign(b)
        if sz == 1:
            Z[s, s] = sqrt_block_1x1(R[s, s], sign)
            _tally(ctx, sqrts=1)
        else:
            Z[s:s + 2, s:s + 2] = sqrt_block_2x2(R[s:s + 2, s:s + 2], sign, ctx)
    for d in range(1, m):
        for i in range(m - d):
            j = i + d
            si, pi = blocks[i]
            sj, qj = blocks[j]
            ei, ej = si + pi, sj + qj
            C = R[si:ei, sj:ej].copy()
            if d > 1:
                inner = slice(ei, sj)
                C -= Z[si:ei, inner] @ Z[inner, sj:ej]
                w = sj - ei
                _tally(ctx, adds=pi * qj * w, muls=pi * qj * w)
            Z[si:ei, sj:ej] = solve_block_sylvester(
                Z[si:ei, si:ei], Z[sj:ej, sj:ej], C, ctx)
    return QuasiTriangularRoot(Z, blocks, branch)


def sqrtm_real(A, ctx=None, full_output=False):
    """Principal real square root by the real Schur method.

    Parameters
    ----------
    A : (n, n) array_like
        Nonsingular, no real negative eigenvalues.
    ctx : FlopCounter, optional
    full_output : bool
        Also return the Schur form and the quasi-triangular root.

    Returns
    -------
    X : ndarray
        ``X = Q Z Q^T`` with ``X @ X ~= A``; its eigenvalues lie in the open
        right half-plane.
    form, root : RealSchurForm, QuasiTriangularRoot
        Only when `full_output` is set.
    """
    A = as_matrix(A, "A")
    require_square(A, "A")
    form = real_schur(A, ctx)
    check_root_spectrum(form.R, form.blocks, scale=frobenius_norm(A))
    root = sqrt_quasi_triangular(form.R, form.blocks, ctx=ctx)
    X = _back_transform(form, root.Z, ctx)
    if full_output:
        return X, form, root
    return X


def _back_transform(form: RealSchurForm, Z, ctx):
    QZ = mul_quasi_upper(form.Q, Z, form.blocks, ctx)
    return mat_mul(QZ, form.Q.T, ctx)


def enumerate_real_root_functions(A, cap=10, ctx=None) -> list:
    """All real square roots of `A` that are functions of `A`.

    There are ``2**(r + c)`` of them, `r` counting distinct real eigenvalues
    and `c` distinct conjugate pairs.  Roots are returned in lexicographic
    order of the group signs, principal root first.

    Raises
    ------
    TooManyBranches
        If ``r + c > cap``.
    NegativeRealEigenvalue, SingularMatrix
    """
    A = as_matrix(A, "A")
    require_square(A, "A")
    form = real_schur(A, ctx)
    check_root_spectrum(form.R, form.blocks, scale=frobenius_norm(A))
    groups = group_blocks(form.R, form.blocks)
    count = max(groups) + 1 if groups else 0
    if count > cap:
        raise TooManyBranches(f"{count} eigenvalue groups exceed the cap of {cap}")
    roots = []
    for signs in itertools.product((1, -1), repeat=count):
        branch = BranchChoice(groups, signs)
        root = sqrt_quasi_triangular(form.R, form.blocks, branch, ctx)
        roots.append(_back_transform(form, root.Z, ctx))
    return roots
