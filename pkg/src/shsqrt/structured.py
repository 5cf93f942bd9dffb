"""Skew-Hamiltonian and Hamiltonian square roots of skew-Hamiltonian matrices.

Both methods start from the real skew-Hamiltonian Schur form
``U^T W U = [[N1, N2], [0, N1^T]]`` and look for a root of the same block
shape, ``Z = [[X, Y], [0, s X^T]]``.  Squaring ``Z`` gives ``X^2 = N1`` and

    s = +1:  X Y + Y X^T = N2,  Y skew-symmetric   (skew-Hamiltonian root)
    s = -1:  X Y - Y X^T = N2,  Y symmetric        (Hamiltonian root)

``X`` comes from the real Schur method on the already quasi-triangular
``N1``; ``Y`` from a block back-substitution over the lower block triangle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentSystem, ShapeError, SylvesterSingular
from .matcore import (EPS, _tally, as_matrix, frobenius_norm, mat_mul,
                      mul_quasi_lower, mul_quasi_upper, mul_structured)
from .schur import block_partition
from .sqrtm import check_root_spectrum, solve_block_sylvester, sqrt_quasi_triangular
from .symplectic import (SkewHamiltonianMatrix, SkewHamiltonianSchurForm, pack,
                         skew_hamiltonian_schur)

SKEW_HAMILTONIAN = "SkewHamiltonian"
HAMILTONIAN = "Hamiltonian"

# relative residual above which a least-squares block solve is declared
# inconsistent
CONSISTENCY_TOL = 1e-8


@dataclass(frozen=True)
class StructuredRoot:
    """Structured square root ``U [[X, Y], [0, +-X^T]] U^T`` of a skew-Hamiltonian W."""

    X: np.ndarray
    Y: np.ndarray
    kind: str
    root: np.ndarray
    schur: SkewHamiltonianSchurForm

    @property
    def Z(self):
        n = self.X.shape[0]
        s = 1.0 if self.kind == SKEW_HAMILTONIAN else -1.0
        return np.block([[self.X, self.Y], [np.zeros((n, n)), s * self.X.T]])


def _prepare(X, N2, blocks):
    X = np.asarray(X, dtype=float)
    N = np.asarray(N2, dtype=float)
    n = X.shape[0]
    if X.shape != (n, n) or N.shape != (n, n):
        raise ShapeError(f"X {X.shape} and N2 {N.shape} must be square of one order")
    if blocks is None:
        blocks = block_partition(X)
    return X, N, n, tuple(blocks)


def solve_structured_lyapunov(X, N2, blocks=None, ctx=None) -> np.ndarray:
    """Skew-symmetric solution of ``X Y + Y X^T = N2``.

    Parameters
    ----------
    X : (n, n) ndarray
        Quasi-upper-triangular with no eigenvalue pair summing to zero, which
        holds for a principal root.
    N2 : (n, n) ndarray
        Skew-symmetric.
    blocks : sequence of (start, size), optional
        Diagonal partition of `X`; read off its subdiagonal if omitted.

    Returns
    -------
    Y : ndarray
        Exactly skew-symmetric.  Block rows are solved bottom up and, within
        a row, right to left, so every block of the right-hand side is known:

            X_ii Y_ij + Y_ij X_jj^T = N_ij - sum_{k>i} X_ik Y_kj
                                           - sum_{k>j} Y_ik X_jk^T.
    """
    X, N, n, blocks = _prepare(X, N2, blocks)
    Y = np.zeros((n, n))
    for i in range(len(blocks) - 1, -1, -1):
        si, p = blocks[i]
        ei = si + p
        for j in range(i, -1, -1):
            sj, q = blocks[j]
            ej = sj + q
            C = N[si:ei, sj:ej].copy()
            if ei < n:
                C -= X[si:ei, ei:] @ Y[ei:, sj:ej]
                _tally(ctx, adds=p * q * (n - ei), muls=p * q * (n - ei))
            if ej < n:
                C -= Y[si:ei, ej:] @ X[sj:ej, ej:].T
                _tally(ctx, adds=p * q * (n - ej), muls=p * q * (n - ej))
            if i != j:
                B = solve_block_sylvester(X[si:ei, si:ei], X[sj:ej, sj:ej].T, C, ctx)
                Y[si:ei, sj:ej] = B
                Y[sj:ej, si:ei] = -B.T
            elif p == 2:
                # X Y + Y X^T with Y = y [[0, 1], [-1, 0]] is trace(X) times that
                tr = X[si, si] + X[si + 1, si + 1]
                if abs(tr) <= 4 * EPS * frobenius_norm(X[si:ei, si:ei]):
                    raise SylvesterSingular("diagonal block has zero trace")
                y = 0.5 * (C[0, 1] - C[1, 0]) / tr
                _tally(ctx, adds=2, muls=1, divs=1)
                Y[si, si + 1] = y
                Y[si + 1, si] = -y
    return Y


class _Columns:
    """Growable stack of n x n slices: a particular solution plus null directions."""

    def __init__(self, n):
        self.data = np.zeros((n, n, 4))
        self.used = 1
        self.sumsq = np.zeros(4)

    def view(self):
        return self.data[:, :, :self.used]

    def grow(self, extra):
        need = self.used + extra
        if need > self.data.shape[2]:
            cap = max(need, 2 * self.data.shape[2])
            data = np.zeros(self.data.shape[:2] + (cap,))
            data[:, :, :self.used] = self.view()
            self.data = data
            sumsq = np.zeros(cap)
            sumsq[:self.used] = self.sumsq[:self.used]
            self.sumsq = sumsq
        self.used = need


def _min_norm(K, C):
    """Pseudoinverse solution of ``K y = c`` for each column, plus a null basis."""
    U, sv, Vt = np.linalg.svd(K)
    tol = max(K.shape) * EPS * (sv[0] if sv.size else 0.0)
    r = int(np.sum(sv > tol)) if sv.size and sv[0] > 0 else 0
    sol = Vt[:r].T @ ((U[:, :r].T @ C) / sv[:r, None])
    return sol, Vt[r:].T


def _svd_flops(k, l):
    # Golub-Reinsch estimate for the full SVD of a k x l matrix, k >= l
    k, l = max(k, l), min(k, l)
    return 4 * k * l * l + 8 * l ** 3


def solve_singular_sylvester(X, N2, blocks=None, ctx=None, minimal_norm="global"):
    """Symmetric solution of the singular equation ``X Y - Y X^T = N2``.

    Parameters
    ----------
    X : (n, n) ndarray
        Quasi-upper-triangular.
    N2 : (n, n) ndarray
        Skew-symmetric; the equation then has a symmetric solution whenever
        ``X`` is a root of a matrix similar to ``N1``.
    blocks : sequence of (start, size), optional
    minimal_norm : {"global", "blockwise"}
        ``"blockwise"`` takes the pseudoinverse solution of each small block
        system in turn.  ``"global"`` (default) also keeps the null
        directions of the block systems and projects them out at the end,
        which yields the solution of least Frobenius norm over all of
        ``X Y - Y X^T = N2``.

    Returns
    -------
    Y : ndarray
        Exactly symmetric.

    Raises
    ------
    InconsistentSystem
        A block system has no solution to working accuracy, which happens
        when `N2` is not skew-symmetric or `X` does not match it.
    """
    if minimal_norm not in ("global", "blockwise"):
        raise ValueError(f"unknown minimal_norm mode {minimal_norm!r}")
    X, N, n, blocks = _prepare(X, N2, blocks)
    track = minimal_norm == "global"
    cols = _Columns(n)
    xnorm = frobenius_norm(X)
    r2 = 1.0 / math.sqrt(2.0)
    # (y11, sqrt(2) y12, y22) -> vec of a symmetric 2x2 block
    sym2 = np.array([[1.0, 0.0, 0.0], [0.0, r2, 0.0], [0.0, r2, 0.0], [0.0, 0.0, 1.0]])

    for i in range(len(blocks) - 1, -1, -1):
        si, p = blocks[i]
        ei = si + p
        for j in range(i, -1, -1):
            sj, q = blocks[j]
            ej = sj + q
            Y = cols.view()
            R = Y.shape[2]
            C = np.zeros((p, q, R))
            C[:, :, 0] = N[si:ei, sj:ej]
            if ei < n:
                C -= np.einsum("ik,kjr->ijr", X[si:ei, ei:], Y[ei:, sj:ej, :])
                _tally(ctx, adds=p * q * (n - ei) * R, muls=p * q * (n - ei) * R)
            if ej < n:
                C += np.einsum("ikr,jk->ijr", Y[si:ei, ej:, :], X[sj:ej, ej:])
                _tally(ctx, adds=p * q * (n - ej) * R, muls=p * q * (n - ej) * R)
            c = C.transpose(1, 0, 2).reshape(p * q, R)  # column-major vec
            K = np.kron(np.eye(q), X[si:ei, si:ei]) - np.kron(X[sj:ej, sj:ej], np.eye(p))
            S = None
            if i == j:
                S = sym2 if p == 2 else np.ones((1, 1))
                K = K @ S
            sol, null = _min_norm(K, c)
            kr, kc = K.shape
            _tally(ctx, adds=_svd_flops(kr, kc) + 2 * kr * kc * R,
                   muls=_svd_flops(kr, kc) + 2 * kr * kc * R, divs=kc * R)

            resid = K @ sol - c
            scale = (np.linalg.norm(c, axis=0)
                     + np.linalg.norm(K) * np.linalg.norm(sol, axis=0)
                     + xnorm * np.sqrt(cols.sumsq[:R]))
            bad = np.linalg.norm(resid, axis=0) > CONSISTENCY_TOL * scale
            if np.any(bad):
                raise InconsistentSystem(
                    f"block ({i}, {j}) of X Y - Y X^T = N2 has no solution; "
                    "is N2 skew-symmetric?")

            if track and null.shape[1]:
                # each null direction becomes a fresh column, zero elsewhere so far
                cols.grow(null.shape[1])
                sol = np.hstack((sol, null))
                Y = cols.view()
            full = S @ sol if S is not None else sol
            blk = full.reshape(q, p, -1).transpose(1, 0, 2)
            Y[si:ei, sj:ej, :] = blk
            weight = np.sum(blk * blk, axis=(0, 1))
            if i != j:
                Y[sj:ej, si:ei, :] = blk.transpose(1, 0, 2)
                weight = 2.0 * weight
            cols.sumsq[:cols.used] += weight

    Y = cols.view()
    Yp = Y[:, :, 0].copy()
    d = Y.shape[2] - 1
    if d:
        B = Y[:, :, 1:].reshape(n * n, d)
        coef = np.linalg.lstsq(B, Yp.ravel(), rcond=None)[0]
        Yp -= (B @ coef).reshape(n, n)
        m2 = n * n
        _tally(ctx, adds=2 * d * d * m2 + 2 * m2 * d, muls=2 * d * d * m2 + 2 * m2 * d)
    return 0.5 * (Yp + Yp.T)


def form_structured_root(U1, U2, X, Y, blocks, sign, ctx=None) -> np.ndarray:
    """``U [[X, Y], [0, sign X^T]] U^T`` for ``U = [[U1, U2], [-U2, U1]]``.

    With ``V1 = [U1, U2]`` and ``V2 = [-U2, U1]`` the three independent
    blocks of the result are ``V1 Z V1^T``, ``V1 Z V2^T`` and ``V2 Z V1^T``;
    the last two are symmetric or skew-symmetric, so only half of each is
    formed.  The lower-right block is ``sign`` times the transposed
    upper-left one.
    """
    n = X.shape[0]
    U1X = mul_quasi_upper(U1, X, blocks, ctx)
    U2X = mul_quasi_upper(U2, X, blocks, ctx)
    U1Xt = mul_quasi_lower(U1, X, blocks, ctx)
    U2Xt = mul_quasi_lower(U2, X, blocks, ctx)
    B1 = np.hstack((U1X, mat_mul(U1, Y, ctx) + sign * U2Xt))
    B2 = np.hstack((-U2X, sign * U1Xt - mat_mul(U2, Y, ctx)))
    _tally(ctx, adds=2 * n * n)
    V1t = np.vstack((U1.T, U2.T))
    V2t = np.vstack((-U2.T, U1.T))
    off_skew = sign == 1
    X11 = mat_mul(B1, V1t, ctx)
    X12 = mul_structured(B1, V2t, skew=off_skew, ctx=ctx)
    X21 = mul_structured(B2, V1t, skew=off_skew, ctx=ctx)
    return np.block([[X11, X12], [X21, sign * X11.T]])


def _coerce(W, tol):
    if isinstance(W, SkewHamiltonianMatrix):
        return W
    return pack(as_matrix(W, "W"), tol)


def _structured_root(W, kind, ctx, tol, minimal_norm="global"):
    W = _coerce(W, tol)
    form = skew_hamiltonian_schur(W, ctx)
    check_root_spectrum(form.N1, form.blocks, scale=frobenius_norm(W.full()))
    root = sqrt_quasi_triangular(form.N1, form.blocks, ctx=ctx)
    X = root.Z
    if kind == SKEW_HAMILTONIAN:
        Y = solve_structured_lyapunov(X, form.N2, form.blocks, ctx)
        sign = 1
    else:
        Y = solve_singular_sylvester(X, form.N2, form.blocks, ctx, minimal_norm)
        sign = -1
    full = form_structured_root(form.U1, form.U2, X, Y, form.blocks, sign, ctx)
    return StructuredRoot(X, Y, kind, full, form)


def sqrt_skew_hamiltonian(W, ctx=None, tol=1e-12) -> StructuredRoot:
    """Skew-Hamiltonian square root of a skew-Hamiltonian matrix.

    The root is a function of `W` (the principal root when `W` has no
    eigenvalues on the closed negative real axis).

    Parameters
    ----------
    W : SkewHamiltonianMatrix or (2n, 2n) array_like
        A full matrix is packed after checking its structure to `tol`.
    ctx : FlopCounter, optional
    tol : float
        Relative tolerance for accepting a full matrix as skew-Hamiltonian.

    Raises
    ------
    StructureError, NegativeRealEigenvalue, SingularMatrix, ConvergenceError
    """
    return _structured_root(W, SKEW_HAMILTONIAN, ctx, tol)


def sqrt_hamiltonian(W, ctx=None, tol=1e-12, minimal_norm="global") -> StructuredRoot:
    """Hamiltonian square root of a skew-Hamiltonian matrix.

    Such a root is never a function of `W`.  ``X`` is the principal root of
    ``N1`` and ``Y`` the minimal-norm symmetric solution of
    ``X Y - Y X^T = N2`` (see :func:`solve_singular_sylvester`).
    """
    return _structured_root(W, HAMILTONIAN, ctx, tol, minimal_norm)
