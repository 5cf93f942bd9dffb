"""Skew-Hamiltonian structure: validation, compact storage, the symplectic
Paige/Van Loan (PVL) reduction and the real skew-Hamiltonian Schur form.

With ``J = [[0, I], [-I, 0]]`` a matrix ``W`` of order 2n is
skew-Hamiltonian when ``W J = -(W J)^T``, i.e. ``W = [[A, G], [F, A^T]]``
with ``G`` and ``F`` skew-symmetric.  Orthogonal-symplectic matrices have the
form ``[[U1, U2], [-U2, U1]]`` and are stored here by their two blocks.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, StructureError
from .matcore import (_tally, as_matrix, frobenius_norm, make_givens,
                      make_householder, mat_mul, mul_structured, reflect_cols,
                      reflect_rows, rotate_cols, rotate_rows)
from .schur import RealSchurForm, francis_qr

# relative skewness slack accepted when G, F are handed in directly
SKEW_TOL = 1e-12


def symplectic_unit(n):
    """``J`` of order 2n."""
    I = np.eye(n)
    Z = np.zeros((n, n))
    return np.block([[Z, I], [-I, Z]])


def _times_j(M):
    # M @ J without arithmetic: [-M[:, n:], M[:, :n]]
    n = M.shape[0] // 2
    return np.hstack((-M[:, n:], M[:, :n]))


def _even_square(M, name="matrix"):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {M.shape}")
    if M.shape[0] % 2:
        raise ShapeError(f"{name} must have even order, got {M.shape[0]}")
    return M


def skew_part(M):
    """``(M - M^T) / 2``; exactly skew-symmetric in floating point."""
    return 0.5 * (M - M.T)


def orthosymplectic(U1, U2):
    """Assemble ``[[U1, U2], [-U2, U1]]``."""
    return np.block([[U1, U2], [-U2, U1]])


@dataclass(frozen=True)
class SkewHamiltonianMatrix:
    """Compact ``(A, G, F)`` storage of ``W = [[A, G], [F, A^T]]``."""

    A: np.ndarray
    G: np.ndarray
    F: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        n = A.shape[0]
        if A.shape != (n, n):
            raise ShapeError(f"A must be square, got {A.shape}")
        blocks = {"A": A}
        for name in ("G", "F"):
            M = as_matrix(getattr(self, name), name)
            if M.shape != (n, n):
                raise ShapeError(f"{name} must be {n}x{n}, got {M.shape}")
            defect = frobenius_norm(M + M.T)
            if defect > SKEW_TOL * max(1.0, frobenius_norm(M)):
                raise StructureError(f"{name} is not skew-symmetric (defect {defect:.2e})")
            blocks[name] = skew_part(M)
        for name, M in blocks.items():
            M.setflags(write=False)
            object.__setattr__(self, name, M)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def full(self) -> np.ndarray:
        return np.block([[self.A, self.G], [self.F, self.A.T]])

    @classmethod
    def identity(cls, n):
        Z = np.zeros((n, n))
        return cls(np.eye(n), Z, Z)


@dataclass(frozen=True)
class PVLForm:
    """``U^T W U = [[W1, W2], [0, W1^T]]`` with ``U = [[U1, U2], [-U2, U1]]``."""

    U1: np.ndarray
    U2: np.ndarray
    W1: np.ndarray  # upper Hessenberg
    W2: np.ndarray  # skew-symmetric

    @property
    def U(self):
        return orthosymplectic(self.U1, self.U2)

    def block_triangular(self):
        n = self.W1.shape[0]
        return np.block([[self.W1, self.W2], [np.zeros((n, n)), self.W1.T]])


@dataclass(frozen=True)
class SkewHamiltonianSchurForm:
    """``U^T W U = [[N1, N2], [0, N1^T]]``, `N1` in real Schur form."""

    U1: np.ndarray
    U2: np.ndarray
    N1: np.ndarray
    N2: np.ndarray
    blocks: tuple  # diagonal partition of N1

    @property
    def U(self):
        return orthosymplectic(self.U1, self.U2)

    @property
    def n(self):
        return self.N1.shape[0]

    def block_triangular(self):
        n = self.n
        return np.block([[self.N1, self.N2], [np.zeros((n, n)), self.N1.T]])


def validate_skew_hamiltonian(M, tol) -> bool:
    """True iff ``||M J + (M J)^T||_F <= tol * ||M||_F``."""
    M = _even_square(M)
    MJ = _times_j(M)
    return frobenius_norm(MJ + MJ.T) <= tol * frobenius_norm(M)


def pack(M, tol=1e-12) -> SkewHamiltonianMatrix:
    """Extract ``(A, G, F)`` from a full matrix that is skew-Hamiltonian to `tol`.

    The result is exactly structured: ``G`` and ``F`` are replaced by their
    skew parts and the lower-right block is folded into ``A``.
    """
    M = _even_square(as_matrix(M, "W"), "W")
    if not validate_skew_hamiltonian(M, tol):
        MJ = _times_j(M)
        rel = frobenius_norm(MJ + MJ.T) / max(frobenius_norm(M), np.finfo(float).tiny)
        raise StructureError(
            f"matrix is not skew-Hamiltonian: relative defect {rel:.3e} > {tol:.1e}")
    n = M.shape[0] // 2
    A = 0.5 * (M[:n, :n] + M[n:, n:].T)
    return SkewHamiltonianMatrix(A, skew_part(M[:n, n:]), skew_part(M[n:, :n]))


def _skew_similarity(T, v, beta, ctx):
    """``T <- H T H`` in place for skew-symmetric T, ``H = I - beta v v^T``.

    Uses ``H T H = T - beta p v^T + beta v p^T`` with ``p = T v``.  Only the
    strict upper triangle of the rank-two update is formed; the lower one is
    its negated mirror, so T stays exactly skew.
    """
    k = T.shape[0]
    w = beta * (T @ v)
    a, b = np.triu_indices(k, 1)
    T[a, b] += v[a] * w[b] - w[a] * v[b]
    T[b, a] = -T[a, b]
    h = k * (k - 1) // 2
    _tally(ctx, adds=k * k - k + 2 * h, muls=k * k + k + 2 * h)


def _reflect_pair(M, j, refl, ctx, target=None):
    """Similarity of the working matrix by ``H (+) H``; H acts on j+1..n-1.

    `target` names the block (``"A"`` or ``"F"``) whose column j built the
    reflector; that column is set to its exact image.
    """
    n = M.shape[0] // 2
    v, beta = refl.v, refl.beta
    sl = slice(j + 1, n)
    A, G, F = M[:n, :n], M[:n, n:], M[n:, :n]

    # A <- H A H; columns < j of A[sl] are already zero
    reflect_rows(A[sl, j:], v, beta, ctx)
    reflect_cols(A[:, sl], v, beta, ctx)

    # G <- H G H: leading rows by reflection, trailing block by the skew
    # update, the rest mirrored
    reflect_cols(G[:j + 1, sl], v, beta, ctx)
    _skew_similarity(G[sl, sl], v, beta, ctx)
    G[sl, :j + 1] = -G[:j + 1, sl].T

    # F is zero outside row/column j and the trailing block
    if target == "F":
        F[sl, j] = 0.0
        F[j + 1, j] = refl.alpha
    else:
        reflect_rows(F[sl, j:j + 1], v, beta, ctx)
    F[j, sl] = -F[sl, j]
    _skew_similarity(F[sl, sl], v, beta, ctx)

    if target == "A":
        A[sl, j] = 0.0
        A[j + 1, j] = refl.alpha
    M[n:, n:] = A.T


def _symplectic_rotation(M, j, ctx):
    """Rotate coordinates (k, n+k), k = j+1, to annihilate F[k, j] into A[k, j].

    Returns the rotation, or None when there was nothing to do.
    """
    n = M.shape[0] // 2
    k = j + 1
    rot = make_givens(M[k, j], M[n + k, j], ctx=ctx)
    if rot.s == 0.0 and rot.c == 1.0:
        return None
    c, s = rot.c, rot.s
    rotate_rows(M, k, n + k, c, s, ctx)
    rotate_cols(M, k, n + k, c, s, ctx)
    M[n + k, j] = 0.0
    M[n + j, k] = 0.0

    # restore exact structure along the touched rows/columns
    A, G, F, D = M[:n, :n], M[:n, n:], M[n:, :n], M[n:, n:]
    row = 0.5 * (A[k, :] + D[:, k])
    col = 0.5 * (A[:, k] + D[k, :])
    A[k, :] = row
    A[:, k] = col
    A[k, k] = 0.5 * (row[k] + col[k])
    for S in (G, F):
        g = 0.5 * (S[k, :] - S[:, k])
        S[k, :] = g
        S[:, k] = -g
    D[:, :] = A.T
    _tally(ctx, adds=4 * n, muls=4 * n)
    return rot


def _accumulate(n, log, ctx):
    """Form ``U = T_1 T_2 ... T_m`` from the logged transformations.

    The product is built backwards, ``U <- T_t U`` for t = m..1.  Every T_t
    acts on coordinates > j for its step j, and so does the partial product,
    which therefore stays the identity outside its trailing block; only that
    block is touched.
    """
    U1 = np.eye(n)
    U2 = np.zeros((n, n))
    for kind, j, payload in reversed(log):
        sl = slice(j + 1, n)
        if kind == "H":
            v, beta = payload
            reflect_rows(U1[sl, sl], v, beta, ctx)
            reflect_rows(U2[sl, sl], v, beta, ctx)
        else:
            # rows k of U1 and U2 mix as (U1, U2) <- (c U1 + s U2, c U2 - s U1)
            c, s = payload
            k = j + 1
            pair = np.vstack((U1[k, k:], U2[k, k:]))
            rotate_rows(pair, 0, 1, c, s, ctx)
            U1[k, k:] = pair[0]
            U2[k, k:] = pair[1]
    return U1, U2


def pvl_reduce(W: SkewHamiltonianMatrix, ctx=None) -> PVLForm:
    """Symplectic Paige/Van Loan reduction.

    For each column j: a reflector pair clears ``F[j+2:, j]``, a symplectic
    rotation clears ``F[j+1, j]`` against ``A[j+1, j]``, and a second reflector
    pair clears ``A[j+2:, j]``.  ``F`` ends up exactly zero and ``A`` upper
    Hessenberg.
    """
    n = W.n
    M = W.full()
    log = []
    for j in range(n - 1):
        if j + 2 < n:
            refl = make_householder(M[n + j + 1:, j], ctx)
            if refl.beta != 0.0:
                _reflect_pair(M, j, refl, ctx, target="F")
                log.append(("H", j, (refl.v, refl.beta)))
        rot = _symplectic_rotation(M, j, ctx)
        if rot is not None:
            log.append(("G", j, (rot.c, rot.s)))
        if j + 2 < n:
            refl = make_householder(M[j + 1:n, j], ctx)
            if refl.beta != 0.0:
                _reflect_pair(M, j, refl, ctx, target="A")
                log.append(("H", j, (refl.v, refl.beta)))
    U1, U2 = _accumulate(n, log, ctx)
    W1 = np.triu(M[:n, :n], -1)
    W2 = skew_part(M[:n, n:])
    return PVLForm(U1, U2, W1, W2)


def skew_hamiltonian_schur(W: SkewHamiltonianMatrix, ctx=None) -> SkewHamiltonianSchurForm:
    """Real skew-Hamiltonian Schur decomposition of `W`.

    PVL reduction, then Francis QR on the Hessenberg block ``W1 = Q N1 Q^T``;
    the orthogonal-symplectic factor becomes ``U diag(Q, Q)`` and
    ``N2 = Q^T W2 Q``.
    """
    pvl = pvl_reduce(W, ctx)
    form: RealSchurForm = francis_qr(pvl.W1, ctx)
    Q = form.Q
    U1 = mat_mul(pvl.U1, Q, ctx)
    U2 = mat_mul(pvl.U2, Q, ctx)
    N2 = mul_structured(Q.T, mat_mul(pvl.W2, Q, ctx), skew=True, ctx=ctx)
    return SkewHamiltonianSchurForm(U1, U2, form.R, N2, form.blocks)
