"""Dense matrix kernels with analytic flop accounting.

Matrices are plain C-ordered (row-major) ``float64`` numpy arrays.  Every
kernel that performs arithmetic takes an optional :class:`FlopCounter`
and increments it by the exact operation count of the algorithm it
implements; numpy's own internals are never inspected.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError, SingularMatrix

EPS = np.finfo(float).eps


@dataclass
class FlopCounter:
    """Running tally of floating point operations, split by kind."""

    adds: int = 0
    muls: int = 0
    divs: int = 0
    sqrts: int = 0

    def count(self, adds=0, muls=0, divs=0, sqrts=0):
        self.adds += int(adds)
        self.muls += int(muls)
        self.divs += int(divs)
        self.sqrts += int(sqrts)

    def total(self) -> int:
        return self.adds + self.muls + self.divs + self.sqrts

    def snapshot(self) -> dict:
        return {"adds": self.adds, "muls": self.muls, "divs": self.divs,
                "sqrts": self.sqrts, "total": self.total()}

    def copy(self) -> "FlopCounter":
        return FlopCounter(self.adds, self.muls, self.divs, self.sqrts)


def _tally(ctx, adds=0, muls=0, divs=0, sqrts=0):
    if ctx is not None:
        ctx.count(adds, muls, divs, sqrts)


def as_matrix(M, name="matrix") -> np.ndarray:
    """Copy `M` into a fresh row-major float64 array, rejecting NaN/Inf."""
    A = np.array(M, dtype=float, order="C", copy=True)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if A.ndim != 2:
        raise ShapeError(f"{name} must be two-dimensional, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    return A


def require_square(A, name="matrix"):
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {A.shape}")


def mat_mul(A, B, ctx: FlopCounter | None = None) -> np.ndarray:
    """Dense product ``A @ B``; charges m*k*n multiplies and adds."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise ShapeError(f"cannot multiply {A.shape} by {B.shape}")
    m, k = A.shape
    n = B.shape[1]
    _tally(ctx, adds=m * k * n, muls=m * k * n)
    return A @ B


def mul_quasi_upper(A, T, blocks, ctx=None) -> np.ndarray:
    """``A @ T`` for block upper triangular `T`, skipping its zero part.

    `blocks` is the diagonal partition of `T` as ``(start, size)`` pairs.
    """
    A = np.asarray(A, dtype=float)
    out = np.zeros((A.shape[0], T.shape[1]))
    m = A.shape[0]
    for s, sz in blocks:
        e = s + sz
        out[:, s:e] = A[:, :e] @ T[:e, s:e]
        _tally(ctx, adds=m * e * sz, muls=m * e * sz)
    return out


def mul_quasi_lower(A, T, blocks, ctx=None) -> np.ndarray:
    """``A @ T.T`` for block upper triangular `T`, skipping its zero part."""
    A = np.asarray(A, dtype=float)
    n = T.shape[0]
    out = np.zeros((A.shape[0], n))
    m = A.shape[0]
    for s, sz in blocks:
        e = s + sz
        out[:, s:e] = A[:, s:] @ T[s:e, s:].T
        _tally(ctx, adds=m * (n - s) * sz, muls=m * (n - s) * sz)
    return out


def mul_structured(A, B, skew, ctx=None) -> np.ndarray:
    """``A @ B`` when the product is known to be symmetric or skew-symmetric.

    Only the upper triangle is computed (strict upper triangle when skew),
    row by row; the rest is mirrored with the appropriate sign, which also
    makes the structure exact.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    n, k = A.shape
    if B.shape != (k, n):
        raise ShapeError(f"cannot form square product of {A.shape} and {B.shape}")
    C = np.zeros((n, n))
    first = 1 if skew else 0
    for r in range(n - first):
        c0 = r + first
        C[r, c0:] = A[r] @ B[:, c0:]
        _tally(ctx, adds=k * (n - c0), muls=k * (n - c0))
    if skew:
        return C - C.T
    return C + np.triu(C, 1).T


def frobenius_norm(M) -> float:
    """Frobenius norm, scaled against overflow."""
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return 0.0
    scale = np.max(np.abs(M))
    if not np.isfinite(scale):
        return float(scale)
    if scale == 0.0:
        return 0.0
    return float(scale * np.sqrt(np.sum((M / scale) ** 2)))


@dataclass(frozen=True)
class GivensRotation:
    """Plane rotation acting on coordinates `i` and `j`.

    ``G.T @ [a, b] = [r, 0]`` for the pair it was built from, i.e.
    rows are updated as ``x_i <- c x_i + s x_j``, ``x_j <- -s x_i + c x_j``.
    """

    c: float
    s: float
    i: int = 0
    j: int = 1

    def apply_left(self, M):
        """Return ``G.T @ M``."""
        M = np.array(M, dtype=float)
        xi, xj = M[self.i].copy(), M[self.j].copy()
        M[self.i] = self.c * xi + self.s * xj
        M[self.j] = -self.s * xi + self.c * xj
        return M

    def apply_right(self, M):
        """Return ``M @ G``."""
        return self.apply_left(np.asarray(M, dtype=float).T).T.copy()

    def matrix(self, n):
        G = np.eye(n)
        G[self.i, self.i] = G[self.j, self.j] = self.c
        G[self.i, self.j] = -self.s
        G[self.j, self.i] = self.s
        return G


def make_givens(a: float, b: float, i: int = 0, j: int = 1, ctx=None) -> GivensRotation:
    """Rotation with ``c*a + s*b = r`` and ``-s*a + c*b = 0``."""
    if b == 0.0:
        return GivensRotation(1.0, 0.0, i, j)
    if a == 0.0:
        return GivensRotation(0.0, 1.0 if b > 0 else -1.0, i, j)
    r = math.hypot(a, b)
    _tally(ctx, adds=1, muls=2, divs=2, sqrts=1)
    return GivensRotation(a / r, b / r, i, j)


@dataclass(frozen=True)
class HouseholderReflector:
    """``H = I - beta v v^T`` with ``v[0] == 1``."""

    v: np.ndarray
    beta: float
    alpha: float = field(default=0.0)  # value of H @ x in its leading slot

    def apply_left(self, M):
        M = np.array(M, dtype=float)
        if self.beta != 0.0:
            reflect_rows(M, self.v, self.beta)
        return M

    def apply_right(self, M):
        M = np.array(M, dtype=float)
        if self.beta != 0.0:
            reflect_cols(M, self.v, self.beta)
        return M

    def matrix(self):
        v = np.asarray(self.v, dtype=float)
        return np.eye(v.size) - self.beta * np.outer(v, v)


def make_householder(x, ctx=None) -> HouseholderReflector:
    """Reflector mapping `x` onto a multiple of e1.

    The sign of the target is opposite to ``x[0]`` so forming ``v`` never
    cancels.  A vector that already has a zero tail yields the identity.
    """
    x = np.asarray(x, dtype=float).ravel()
    k = x.size
    if k == 0:
        raise ShapeError("cannot build a reflector from an empty vector")
    v = np.zeros(k)
    v[0] = 1.0
    tail = x[1:]
    if k == 1 or not np.any(tail):
        return HouseholderReflector(v, 0.0, float(x[0]))
    norm = frobenius_norm(x)
    _tally(ctx, adds=k, muls=2 * k, divs=k, sqrts=1)
    beta_val = -math.copysign(norm, x[0])
    v[1:] = tail / (x[0] - beta_val)
    tau = (beta_val - x[0]) / beta_val
    _tally(ctx, adds=3, divs=k)
    return HouseholderReflector(v, tau, beta_val)


# In-place kernels used inside the factorisations.  `M` is updated where it
# stands, so callers pass views such as ``H[k:k+3, c0:]``.

def reflect_rows(M, v, beta, ctx=None):
    """``M <- (I - beta v v^T) M`` in place."""
    k, m = M.shape
    w = v @ M
    M -= np.outer(beta * v, w)
    _tally(ctx, adds=2 * k * m - m, muls=2 * k * m + k)


def reflect_cols(M, v, beta, ctx=None):
    """``M <- M (I - beta v v^T)`` in place."""
    m, k = M.shape
    w = M @ v
    M -= np.outer(w, beta * v)
    _tally(ctx, adds=2 * k * m - m, muls=2 * k * m + k)


def rotate_rows(M, i, j, c, s, ctx=None):
    """Rows ``i, j`` of `M` <- ``[[c, s], [-s, c]] @ [row_i; row_j]`` in place."""
    xi = M[i].copy()
    xj = M[j].copy()
    M[i] = c * xi + s * xj
    M[j] = c * xj - s * xi
    m = M.shape[1]
    _tally(ctx, adds=2 * m, muls=4 * m)


def rotate_cols(M, i, j, c, s, ctx=None):
    """Columns ``i, j`` of `M` <- ``[col_i, col_j] @ [[c, -s], [s, c]]`` in place."""
    xi = M[:, i].copy()
    xj = M[:, j].copy()
    M[:, i] = c * xi + s * xj
    M[:, j] = c * xj - s * xi
    m = M.shape[0]
    _tally(ctx, adds=2 * m, muls=4 * m)


def solve_complete_pivoting(A, b, ctx=None, tol=None) -> np.ndarray:
    """Solve ``A x = b`` by Gaussian elimination with complete pivoting.

    Intended for the tiny (order 1, 2 or 4) systems of the block
    recursions.  Raises :class:`SingularMatrix` when a pivot falls below
    ``tol`` (default ``n * eps * max|A|``).
    """
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float).ravel()
    n = A.shape[0]
    if A.shape != (n, n) or b.size != n:
        raise ShapeError(f"incompatible system {A.shape} / {b.shape}")
    if tol is None:
        tol = n * EPS * max(np.max(np.abs(A)), np.finfo(float).tiny)
    perm = np.arange(n)
    for k in range(n):
        sub = np.abs(A[k:, k:])
        p, q = np.unravel_index(np.argmax(sub), sub.shape)
        p += k
        q += k
        if abs(A[p, q]) <= tol:
            raise SingularMatrix(f"pivot {A[p, q]:.3e} below tolerance {tol:.3e}")
        if p != k:
            A[[k, p]] = A[[p, k]]
            b[[k, p]] = b[[p, k]]
        if q != k:
            A[:, [k, q]] = A[:, [q, k]]
            perm[[k, q]] = perm[[q, k]]
        r = n - k - 1
        if r:
            l = A[k + 1:, k] / A[k, k]
            A[k + 1:, k + 1:] -= np.outer(l, A[k, k + 1:])
            b[k + 1:] -= l * b[k]
            _tally(ctx, adds=r * r + r, muls=r * r + r, divs=r)
    y = np.zeros(n)
    for k in range(n - 1, -1, -1):
        y[k] = (b[k] - A[k, k + 1:] @ y[k + 1:]) / A[k, k]
        _tally(ctx, adds=n - k, muls=n - k - 1, divs=1)
    x = np.empty(n)
    x[perm] = y
    return x
