"""Real Schur decomposition: Householder Hessenberg reduction followed by
the Francis double-shift QR iteration.

The resulting quasi-upper-triangular factor only ever keeps 2x2 diagonal
blocks whose eigenvalues are a nonreal conjugate pair; 2x2 blocks with real
eigenvalues are split by a final rotation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, ShapeError
from .matcore import (EPS, _tally, as_matrix, frobenius_norm, make_householder,
                      reflect_cols, reflect_rows, require_square, rotate_cols,
                      rotate_rows)

MAX_ITERATIONS = 30
EXCEPTIONAL_SHIFT_AT = (10, 20)


@dataclass(frozen=True)
class RealSchurForm:
    """``A = Q @ R @ Q.T`` with `R` quasi-upper-triangular.

    `blocks` lists the diagonal blocks of `R` as ``(start, size)`` pairs,
    ``size`` being 1 or 2.
    """

    Q: np.ndarray
    R: np.ndarray
    blocks: tuple

    @property
    def n(self):
        return self.R.shape[0]


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray  # complex, conjugate pairs adjacent

    def __len__(self):
        return len(self.eigenvalues)


def block_partition(R) -> tuple:
    """Read the 1x1/2x2 diagonal block structure off the subdiagonal of `R`."""
    n = R.shape[0]
    blocks = []
    i = 0
    while i < n:
        if i + 1 < n and R[i + 1, i] != 0.0:
            blocks.append((i, 2))
            i += 2
        else:
            blocks.append((i, 1))
            i += 1
    return tuple(blocks)


def hessenberg_reduce(A, ctx=None):
    """Orthogonal reduction ``H = Q.T @ A @ Q`` to upper Hessenberg form.

    Parameters
    ----------
    A : (n, n) array_like
    ctx : FlopCounter, optional

    Returns
    -------
    Q, H : ndarray
        `Q` orthogonal; `H` with exact zeros below the first subdiagonal.
    """
    H = as_matrix(A, "A")
    require_square(H, "A")
    n = H.shape[0]
    reflectors = []
    for k in range(n - 2):
        refl = make_householder(H[k + 1:, k], ctx)
        if refl.beta == 0.0:
            continue
        reflect_rows(H[k + 1:, k:], refl.v, refl.beta, ctx)
        reflect_cols(H[:, k + 1:], refl.v, refl.beta, ctx)
        H[k + 1, k] = refl.alpha
        H[k + 2:, k] = 0.0
        reflectors.append((k, refl))
    # backward accumulation: the partial product is the identity outside
    # its trailing block
    Q = np.eye(n)
    for k, refl in reversed(reflectors):
        reflect_rows(Q[k + 1:, k + 1:], refl.v, refl.beta, ctx)
    return Q, H


def _deflation_point(H, hi, fallback, stalled=False):
    """Index ``l`` such that ``H[l, l-1]`` is negligible (set to zero), or 0.

    A subdiagonal entry is negligible when it is below eps times the sum of
    its two diagonal neighbours.  Once the iteration has stalled the test
    is widened to eps * ||H||_F, which is still backward stable.  This
    matters for matrices with repeated eigenvalues, e.g. skew-Hamiltonian
    ones: their splitting entries bottom out at rounding level, just above
    the local threshold.
    """
    k = hi
    while k > 0:
        scale = abs(H[k - 1, k - 1]) + abs(H[k, k])
        if scale == 0.0 or stalled:
            scale = max(scale, fallback)
        if abs(H[k, k - 1]) <= EPS * scale:
            H[k, k - 1] = 0.0
            return k
        k -= 1
    return 0


def _split_2x2(H, Q, p, ctx):
    """Triangularise the 2x2 block at ``p`` if its eigenvalues are real."""
    a, b = H[p, p], H[p, p + 1]
    c, d = H[p + 1, p], H[p + 1, p + 1]
    if c == 0.0:
        return
    half = 0.5 * (a - d)
    disc = half * half + b * c
    _tally(ctx, adds=2, muls=3)
    if disc < 0.0:
        return
    z = half + math.copysign(math.sqrt(disc), half)
    lam = d + z
    # eigenvector for lam from either row of (B - lam I)
    v1 = (b, lam - a)
    v2 = (z, c)
    v = v1 if math.hypot(*v1) >= math.hypot(*v2) else v2
    r = math.hypot(*v)
    cs, sn = v[0] / r, v[1] / r
    _tally(ctx, adds=6, muls=6, divs=2, sqrts=4)
    rotate_rows(H[:, p:], p, p + 1, cs, sn, ctx)
    rotate_cols(H[:p + 2], p, p + 1, cs, sn, ctx)
    rotate_cols(Q, p, p + 1, cs, sn, ctx)
    H[p + 1, p] = 0.0


def _double_shift_sweep(H, Q, lo, hi, s, t, ctx):
    """One implicit double-shift bulge chase over rows/cols ``lo..hi``."""
    x = H[lo, lo] * H[lo, lo] + H[lo, lo + 1] * H[lo + 1, lo] - s * H[lo, lo] + t
    y = H[lo + 1, lo] * (H[lo, lo] + H[lo + 1, lo + 1] - s)
    z = H[lo + 1, lo] * H[lo + 2, lo + 1]
    _tally(ctx, adds=6, muls=7)
    for k in range(lo, hi - 1):
        refl = make_householder((x, y, z), ctx)
        if refl.beta != 0.0:
            c0 = max(lo, k - 1)
            reflect_rows(H[k:k + 3, c0:], refl.v, refl.beta, ctx)
            r1 = min(k + 4, hi + 1)
            reflect_cols(H[:r1, k:k + 3], refl.v, refl.beta, ctx)
            reflect_cols(Q[:, k:k + 3], refl.v, refl.beta, ctx)
        if k > lo:
            H[k + 1, k - 1] = 0.0
            H[k + 2, k - 1] = 0.0
        x = H[k + 1, k]
        y = H[k + 2, k]
        if k < hi - 2:
            z = H[k + 3, k]
    refl = make_householder((x, y), ctx)
    if refl.beta != 0.0:
        reflect_rows(H[hi - 1:hi + 1, hi - 2:], refl.v, refl.beta, ctx)
        reflect_cols(H[:hi + 1, hi - 1:hi + 1], refl.v, refl.beta, ctx)
        reflect_cols(Q[:, hi - 1:hi + 1], refl.v, refl.beta, ctx)
    H[hi, hi - 2] = 0.0


def francis_qr(H, ctx=None, Q=None) -> RealSchurForm:
    """Reduce an upper Hessenberg matrix to real Schur form.

    Parameters
    ----------
    H : (n, n) array_like
        Upper Hessenberg.
    ctx : FlopCounter, optional
    Q : (m, n) array_like, optional
        Transformation to accumulate into (default identity); the returned
        ``Q`` is ``Q @ Z`` where ``Z`` is the orthogonal factor of the QR
        iteration.

    Raises
    ------
    ConvergenceError
        When one eigenvalue (or pair) takes more than 30 sweeps, exceptional
        shifts at sweeps 10 and 20 notwithstanding.
    """
    H = as_matrix(H, "H")
    require_square(H, "H")
    n = H.shape[0]
    if n > 2 and np.any(np.tril(H, -2)):
        raise ShapeError("francis_qr expects an upper Hessenberg matrix")
    Q = np.eye(n) if Q is None else as_matrix(Q, "Q")
    fallback = max(frobenius_norm(H), np.finfo(float).tiny)

    hi = n - 1
    its = 0
    while hi >= 0:
        lo = _deflation_point(H, hi, fallback, its >= EXCEPTIONAL_SHIFT_AT[0])
        if lo == hi:
            hi -= 1
            its = 0
            continue
        if lo == hi - 1:
            _split_2x2(H, Q, lo, ctx)
            hi -= 2
            its = 0
            continue
        if its >= MAX_ITERATIONS:
            raise ConvergenceError(
                f"no convergence after {its} sweeps at rows {lo}..{hi}")
        its += 1
        if its == EXCEPTIONAL_SHIFT_AT[0]:
            w = abs(H[lo + 1, lo]) + abs(H[lo + 2, lo + 1])
            h11 = 0.75 * w + H[lo, lo]
        elif its == EXCEPTIONAL_SHIFT_AT[1]:
            w = abs(H[hi, hi - 1]) + abs(H[hi - 1, hi - 2])
            h11 = 0.75 * w + H[hi, hi]
        else:
            w = None
        if w is None:
            a, b = H[hi - 1, hi - 1], H[hi - 1, hi]
            c, d = H[hi, hi - 1], H[hi, hi]
            s, t = a + d, a * d - b * c
        else:
            s, t = 2.0 * h11, h11 * h11 + 0.4375 * w * w
        _tally(ctx, adds=2, muls=2)
        _double_shift_sweep(H, Q, lo, hi, s, t, ctx)

    H[np.tril_indices(n, -2)] = 0.0
    return RealSchurForm(Q, H, block_partition(H))


def real_schur(A, ctx=None) -> RealSchurForm:
    """Real Schur decomposition ``A = Q R Q^T`` of a square matrix."""
    Q, H = hessenberg_reduce(A, ctx)
    return francis_qr(H, ctx, Q=Q)


def spectrum_of(form) -> Spectrum:
    """Eigenvalues of a quasi-triangular factor, read block by block.

    Accepts a :class:`RealSchurForm` or any object with ``R`` and ``blocks``
    attributes; a bare ``(R, blocks)`` tuple works too.
    """
    if isinstance(form, tuple):
        R, blocks = form
    else:
        R, blocks = form.R, form.blocks
    out = []
    for s, sz in blocks:
        if sz == 1:
            out.append(complex(R[s, s], 0.0))
            continue
        r11, r12 = R[s, s], R[s, s + 1]
        r21, r22 = R[s + 1, s], R[s + 1, s + 1]
        theta = 0.5 * (r11 + r22)
        mu = math.sqrt(max(-0.25 * (r11 - r22) ** 2 - r12 * r21, 0.0))
        out.append(complex(theta, mu))
        out.append(complex(theta, -mu))
    return Spectrum(np.array(out, dtype=complex))
