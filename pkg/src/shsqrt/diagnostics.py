"""Accuracy and structure metrics for computed square roots, and the report
that bundles them with flop counts."""
from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, fields

import numpy as np

from .errors import ConfigError, ShapeError
from .matcore import FlopCounter, as_matrix, frobenius_norm, mat_mul, require_square
from .sqrtm import sqrtm_real
from .structured import sqrt_hamiltonian, sqrt_skew_hamiltonian
from .symplectic import SkewHamiltonianMatrix, _times_j

ALGORITHMS = {
    "schur": "RealSchur",
    "skewham": "SkewHamiltonianSchur",
    "ham": "HamiltonianSchur",
}


def _pair(Xhat, W):
    X = np.asarray(Xhat, dtype=float)
    W = np.asarray(W, dtype=float)
    if X.ndim != 2 or X.shape != W.shape or X.shape[0] != X.shape[1]:
        raise ShapeError(f"root {X.shape} and matrix {W.shape} must be square of one order")
    return X, W


def relative_residual(Xhat, W) -> float:
    """``||Xhat^2 - W||_F / ||W||_F``."""
    X, W = _pair(Xhat, W)
    return frobenius_norm(mat_mul(X, X) - W) / frobenius_norm(W)


def alpha_stability(Xhat, W) -> float:
    """``||Xhat||_F^2 / ||W||_F``; the Schur methods are stable when this is modest."""
    X, W = _pair(Xhat, W)
    return frobenius_norm(X) ** 2 / frobenius_norm(W)


def structure_defects(M):
    """Distances of `M` from the skew-Hamiltonian and Hamiltonian classes.

    Returns ``(skew_defect, ham_defect)``, namely ``||MJ + (MJ)^T||_F`` and
    ``||MJ - (MJ)^T||_F``, both divided by ``max(1, ||M||_F)``.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
        raise ShapeError(f"structure defects need a square matrix of even order, got {M.shape}")
    MJ = _times_j(M)
    scale = max(1.0, frobenius_norm(M))
    return frobenius_norm(MJ + MJ.T) / scale, frobenius_norm(MJ - MJ.T) / scale


@dataclass(frozen=True)
class SquareRootReport:
    """Outcome of one square-root computation.

    Structure defects are None for odd-order inputs, where they are
    undefined.
    """

    algorithm: str
    order: int
    relative_residual: float
    alpha: float
    hamiltonian_defect: float | None
    skew_hamiltonian_defect: float | None
    flops: dict
    wall_time: float

    def to_json(self, wall_time=True) -> str:
        d = asdict(self)
        if not wall_time:
            d.pop("wall_time")
        return json.dumps(d, indent=2)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        names = {f.name for f in fields(cls)}
        missing = names - set(d) - {"wall_time"}
        if missing:
            raise ValueError(f"report lacks fields {sorted(missing)}")
        d.setdefault("wall_time", math.nan)
        return cls(**{k: d[k] for k in names})


def compute_root(W, algorithm="skewham", ctx=None, tol=1e-12):
    """Run one of the three methods on `W` and measure the result.

    Parameters
    ----------
    W : array_like or SkewHamiltonianMatrix
    algorithm : {"schur", "skewham", "ham"}
        Unstructured real Schur method, or the skew-Hamiltonian /
        Hamiltonian structured methods.
    ctx : FlopCounter, optional
        Receives the flop counts; a fresh one is used if omitted.
    tol : float
        Structure tolerance for accepting a full matrix as skew-Hamiltonian.

    Returns
    -------
    root : ndarray
    report : SquareRootReport
    """
    if algorithm not in ALGORITHMS:
        raise ConfigError(f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}")
    ctx = FlopCounter() if ctx is None else ctx
    if isinstance(W, SkewHamiltonianMatrix):
        full = W.full()
    else:
        full = as_matrix(W, "W")
        require_square(full, "W")
    start = time.perf_counter()
    if algorithm == "schur":
        root = sqrtm_real(full, ctx)
    elif algorithm == "skewham":
        root = sqrt_skew_hamiltonian(W, ctx, tol=tol).root
    else:
        root = sqrt_hamiltonian(W, ctx, tol=tol).root
    elapsed = time.perf_counter() - start
    if full.shape[0] % 2 == 0:
        skew_defect, ham_defect = structure_defects(root)
    else:
        skew_defect = ham_defect = None
    report = SquareRootReport(
        algorithm=ALGORITHMS[algorithm],
        order=full.shape[0],
        relative_residual=relative_residual(root, full),
        alpha=alpha_stability(root, full),
        hamiltonian_defect=ham_defect,
        skew_hamiltonian_defect=skew_defect,
        flops=ctx.snapshot(),
        wall_time=elapsed,
    )
    return root, report
