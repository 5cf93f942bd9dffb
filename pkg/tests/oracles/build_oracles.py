"""Regenerate ``frozen.json``: reference values computed without the package.

Everything here is independent of ``shsqrt``: exact rationals for the
hand-checkable cases, and 50-digit mpmath for matrix square roots and the
brute-force Kronecker solves.  Run from the repository root:

    python3 tests/oracles/build_oracles.py
"""
import json
from fractions import Fraction
from pathlib import Path

import mpmath as mp
import numpy as np

mp.mp.dps = 50
OUT = Path(__file__).with_name("frozen.json")


def to_mp(M):
    return mp.matrix([[mp.mpf(float(x)) for x in row] for row in np.atleast_2d(M)])


def to_list(M):
    return [[float(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def mp_norm(M):
    return mp.sqrt(sum(M[i, j] ** 2 for i in range(M.rows) for j in range(M.cols)))


# ---- hand cases -----------------------------------------------------------

def hand_cases():
    out = {}
    # [[1,2],[3,4]] @ [[0],[1]] by a scalar loop
    A = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    x = [Fraction(0), Fraction(1)]
    out["matmul_2x2_by_e2"] = [[float(sum(A[i][k] * x[k] for k in range(2)))] for i in range(2)]

    r = mp.sqrt(3 ** 2 + 4 ** 2)
    out["frobenius_3_4"] = float(r)
    out["givens_3_4"] = [float(3 / r), float(4 / r)]
    # reflector of (3, 4): image is (-sign(3)*5, 0)
    out["householder_3_4_image"] = [float(-r), 0.0]

    # relative residual of I against 2 I_2, alpha of diag(2,3) against diag(4,9)
    out["residual_I_vs_2I"] = float(mp.sqrt(2) / mp.sqrt(8))
    out["alpha_diag23"] = float(mp.mpf(13) / mp.sqrt(97))

    # 2x2 roots, checked by squaring in mp
    for name, M in (("sqrt_rot", [[0, 1], [-1, 0]]), ("sqrt_0_4_m1_0", [[0, 4], [-1, 0]])):
        Z = mp.sqrtm(to_mp(np.array(M, float)))
        assert mp_norm(Z * Z - to_mp(np.array(M, float))) < mp.mpf(10) ** -40
        out[name] = to_list(Z)

    # [[1,1],[0,4]]: z solves 1*z + z*2 = 1
    out["sqrt_upper_1_1_4"] = [[1.0, float(Fraction(1, 3))], [0.0, 2.0]]

    # Lyapunov X=[[1,1],[0,2]], N2=[[0,c],[-c,0]] -> y12 = c/3 ; Sylvester X=diag(1,2) -> y12=-c
    c = Fraction(7, 5)
    out["lyap_upper_c"] = [float(c), float(c / 3)]
    out["sylv_diag_c"] = [float(c), float(-c)]
    return out


# ---- brute-force Kronecker solves -----------------------------------------

def quasi_upper(rng, n):
    """Random quasi-upper-triangular X with spectrum in the right half-plane."""
    X = np.triu(rng.standard_normal((n, n)))
    blocks = []
    i = 0
    while i < n:
        if i + 1 < n and rng.random() < 0.5:
            a = rng.uniform(0.5, 2.0)
            b, c = rng.uniform(0.3, 2.0, size=2)
            X[i:i + 2, i:i + 2] = [[a, b], [-c, a]]
            blocks.append((i, 2))
            i += 2
        else:
            X[i, i] = rng.uniform(0.5, 3.0)
            blocks.append((i, 1))
            i += 1
    return X, blocks


def kron_operator(X, sign):
    """Column-major matrix of ``Y -> X Y + sign * Y X^T``."""
    n = X.rows
    K = mp.zeros(n * n, n * n)
    for col in range(n * n):
        E = mp.zeros(n, n)
        E[col % n, col // n] = 1
        Img = X * E + sign * (E * X.T)
        for row in range(n * n):
            K[row, col] = Img[row % n, row // n]
    return K


def min_norm_solve(K, rhs):
    U, S, V = mp.svd_r(K)
    smax = max(S[i] for i in range(len(S)))
    cut = smax * mp.mpf(10) ** -30
    sol = mp.zeros(K.cols, 1)
    rank = 0
    for i in range(len(S)):
        if S[i] > cut:
            rank += 1
            coef = sum(U[r, i] * rhs[r] for r in range(K.rows)) / S[i]
            for r in range(K.cols):
                sol[r] += coef * V[i, r]
    res = mp_norm(K * sol - rhs)
    assert res < mp.mpf(10) ** -35 * (1 + mp_norm(rhs)), "oracle system inconsistent"
    return sol, rank


def unvec(v, n):
    return mp.matrix([[v[i + j * n] for j in range(n)] for i in range(n)])


def vec(M):
    n = M.rows
    return mp.matrix([M[i % n, i // n] for i in range(n * n)])


def kronecker_cases():
    cases = []
    for n in (1, 2, 3, 4):
        for seed in range(6):
            rng = np.random.default_rng(1000 * n + seed)
            X, blocks = quasi_upper(rng, n)
            S = rng.standard_normal((n, n))
            N_lyap = S - S.T
            Y0 = rng.standard_normal((n, n))
            Y0 = Y0 + Y0.T
            N_sylv = X @ Y0 - Y0 @ X.T  # skew and consistent by construction
            N_sylv = 0.5 * (N_sylv - N_sylv.T)
            Xm = to_mp(X)
            yl, rank_l = min_norm_solve(kron_operator(Xm, +1), vec(to_mp(N_lyap)))
            assert rank_l == n * n
            # symmetric Y covers every skew right-hand side when the spectrum of
            # X is simple, so the rounded N_sylv stays consistent
            ys, rank_s = min_norm_solve(kron_operator(Xm, -1), vec(to_mp(N_sylv)))
            cases.append({
                "n": n, "seed": seed, "blocks": blocks,
                "X": X.tolist(), "N_lyap": N_lyap.tolist(), "N_sylv": N_sylv.tolist(),
                "Y_lyap": to_list(unvec(yl, n)), "Y_sylv": to_list(unvec(ys, n)),
                "sylv_rank": rank_s,
            })
    return cases


# ---- matrix square roots ----------------------------------------------------

def principal_roots():
    out = {}
    d = 1e-6
    A1 = np.array([[0, d, 1, 0, 0], [-d, 0, 1, d, 0], [-1, -1, 0, d, 1],
                   [0, -d, -d, 0, 1], [0, 0, -1, -1, 0]], float)
    E = np.ones((5, 5))
    W1 = np.block([[E, A1], [-A1.T, E]])
    A2 = np.array([[0, -d, 0, 0], [d, 0, 0, 0], [0, 0, 0, d], [0, 0, -d, 0]], float)
    B2 = np.array([[0, 1, 2, 3], [-1, 0, 2, 3], [-2, -2, 0, 3], [-3, -3, -3, 0]], float)
    W2 = np.block([[A2, B2], [B2, A2.T]])
    rng = np.random.default_rng(8)
    A8 = 4 * np.eye(8) + 0.3 * rng.standard_normal((8, 8))
    for name, M in (("example1", W1), ("example2", W2), ("random8", A8)):
        Z = mp.sqrtm(to_mp(M))
        assert mp_norm(Z * Z - to_mp(M)) < mp.mpf(10) ** -35
        ev = mp.eig(Z)[0]
        assert all(mp.re(e) > 0 for e in ev), "not the principal root"
        out[name] = {"M": M.tolist(), "root": to_list(Z)}
    return out


if __name__ == "__main__":
    data = {"hand": hand_cases(), "kronecker": kronecker_cases(), "roots": principal_roots()}
    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT}")
