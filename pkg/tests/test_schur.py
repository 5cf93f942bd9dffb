import numpy as np
import pytest

from shsqrt.errors import ConvergenceError
from shsqrt.generators import example1
from shsqrt.matcore import FlopCounter
from shsqrt.schur import francis_qr, hessenberg_reduce, real_schur, spectrum_of


def test_hessenberg_of_hessenberg_is_identity():
    A = np.triu(np.arange(1.0, 26.0).reshape(5, 5), -1)
    Q, H = hessenberg_reduce(A)
    assert np.array_equal(Q, np.eye(5))
    assert np.array_equal(H, A)


def test_hessenberg_of_symmetric_is_tridiagonal():
    rng = np.random.default_rng(0)
    S = rng.standard_normal((6, 6))
    S = S + S.T
    Q, H = hessenberg_reduce(S)
    assert np.max(np.abs(np.triu(H, 2))) <= 1e-14 * np.linalg.norm(S)


def test_hessenberg_reconstruction():
    A = np.random.default_rng(5).standard_normal((5, 5))
    Q, H = hessenberg_reduce(A)
    assert np.linalg.norm(Q.T @ A @ Q - H) <= 1e-14 * np.linalg.norm(A)
    assert np.allclose(Q.T @ Q, np.eye(5), atol=1e-15)
    assert not np.any(np.tril(H, -2))


def test_francis_diagonal_is_fixed():
    H = np.diag([3.0, -1.0, 2.0])
    form = francis_qr(H)
    assert np.array_equal(form.R, H)
    assert np.array_equal(form.Q, np.eye(3))
    assert form.blocks == ((0, 1), (1, 1), (2, 1))


def test_francis_rotation_block():
    form = francis_qr(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    assert form.blocks == ((0, 2),)
    ev = spectrum_of(form).eigenvalues
    assert sorted(ev.imag) == pytest.approx([-1.0, 1.0])
    assert ev.real == pytest.approx([0.0, 0.0], abs=1e-15)


def test_francis_splits_real_pair():
    form = francis_qr(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert form.blocks == ((0, 1), (1, 1))
    assert sorted(np.diag(form.R)) == pytest.approx([-1.0, 1.0])


def test_real_schur_trivial():
    form = real_schur(np.eye(3))
    assert np.array_equal(form.R, np.eye(3))
    form = real_schur(np.diag([1.0, 4.0]))
    assert sorted(np.diag(form.R)) == [1.0, 4.0]


def test_example1_block_spectrum():
    # the whole example W has three positive real eigenvalues and one pair
    W = example1().full()
    form = real_schur(W)
    ev = spectrum_of(form).eigenvalues
    real = ev[np.abs(ev.imag) < 1e-8]
    pair = ev[np.abs(ev.imag) >= 1e-8]
    assert len(real) == 6 and len(pair) == 4
    assert np.all(real.real > 0)
    assert len(np.unique(np.round(real.real, 6))) == 3


def test_spectrum_of_pair_block():
    R = np.array([[1.5, 2.0], [-0.5, 1.5]])
    ev = spectrum_of((R, ((0, 2),))).eigenvalues
    assert ev == pytest.approx([1.5 + 1j, 1.5 - 1j])


def test_real_schur_random_matches_lapack():
    rng = np.random.default_rng(4)
    A = rng.standard_normal((12, 12))
    form = real_schur(A)
    assert np.linalg.norm(form.Q @ form.R @ form.Q.T - A) <= 1e-13 * np.linalg.norm(A)
    ours = np.sort_complex(spectrum_of(form).eigenvalues)
    ref = np.sort_complex(np.linalg.eigvals(A))
    assert np.allclose(ours, ref, atol=1e-10)


def test_convergence_error_is_reported(monkeypatch):
    import shsqrt.schur as schur
    monkeypatch.setattr(schur, "MAX_ITERATIONS", 0)
    A = np.random.default_rng(0).standard_normal((6, 6))
    with pytest.raises(ConvergenceError):
        schur.real_schur(A)


def test_flops_are_cubic():
    rng = np.random.default_rng(7)
    counts = []
    for n in (20, 40):
        ctx = FlopCounter()
        real_schur(rng.standard_normal((n, n)), ctx)
        counts.append(ctx.total())
    assert 5 < counts[1] / counts[0] < 11
