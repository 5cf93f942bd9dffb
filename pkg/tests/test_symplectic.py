import numpy as np
import pytest

from shsqrt.errors import ShapeError, StructureError
from shsqrt.generators import example1, example2, random_skewham
from shsqrt.matcore import FlopCounter
from shsqrt.schur import real_schur, spectrum_of
from shsqrt.symplectic import (SkewHamiltonianMatrix, pack, pvl_reduce, skew_hamiltonian_schur,
                               symplectic_unit, validate_skew_hamiltonian)


def _orthosymplectic_defects(U):
    n = U.shape[0] // 2
    J = symplectic_unit(n)
    return np.linalg.norm(U.T @ U - np.eye(2 * n)), np.linalg.norm(U @ J @ U.T - J)


def test_validate_cases():
    assert validate_skew_hamiltonian(np.eye(4), 0.0)
    assert not validate_skew_hamiltonian(symplectic_unit(2), 1e-12)
    assert validate_skew_hamiltonian(example2().full(), 0.0)
    with pytest.raises(ShapeError):
        validate_skew_hamiltonian(np.eye(3), 1e-12)


def test_pack_identity_and_example1():
    W = pack(np.eye(4))
    assert np.array_equal(W.A, np.eye(2))
    assert not np.any(W.G) and not np.any(W.F)
    ex = example1()
    P = pack(ex.full(), tol=0.0)
    assert np.array_equal(P.A, np.ones((5, 5)))
    assert np.array_equal(P.G, ex.G)
    assert np.array_equal(P.F, -ex.G.T)


def test_pack_makes_perturbed_input_exact():
    M = random_skewham(6, seed=1).full()
    M[0, 4] += 1e-15
    W = pack(M, tol=1e-12)
    assert validate_skew_hamiltonian(W.full(), 0.0)
    assert np.linalg.norm(W.full() - M) <= 1e-14


def test_pack_rejects_hamiltonian():
    H = np.block([[np.eye(2), np.eye(2)], [np.eye(2), -np.eye(2)]])
    with pytest.raises(StructureError):
        pack(H)


def test_compact_storage_checks_blocks():
    with pytest.raises(StructureError):
        SkewHamiltonianMatrix(np.eye(2), np.ones((2, 2)), np.zeros((2, 2)))
    with pytest.raises(ShapeError):
        SkewHamiltonianMatrix(np.eye(2), np.zeros((3, 3)), np.zeros((2, 2)))


def test_pvl_order_two():
    form = pvl_reduce(SkewHamiltonianMatrix(np.array([[2.5]]), np.zeros((1, 1)), np.zeros((1, 1))))
    assert np.array_equal(form.U, np.eye(2))
    assert form.W1[0, 0] == 2.5 and form.W2[0, 0] == 0.0


def test_pvl_already_reduced():
    rng = np.random.default_rng(3)
    A = np.triu(rng.standard_normal((4, 4)), -1)
    G = rng.standard_normal((4, 4))
    W = SkewHamiltonianMatrix(A, G - G.T, np.zeros((4, 4)))
    form = pvl_reduce(W)
    err = np.linalg.norm(form.U.T @ W.full() @ form.U - form.block_triangular())
    assert err <= 1e-14 * np.linalg.norm(W.full())
    ev = np.sort_complex(np.linalg.eigvals(form.W1))
    assert np.allclose(ev, np.sort_complex(np.linalg.eigvals(A)), atol=1e-12)


@pytest.mark.parametrize("seed", range(4))
def test_pvl_random(seed):
    W = random_skewham(8, seed)
    form = pvl_reduce(W)
    M = W.full()
    err = np.linalg.norm(form.U.T @ M @ form.U - form.block_triangular())
    assert err <= 1e-13 * np.linalg.norm(M)
    assert not np.any(np.tril(form.W1, -2))
    assert np.array_equal(form.W2, -form.W2.T)
    orth, symp = _orthosymplectic_defects(form.U)
    assert orth < 1e-13 and symp < 1e-13


def test_schur_of_identity():
    form = skew_hamiltonian_schur(SkewHamiltonianMatrix.identity(3))
    assert np.allclose(form.N1, np.eye(3))
    assert not np.any(form.N2)


def test_schur_example2_four_distinct_eigenvalues():
    form = skew_hamiltonian_schur(example2())
    ev = spectrum_of((form.N1, form.blocks)).eigenvalues
    assert len(ev) == 4
    assert len(np.unique(np.round(ev, 8))) == 4
    assert np.all(np.abs(ev.real) < 1e-5 * np.abs(ev))
    # real parts are ~1e-20, so compare after ordering by imaginary part
    full = np.linalg.eigvals(example2().full())
    full = full[np.argsort(full.imag)]
    doubled = np.concatenate([ev, ev])
    doubled = doubled[np.argsort(doubled.imag)]
    assert np.allclose(full, doubled, atol=1e-10)


@pytest.mark.parametrize("seed", range(3))
def test_schur_reconstruction(seed):
    W = random_skewham(20, seed)
    form = skew_hamiltonian_schur(W)
    M = W.full()
    assert np.linalg.norm(form.U.T @ M @ form.U - form.block_triangular()) <= 1e-13 * np.linalg.norm(M)
    assert np.array_equal(form.N2, -form.N2.T)
    orth, symp = _orthosymplectic_defects(form.U)
    assert orth < 1e-13 and symp < 1e-13


def test_schur_flops_against_unstructured():
    W = random_skewham(32, seed=0)
    structured, plain = FlopCounter(), FlopCounter()
    skew_hamiltonian_schur(W, structured)
    real_schur(W.full(), plain)
    assert structured.total() / plain.total() <= 0.35
