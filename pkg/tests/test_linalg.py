import numpy as np
import pytest
from numpy.testing import assert_allclose

from magicsimplex.errors import DimensionMismatchError, NonHermitianError
from magicsimplex.linalg import (eigenvalues_hermitian, partial_transpose,
                                 realign, realign_batch, singular_values,
                                 trace_norm)


def _random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    M = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return M + M.conj().T


def test_eigenvalues_sorted_and_real():
    ev = eigenvalues_hermitian(_random_hermitian(6, 0))
    assert np.all(np.diff(ev) >= 0)
    assert ev.dtype.kind == "f"


def test_eigenvalues_known():
    assert_allclose(eigenvalues_hermitian(np.diag([3.0, -1.0, 2.0])), [-1, 2, 3])


def test_non_hermitian_rejected():
    M = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(NonHermitianError):
        eigenvalues_hermitian(M)
    with pytest.raises(DimensionMismatchError):
        eigenvalues_hermitian(np.zeros((2, 3)))


def test_singular_values_vs_eigen():
    M = _random_hermitian(5, 1)
    assert_allclose(singular_values(M), np.sort(np.abs(np.linalg.eigvalsh(M))),
                    atol=1e-12)


def test_partial_transpose_involution():
    rho = _random_hermitian(9, 2)
    pt = partial_transpose(rho, (3, 3))
    assert_allclose(partial_transpose(pt, (3, 3)), rho)
    assert_allclose(np.trace(pt), np.trace(rho))


def test_partial_transpose_product_state():
    """(A x B)^T_B = A x B^T."""
    rng = np.random.default_rng(3)
    A = rng.normal(size=(3, 3))
    B = rng.normal(size=(3, 3))
    assert_allclose(partial_transpose(np.kron(A, B), (3, 3), "B"), np.kron(A, B.T))
    assert_allclose(partial_transpose(np.kron(A, B), (3, 3), "A"), np.kron(A.T, B))


def test_partial_transpose_bad_subsystem():
    with pytest.raises(ValueError):
        partial_transpose(np.eye(9), (3, 3), "C")


def test_realign_product_state():
    """realign(A x B) has rank one: vec(A) vec(B)^T."""
    rng = np.random.default_rng(4)
    A = rng.normal(size=(3, 3))
    B = rng.normal(size=(3, 3))
    R = realign(np.kron(A, B), (3, 3))
    assert_allclose(R, np.outer(A.reshape(-1), B.reshape(-1)))


def test_realign_norm_preserved():
    rho = _random_hermitian(9, 5)
    R = realign(rho, (3, 3))
    assert_allclose(np.linalg.norm(R), np.linalg.norm(rho))


def test_realign_batch_matches_scalar():
    rng = np.random.default_rng(6)
    rhos = rng.normal(size=(4, 16, 16))
    batch = realign_batch(rhos, 4)
    for rho, R in zip(rhos, batch):
        assert_allclose(R, realign(rho, (4, 4)))


def test_trace_norm():
    M = np.diag([2.0, -3.0, 0.5])
    assert_allclose(trace_norm(M), 5.5)
