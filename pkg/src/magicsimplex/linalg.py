"""Small dense linear algebra used as independent oracles.

Eigen/SVD work is delegated to LAPACK through numpy; partial transpose
and realignment are index rearrangements implemented directly so that
they are exact (bit-identical entries, no arithmetic).
"""

import numpy as np

from .errors import DimensionMismatchError, NonHermitianError

#: half-width of the sign-decision band for PPT membership, relative to ||rho||
BOUNDARY_TOL = 1e-12

_HERMITICITY_TOL = 1e-10


def eigenvalues_hermitian(M: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted ascending.

    Raises NonHermitianError when ||M - M^dag||_inf exceeds 1e-10 ||M||_inf.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got {M.shape}")
    scale = np.abs(M).max()
    if scale > 0 and np.abs(M - M.conj().T).max() > _HERMITICITY_TOL * scale:
        raise NonHermitianError("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh(M)


def singular_values(M: np.ndarray) -> np.ndarray:
    """Singular values sorted ascending (any rectangular matrix)."""
    return np.sort(np.linalg.svd(np.asarray(M), compute_uv=False))


def partial_transpose(rho: np.ndarray, dims, subsystem: str = "B") -> np.ndarray:
    """Transpose one subsystem of a bipartite matrix.  Involutive and exact."""
    dA, dB = dims
    rho = np.asarray(rho)
    if rho.shape != (dA * dB, dA * dB):
        raise DimensionMismatchError(f"expected {dA*dB}x{dA*dB} input, got {rho.shape}")
    t = rho.reshape(dA, dB, dA, dB)
    if subsystem == "B":
        t = t.transpose(0, 3, 2, 1)
    elif subsystem == "A":
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return t.reshape(dA * dB, dA * dB)


def realign(rho: np.ndarray, dims) -> np.ndarray:
    """Realigned matrix R with R[(i,k),(j,l)] = rho[(i,j),(k,l)].

    Entry rearrangement only, so the Frobenius norm is preserved exactly.
    """
    dA, dB = dims
    rho = np.asarray(rho)
    if rho.shape != (dA * dB, dA * dB):
        raise DimensionMismatchError(f"expected {dA*dB}x{dA*dB} input, got {rho.shape}")
    return rho.reshape(dA, dB, dA, dB).transpose(0, 2, 1, 3).reshape(dA * dA, dB * dB)


def trace_norm(M: np.ndarray) -> float:
    """Sum of singular values."""
    return float(np.linalg.svd(np.asarray(M), compute_uv=False).sum())


def realign_batch(rhos: np.ndarray, d: int) -> np.ndarray:
    """Vectorized realignment of a stack of (d*d)x(d*d) matrices."""
    rhos = np.asarray(rhos)
    n = rhos.shape[0]
    return rhos.reshape(n, d, d, d, d).transpose(0, 1, 3, 2, 4).reshape(n, d * d, d * d)
