"""Hiesmayr-Loeffler magic-simplex states and their Bloch decomposition.

The two families are parameterized by simplex coordinates Q:

* d=3 (two qutrits): Q = (Q1, Q2, Q3), 9x9 density matrix with diagonal
  weights (gamma1, Q2, gamma3) and a gamma2 coupling block on the
  {|00>, |11>, |22>} triple.
* d=4 (two ququarts): Q = (Q1, Q2, Q3, Q4), 16x16 matrix with kappa
  weights and the coupling block on {|00>, |11>, |22>, |33>}.

Infeasible coordinates are accepted by every constructor; they simply
yield non-positive-semidefinite matrices.  Classification is the job of
:mod:`magicsimplex.criteria`.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatchError, UnsupportedDimensionError
from .su import generators

FAMILY_DIMS = (3, 4)


@dataclass(frozen=True)
class QPoint:
    """Simplex coordinates of one magic-simplex state."""

    dim: int
    q: tuple

    def __post_init__(self):
        if self.dim not in FAMILY_DIMS:
            raise UnsupportedDimensionError(f"family dimension must be 3 or 4, got {self.dim}")
        object.__setattr__(self, "q", tuple(float(x) for x in self.q))
        if len(self.q) != self.dim:
            raise DimensionMismatchError(
                f"dim={self.dim} expects {self.dim} coordinates, got {len(self.q)}")

    @property
    def array(self):
        return np.asarray(self.q)


@dataclass(frozen=True)
class BlochDecomposition:
    """Local Bloch vectors and correlation matrix, trace convention
    a_i = Tr[rho (g_i x I)], T_ij = Tr[rho (g_i x g_j)]."""

    dim: int
    vecA: np.ndarray
    vecB: np.ndarray
    T: np.ndarray


def coefficients(q: QPoint):
    """Diagonal-weight triple (gamma1, gamma2, gamma3) or (kappa1, kappa2, kappa3)."""
    if q.dim == 3:
        Q1, Q2, Q3 = q.q
        return ((Q1 + 2 * Q3) / 3, (Q1 - Q3) / 3, (1 - Q1 - 3 * Q2 - 2 * Q3) / 3)
    Q1, Q2, Q3, Q4 = q.q
    return ((Q1 + 3 * Q4) / 4, (Q1 - Q4) / 4, (1 - Q1 - 4 * Q2 - 4 * Q3 - 3 * Q4) / 4)


# Diagonal layout of the density matrix in the computational product basis.
# 0 marks the c1 weight, 1 the Q2 weight, 2 the Q3 weight (d=4), 3 the c3 weight.
_DIAG3 = (0, 1, 3, 3, 0, 1, 1, 3, 0)
_DIAG4 = (0, 1, 2, 3, 3, 0, 1, 2, 2, 3, 0, 1, 1, 2, 3, 0)


def build_density(q: QPoint) -> np.ndarray:
    """Density matrix of the magic-simplex state at q (real symmetric,
    unit trace whenever q lies on the affine simplex)."""
    c1, c2, c3 = coefficients(q)
    if q.dim == 3:
        weights = (c1, q.q[1], None, c3)
        layout = _DIAG3
        n = 9
        bell = (0, 4, 8)
    else:
        weights = (c1, q.q[1], q.q[2], c3)
        layout = _DIAG4
        n = 16
        bell = (0, 5, 10, 15)
    rho = np.zeros((n, n))
    np.fill_diagonal(rho, [weights[k] for k in layout])
    for a in bell:
        for b in bell:
            if a != b:
                rho[a, b] = c2
    return rho


@lru_cache(maxsize=None)
def _kron_basis(d):
    """All g_i x g_j products plus g_i x I and I x g_i, cached per dimension."""
    basis = generators(d)
    eye = np.eye(d)
    gg = [[np.kron(gi, gj) for gj in basis] for gi in basis]
    gI = [np.kron(gi, eye) for gi in basis]
    Ig = [np.kron(eye, gi) for gi in basis]
    return gg, gI, Ig


def bloch_decompose(rho: np.ndarray, d: int) -> BlochDecomposition:
    """Correlation matrix and local Bloch vectors of a (d*d)x(d*d) state."""
    rho = np.asarray(rho)
    if rho.shape != (d * d, d * d):
        raise DimensionMismatchError(f"expected a {d*d}x{d*d} matrix, got {rho.shape}")
    gg, gI, Ig = _kron_basis(d)
    n = d * d - 1
    T = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            T[i, j] = np.real(np.sum(rho.T * gg[i][j]))
    vecA = np.array([np.real(np.sum(rho.T * m)) for m in gI])
    vecB = np.array([np.real(np.sum(rho.T * m)) for m in Ig])
    return BlochDecomposition(dim=d, vecA=vecA, vecB=vecB, T=T)


def reconstruct(dec: BlochDecomposition) -> np.ndarray:
    """Invert bloch_decompose: rebuild the density matrix from (vecA, vecB, T)."""
    d = dec.dim
    gg, gI, Ig = _kron_basis(d)
    n = d * d - 1
    rho = np.eye(d * d, dtype=complex) / (d * d)
    for i in range(n):
        for j in range(n):
            rho += 0.25 * dec.T[i, j] * gg[i][j]
        rho += dec.vecA[i] / (2 * d) * gI[i]
        rho += dec.vecB[i] / (2 * d) * Ig[i]
    return rho


@lru_cache(maxsize=None)
def correlation_map(dim: int):
    """Affine map Q -> T as an array of shape (dim+1, n, n) with
    T(Q) = M[0] + sum_k Q_k M[k+1]; exact because rho is affine in Q."""
    zero = QPoint(dim, (0.0,) * dim)
    base = bloch_decompose(build_density(zero), dim).T
    mats = [base]
    for k in range(dim):
        unit = [0.0] * dim
        unit[k] = 1.0
        Tk = bloch_decompose(build_density(QPoint(dim, tuple(unit))), dim).T
        mats.append(Tk - base)
    return np.array(mats)


def correlation_matrices(Q: np.ndarray, dim: int) -> np.ndarray:
    """Correlation matrices for a batch of coordinate rows, shape (N, n, n)."""
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    if Q.shape[1] != dim:
        raise DimensionMismatchError(f"coordinate rows must have {dim} columns")
    M = correlation_map(dim)
    return M[0] + np.einsum("nk,kij->nij", Q, M[1:])
