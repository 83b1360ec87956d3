"""Generalized Gell-Mann generator bases of SU(d) for d = 2, 3, 4.

Ordering follows the standard Gell-Mann convention: for each k = 2..d the
symmetric and antisymmetric pair matrices (j, k) for j < k, followed by the
k-th diagonal (Cartan) generator.  For d=2 this yields the Pauli matrices;
for d=3 the canonical lambda_1..lambda_8 with lambda_3 = diag(1,-1,0) and
lambda_8 = diag(1,1,-2)/sqrt(3) in positions 3 and 8 (1-based).
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .errors import UnsupportedDimensionError

SUPPORTED_DIMS = (2, 3, 4)


@dataclass(frozen=True)
class GeneratorBasis:
    """Ordered Hermitian traceless generators with Tr[g_i g_j] = 2 delta_ij."""

    dim: int
    generators: tuple

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def __iter__(self):
        return iter(self.generators)

    def diagonal_indices(self):
        """0-based positions of the diagonal (Cartan) generators."""
        return tuple(i for i, g in enumerate(self.generators)
                     if np.count_nonzero(g - np.diag(np.diagonal(g))) == 0)


def _build_generators(d):
    mats = []
    for k in range(1, d):
        for j in range(k):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = 1.0
            sym[k, j] = 1.0
            asym = np.zeros((d, d), dtype=complex)
            asym[j, k] = -1.0j
            asym[k, j] = 1.0j
            mats.append(sym)
            mats.append(asym)
        scale = math.sqrt(2.0 / (k * (k + 1)))
        diag = [scale] * k + [-k * scale] + [0.0] * (d - k - 1)
        mats.append(np.diag(np.asarray(diag, dtype=complex)))
    for m in mats:
        m.setflags(write=False)
    return tuple(mats)


@lru_cache(maxsize=None)
def generators(d: int) -> GeneratorBasis:
    """Return the d*d-1 generalized Gell-Mann generators for local dimension d."""
    if d not in SUPPORTED_DIMS:
        raise UnsupportedDimensionError(f"unsupported local dimension {d}; expected one of {SUPPORTED_DIMS}")
    return GeneratorBasis(dim=d, generators=_build_generators(d))
