"""Deterministic low-discrepancy point generation (generalized golden ratio).

The dim-dimensional sequence uses the unique positive root phi_d of
x^(d+1) = x + 1; coordinate i of point n is frac(offset + n * phi_d^-i).
Generation is closed-form per index, so an index-range partition across
workers reproduces exactly the points of a serial run.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_OFFSET = 0.5
DEFAULT_START_INDEX = 1


@dataclass(frozen=True)
class SequenceSpec:
    """Identifies one deterministic point stream."""

    dim: int
    offset: float = DEFAULT_OFFSET
    start_index: int = DEFAULT_START_INDEX

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("sequence dimension must be >= 1")
        if not 0.0 <= self.offset < 1.0:
            raise ValueError("offset must lie in [0, 1)")


@lru_cache(maxsize=None)
def phi(d: int) -> float:
    """Unique positive root of x^(d+1) = x + 1 (golden ratio for d=1)."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    x = 1.5
    for _ in range(80):
        f = x ** (d + 1) - x - 1.0
        fp = (d + 1) * x**d - 1.0
        step = f / fp
        x -= step
        if abs(step) < 1e-17:
            break
    return x


@lru_cache(maxsize=None)
def _alphas(dim: int):
    a = phi(dim) ** -np.arange(1, dim + 1, dtype=float)
    a.setflags(write=False)
    return a


def point(n: int, spec: SequenceSpec) -> np.ndarray:
    """Point at index n, coordinates in [0, 1)."""
    return (spec.offset + n * _alphas(spec.dim)) % 1.0


def point_batch(spec: SequenceSpec, start: int, count: int) -> np.ndarray:
    """Points for indices [start, start+count), shape (count, dim)."""
    n = np.arange(start, start + count, dtype=np.float64)[:, None]
    return (spec.offset + n * _alphas(spec.dim)) % 1.0


class FeasibleStream:
    """Iterates feasible magic-simplex points drawn from a sequence.

    Yields (indices, Q) chunks; `raw_total` and `accepted` track the
    rejection bookkeeping.  Raw points in [0,1)^dim are used directly as
    Q coordinates; infeasible ones are discarded.
    """

    def __init__(self, spec: SequenceSpec, family_dim: int, budget: int,
                 batch_size: int = 1_000_000):
        from .criteria import evaluate_batch  # local import to avoid a cycle

        if spec.dim != family_dim:
            raise ValueError("sequence dimension must match the family dimension")
        self._evaluate_batch = evaluate_batch
        self.spec = spec
        self.family_dim = family_dim
        self.budget = int(budget)
        self.batch_size = int(batch_size)
        self.raw_total = 0
        self.accepted = 0

    def __iter__(self):
        start = self.spec.start_index
        end = start + self.budget
        for lo in range(start, end, self.batch_size):
            count = min(self.batch_size, end - lo)
            Q = point_batch(self.spec, lo, count)
            feas, _ = self._evaluate_batch(Q, self.family_dim)
            self.raw_total += count
            idx = np.nonzero(feas)[0]
            self.accepted += len(idx)
            if len(idx):
                yield lo + idx, Q[feas]

    def acceptance_fraction(self) -> float:
        return self.accepted / self.raw_total if self.raw_total else float("nan")
