"""Entanglement predicates for the magic-simplex families.

Every predicate has a closed-form fast path (polynomial inequalities in
the Q coordinates for d=3; for d=4 the singular-value functionals s and p
are computed numerically from the 15x15 correlation matrix) and, where it
matters, a matrix-oracle slow path used for cross-checking.

Inequalities are strict.  Margins within BOUNDARY_TOL of zero are treated
as boundary points: the scalar predicates resolve them on the closure side
and record the predicate name in ``boundary_flags``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, OracleDisagreementError
from .linalg import BOUNDARY_TOL, eigenvalues_hermitian, partial_transpose, realign, trace_norm
from .states import QPoint, build_density, correlation_matrices

S_THRESHOLD_D3 = 16.0 / 9.0
P_THRESHOLD_D3 = 2.0**27 / (3.0**18 * 7.0**15 * 13.0)
S_THRESHOLD_D4 = 9.0 / 4.0
P_THRESHOLD_D4 = 3.0**24 / 2.0**134
#: tentative lowered d=4 product threshold discussed alongside the default
P_THRESHOLD_D4_LOWERED = 1e-30


@dataclass(frozen=True)
class Thresholds:
    """Entanglement thresholds for the s (sum) and p (product) functionals."""

    s_threshold: float
    p_threshold: float

    @classmethod
    def default(cls, dim: int) -> "Thresholds":
        if dim == 3:
            return cls(S_THRESHOLD_D3, P_THRESHOLD_D3)
        if dim == 4:
            return cls(S_THRESHOLD_D4, P_THRESHOLD_D4)
        raise DimensionMismatchError(f"family dimension must be 3 or 4, got {dim}")


@dataclass
class CriteriaProfile:
    """All predicate verdicts plus the numeric functionals for one state."""

    dim: int
    feasible: bool
    ppt: bool
    P: bool
    S: bool
    s: float
    p: float
    zeta: float | None = None
    mub: bool | None = None
    choi: bool | None = None
    ccnr: bool | None = None
    min_pt_eigenvalue: float | None = None
    boundary_flags: set = field(default_factory=set)

    def as_dict(self):
        out = {
            "dim": self.dim, "feasible": self.feasible, "ppt": self.ppt,
            "P": self.P, "S": self.S, "s": self.s, "p": self.p,
            "zeta": self.zeta, "mub": self.mub, "choi": self.choi,
            "ccnr": self.ccnr, "min_pt_eigenvalue": self.min_pt_eigenvalue,
            "boundary_flags": sorted(self.boundary_flags),
        }
        return out


def _require_d3(q: QPoint, what: str):
    if q.dim != 3:
        raise DimensionMismatchError(f"{what} is defined for the d=3 family only")


def _margin_true(margin, tol, name, flags):
    """Strict '> 0' with closure resolution inside the +-tol band."""
    if abs(margin) <= tol and flags is not None:
        flags.add(name)
    return margin > -tol


def feasibility(q: QPoint, flags: set | None = None) -> bool:
    """All coordinates positive and the weighted simplex inequality satisfied."""
    Q = q.q
    tol = BOUNDARY_TOL
    if q.dim == 3:
        margins = (Q[0], Q[1], Q[2], 1 - (Q[0] + 3 * Q[1] + 2 * Q[2]))
    else:
        margins = (Q[0], Q[1], Q[2], Q[3], 1 - (Q[0] + 4 * (Q[1] + Q[2]) + 3 * Q[3]))
    return all(_margin_true(m, tol, "feasible", flags) for m in margins)


def ppt_closed(q: QPoint, flags: set | None = None) -> bool:
    """Positivity of the partial transpose, via the closed polynomial system."""
    Q = q.q
    tol = BOUNDARY_TOL
    if q.dim == 3:
        Q1, Q2, Q3 = Q
        margins = (
            Q1, Q3, 1 - (Q1 + 3 * Q2 + 2 * Q3),
            3 * Q2 + 2 * Q1 * Q3 - (Q1**2 + 3 * Q2 * Q1 + (3 * Q2 + Q3) ** 2),
        )
    else:
        Q1, Q2, Q3, Q4 = Q
        margins = (
            Q3, Q1 + 3 * Q4, 1 - (Q1 + 4 * (Q2 + Q3) + 3 * Q4),
            4 * Q2 + 2 * Q1 * Q4
            - (Q1**2 + 4 * Q2 * Q1 + Q4**2 + 16 * Q2 * (Q2 + Q3) + 12 * Q2 * Q4),
            16 * Q3**2 - (Q1 - Q4) ** 2,
        )
    return all(_margin_true(m, tol, "ppt", flags) for m in margins)


def ppt_oracle(q: QPoint, flags: set | None = None):
    """(verdict, minimum partial-transpose eigenvalue) from the spectrum."""
    rho = build_density(q)
    d = q.dim
    pt = partial_transpose(rho, (d, d))
    min_eig = float(eigenvalues_hermitian(pt)[0])
    scale = max(float(np.abs(rho).max()), 1.0)
    return _margin_true(min_eig, BOUNDARY_TOL * scale, "ppt", flags), min_eig


def mub(q: QPoint, flags: set | None = None) -> bool:
    """Mutually-unbiased-bases witness (d=3 only): Q1 > 3 Q2 + 4 Q3."""
    _require_d3(q, "the MUB criterion")
    Q1, Q2, Q3 = q.q
    return _margin_true(Q1 - 3 * Q2 - 4 * Q3, BOUNDARY_TOL, "mub", flags)


def choi(q: QPoint, flags: set | None = None) -> bool:
    """Choi-witness criterion (d=3 only): 2 Q3 + 1 - 2 Q1 - 3 Q2 < 0."""
    _require_d3(q, "the Choi criterion")
    Q1, Q2, Q3 = q.q
    return _margin_true(2 * Q1 + 3 * Q2 - 2 * Q3 - 1, BOUNDARY_TOL, "choi", flags)


def zeta_value(q: QPoint) -> float:
    """Shared radicand of the realignment bound and the paired singular values."""
    _require_d3(q, "zeta")
    Q1, Q2, Q3 = q.q
    return (1 - 9 * Q2 - 6 * Q3
            + 3 * (Q1**2 + (3 * Q2 + 4 * Q3 - 1) * Q1 + 9 * Q2**2 + 4 * Q3**2 + 6 * Q2 * Q3))


def ccnr_closed(q: QPoint, flags: set | None = None) -> bool:
    """Realignment (CCNR) entanglement test, closed form (d=3 only)."""
    _require_d3(q, "the closed-form CCNR test")
    Q1, _, Q3 = q.q
    z = max(zeta_value(q), 0.0)
    return _margin_true(np.sqrt(z) + 3 * abs(Q1 - Q3) - 1, BOUNDARY_TOL, "ccnr", flags)


def ccnr_oracle(q: QPoint, flags: set | None = None) -> bool:
    """CCNR via the trace norm of the realigned density matrix (any family)."""
    rho = build_density(q)
    d = q.dim
    tn = trace_norm(realign(rho, (d, d)))
    return _margin_true(tn - 1.0, BOUNDARY_TOL, "ccnr", flags)


def sp_values(q: QPoint):
    """(s, p, zeta) singular-value functionals of the correlation matrix.

    d=3 uses the closed forms; zeta is returned alongside.  d=4 computes
    the singular values of the 15x15 correlation matrix numerically and
    returns zeta=None.
    """
    if q.dim == 3:
        Q1, Q2, Q3 = q.q
        z = zeta_value(q)
        zc = max(z, 0.0)
        s = (4.0 / 3.0 * np.sqrt(zc) + 4.0 * abs(Q1 - Q3)) ** 2
        p = (2.0 / 3.0) ** 16 * (Q1 - Q3) ** 12 * z**2
        return float(s), float(p), float(z)
    T = correlation_matrices(q.array[None, :], 4)[0]
    sv = np.linalg.svd(T, compute_uv=False)
    return float(sv.sum() ** 2), float(np.prod(sv) ** 2), None


def sp_oracle(q: QPoint):
    """(s, p) from the SVD of the correlation matrix, for either family."""
    T = correlation_matrices(q.array[None, :], q.dim)[0]
    sv = np.linalg.svd(T, compute_uv=False)
    return float(sv.sum() ** 2), float(np.prod(sv) ** 2)


def profile(q: QPoint, thresholds: Thresholds | None = None, mode: str = "closed") -> CriteriaProfile:
    """Full criteria profile at one point.

    mode 'closed' uses the closed forms, 'oracle' the matrix routes, and
    'both' runs both and raises OracleDisagreementError on any out-of-band
    disagreement.
    """
    if mode not in ("closed", "oracle", "both"):
        raise ValueError(f"mode must be closed|oracle|both, got {mode!r}")
    thresholds = thresholds or Thresholds.default(q.dim)
    flags: set = set()
    feas = feasibility(q, flags)
    s, p, z = sp_values(q)
    min_pt = None

    if mode == "closed":
        ppt = ppt_closed(q, flags)
    elif mode == "oracle":
        ppt, min_pt = ppt_oracle(q, flags)
    else:
        c = ppt_closed(q, flags)
        o, min_pt = ppt_oracle(q, flags)
        if c != o and "ppt" not in flags:
            raise OracleDisagreementError(
                f"PPT closed={c} vs oracle={o} at {q.q} (min PT eigenvalue {min_pt:.3e})")
        s_o, p_o = sp_oracle(q)
        if abs(s_o - s) > 1e-10 * max(1.0, abs(s)) or abs(p_o - p) > 1e-10 * max(1e-300, abs(p)):
            raise OracleDisagreementError(
                f"(s,p) closed=({s},{p}) vs oracle=({s_o},{p_o}) at {q.q}")
        ppt = c

    if q.dim == 3:
        m = mub(q, flags)
        c_ = choi(q, flags)
        if mode == "closed":
            ccnr = ccnr_closed(q, flags)
        elif mode == "oracle":
            ccnr = ccnr_oracle(q, flags)
        else:
            cc = ccnr_closed(q, flags)
            co = ccnr_oracle(q, flags)
            if cc != co and "ccnr" not in flags:
                raise OracleDisagreementError(f"CCNR closed={cc} vs oracle={co} at {q.q}")
            ccnr = cc
    else:
        m = c_ = None
        ccnr = ccnr_oracle(q, flags)

    # band relative to the threshold: p thresholds sit far below 1e-12
    P = _margin_true(p - thresholds.p_threshold, BOUNDARY_TOL * thresholds.p_threshold, "P", flags)
    S = _margin_true(s - thresholds.s_threshold, BOUNDARY_TOL * thresholds.s_threshold, "S", flags)
    return CriteriaProfile(dim=q.dim, feasible=feas, ppt=ppt, P=P, S=S, s=s, p=p,
                           zeta=z, mub=m, choi=c_, ccnr=ccnr,
                           min_pt_eigenvalue=min_pt, boundary_flags=flags)


# ---------------------------------------------------------------------------
# Vectorized evaluation (strict inequalities; boundary handling is a
# scalar-path concern and boundary sets carry zero measure).

def evaluate_batch(Q: np.ndarray, dim: int, thresholds: Thresholds | None = None):
    """Predicate arrays for feasible rows of a raw coordinate batch.

    Returns (feasible_mask, results) where feasible_mask applies to the
    input rows and results maps predicate names to boolean arrays (plus
    's' and 'p' float arrays) over the feasible rows only.
    """
    thresholds = thresholds or Thresholds.default(dim)
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    if Q.shape[1] != dim:
        raise DimensionMismatchError(f"coordinate rows must have {dim} columns")
    if dim == 3:
        Q1, Q2, Q3 = Q[:, 0], Q[:, 1], Q[:, 2]
        feas = (Q1 > 0) & (Q2 > 0) & (Q3 > 0) & (Q1 + 3 * Q2 + 2 * Q3 < 1)
        Qf = Q[feas]
        Q1, Q2, Q3 = Qf[:, 0], Qf[:, 1], Qf[:, 2]
        zeta = (1 - 9 * Q2 - 6 * Q3
                + 3 * (Q1**2 + (3 * Q2 + 4 * Q3 - 1) * Q1 + 9 * Q2**2 + 4 * Q3**2 + 6 * Q2 * Q3))
        s = (4.0 / 3.0 * np.sqrt(np.maximum(zeta, 0.0)) + 4.0 * np.abs(Q1 - Q3)) ** 2
        p = (2.0 / 3.0) ** 16 * (Q1 - Q3) ** 12 * zeta**2
        ppt = ((Q1 > 0) & (Q3 > 0) & (Q1 + 3 * Q2 + 2 * Q3 < 1)
               & (Q1**2 + 3 * Q2 * Q1 + (3 * Q2 + Q3) ** 2 < 3 * Q2 + 2 * Q1 * Q3))
        results = {
            "PPT": ppt,
            "MUB": Q1 > 3 * Q2 + 4 * Q3,
            "Choi": 2 * Q3 + 1 - 2 * Q1 - 3 * Q2 < 0,
            "CCNR": np.sqrt(np.maximum(zeta, 0.0)) + 3 * np.abs(Q1 - Q3) > 1,
        }
    else:
        Q1, Q2, Q3, Q4 = Q[:, 0], Q[:, 1], Q[:, 2], Q[:, 3]
        feas = ((Q1 > 0) & (Q2 > 0) & (Q3 > 0) & (Q4 > 0)
                & (Q1 + 4 * (Q2 + Q3) + 3 * Q4 < 1))
        Qf = Q[feas]
        Q1, Q2, Q3, Q4 = Qf[:, 0], Qf[:, 1], Qf[:, 2], Qf[:, 3]
        ppt = ((Q3 > 0) & (Q1 + 3 * Q4 > 0) & (Q1 + 4 * (Q2 + Q3) + 3 * Q4 < 1)
               & (Q1**2 + 4 * Q2 * Q1 + Q4**2 + 16 * Q2 * (Q2 + Q3) + 12 * Q2 * Q4
                  < 4 * Q2 + 2 * Q1 * Q4)
               & ((Q1 - Q4) ** 2 < 16 * Q3**2))
        if len(Qf):
            sv = np.linalg.svd(correlation_matrices(Qf, 4), compute_uv=False)
            s = sv.sum(axis=1) ** 2
            p = np.prod(sv, axis=1) ** 2
        else:
            s = np.empty(0)
            p = np.empty(0)
        results = {"PPT": ppt}
    results["P"] = p > thresholds.p_threshold
    results["S"] = s > thresholds.s_threshold
    results["s"] = s
    results["p"] = p
    return feas, results
