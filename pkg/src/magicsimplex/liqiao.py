"""Separable-decomposition tooling for the d=3 family.

Three pieces: the alpha -> beta parameter map for the family's correlation
entries, an arithmetic verifier for externally supplied product-state
decomposition certificates, and a best-separable-approximation (BSA)
search that splits rho(q) = (1-B) rho(q_sep) + B rho(q_ent) with minimal
entangled weight B.  Because the family is affine in Q, the BSA split is
solved entirely in Q-space.
"""

import json
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .criteria import Thresholds, feasibility, ppt_closed, sp_values
from .errors import (DimensionMismatchError, MalformedCertificateError,
                     NoSeparableSplitError, ZeroAlphaError)
from .linalg import eigenvalues_hermitian
from .quasirandom import SequenceSpec, point_batch
from .states import QPoint, build_density

#: 1-based index groups of the ten (alpha_i, beta_i) pairs
_GROUP_PLUS = (1, 4, 6)
_GROUP_MINUS = (2, 5, 7)
_GROUP_DIAG = (3, 8)
_GROUP_TAIL = (9, 10)


@dataclass(frozen=True)
class LiQiaoParams:
    """One (alpha, beta) parameter set; t_i = alpha_i * beta_i."""

    alphas: tuple
    betas: tuple

    def __post_init__(self):
        if len(self.alphas) != 10 or len(self.betas) != 10:
            raise DimensionMismatchError("LiQiaoParams needs ten alphas and ten betas")

    @property
    def ts(self):
        return tuple(a * b for a, b in zip(self.alphas, self.betas))


def beta_from_alpha(q: QPoint, alphas) -> np.ndarray:
    """Betas solving alpha_i beta_i = t_i(Q) for the family's correlations."""
    if q.dim != 3:
        raise DimensionMismatchError("beta_from_alpha is defined for the d=3 family")
    alphas = np.asarray(alphas, dtype=float)
    if alphas.shape != (10,):
        raise DimensionMismatchError("expected ten alpha parameters")
    if np.any(alphas == 0.0):
        raise ZeroAlphaError("every beta formula divides by its alpha; alphas must be nonzero")
    Q1, Q2, Q3 = q.q
    betas = np.empty(10)
    for i in _GROUP_PLUS:
        betas[i - 1] = 2 * (Q1 - Q3) / (3 * alphas[i - 1])
    for i in _GROUP_MINUS:
        betas[i - 1] = -2 * (Q1 - Q3) / (3 * alphas[i - 1])
    for i in _GROUP_DIAG:
        betas[i - 1] = (-1 + 3 * Q1 + 6 * Q3) / (3 * alphas[i - 1])
    for i in _GROUP_TAIL:
        betas[i - 1] = (-1 + Q1 + 6 * Q2 + 2 * Q3) / (3 * alphas[i - 1])
    return betas


# ---------------------------------------------------------------------------
# Decomposition certificates

@dataclass
class DecompositionCertificate:
    """Weighted product terms claimed to reconstruct a family state."""

    terms: list  # of (weight, factorA 3x3, factorB 3x3)

    def validate_schema(self):
        if not self.terms:
            raise MalformedCertificateError("certificate has no terms")
        total = 0.0
        for i, (w, A, B) in enumerate(self.terms):
            if w <= 0:
                raise MalformedCertificateError(f"term {i}: weight {w} is not positive")
            total += w
            for name, M in (("A", A), ("B", B)):
                M = np.asarray(M)
                if M.shape != (3, 3):
                    raise MalformedCertificateError(f"term {i}: factor {name} is not 3x3")
                if np.abs(M - M.conj().T).max() > 1e-10:
                    raise MalformedCertificateError(f"term {i}: factor {name} is not Hermitian")
                if abs(np.trace(M).real - 1.0) > 1e-10:
                    raise MalformedCertificateError(f"term {i}: factor {name} trace != 1")
        if abs(total - 1.0) > 1e-12:
            raise MalformedCertificateError(f"weights sum to {total!r}, not 1")


@dataclass(frozen=True)
class DecompositionReport:
    valid: bool
    reconstruction_error: float
    min_factor_eigenvalue: float
    negative_terms: tuple  # indices of terms with a negative-eigenvalue factor


def verify_decomposition(q: QPoint, cert: DecompositionCertificate) -> DecompositionReport:
    """Re-evaluate a certificate with fresh arithmetic against rho(q).

    Valid iff the reconstruction error is <= 1e-10 in max norm and every
    factor eigenvalue is >= -1e-12.
    """
    cert.validate_schema()
    rho = build_density(q)
    acc = np.zeros((9, 9), dtype=complex)
    min_eig = np.inf
    negative = []
    for i, (w, A, B) in enumerate(cert.terms):
        A = np.asarray(A, dtype=complex)
        B = np.asarray(B, dtype=complex)
        acc += w * np.kron(A, B)
        term_min = min(float(eigenvalues_hermitian(A)[0]), float(eigenvalues_hermitian(B)[0]))
        min_eig = min(min_eig, term_min)
        if term_min < -1e-12:
            negative.append(i)
    err = float(np.abs(acc - rho).max())
    return DecompositionReport(valid=err <= 1e-10 and not negative,
                               reconstruction_error=err,
                               min_factor_eigenvalue=float(min_eig),
                               negative_terms=tuple(negative))


def _complex_matrix_from_json(rows):
    try:
        return np.array([[complex(re, im) for re, im in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise MalformedCertificateError(f"bad matrix entry: {exc}") from exc


def load_certificate(path):
    """Read a certificate JSON file; returns (QPoint, DecompositionCertificate)."""
    with open(path) as fh:
        data = json.load(fh)
    try:
        q = QPoint(3, tuple(data["q"]))
        terms = [(float(t["w"]),
                  _complex_matrix_from_json(t["A"]),
                  _complex_matrix_from_json(t["B"])) for t in data["terms"]]
    except (KeyError, TypeError) as exc:
        raise MalformedCertificateError(f"certificate schema violation: {exc}") from exc
    return q, DecompositionCertificate(terms=terms)


def dump_certificate(path, q: QPoint, cert: DecompositionCertificate):
    def mat(M):
        M = np.asarray(M, dtype=complex)
        return [[[float(x.real), float(x.imag)] for x in row] for row in M]

    payload = {"q": list(q.q),
               "terms": [{"w": w, "A": mat(A), "B": mat(B)} for w, A, B in cert.terms]}
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)


# ---------------------------------------------------------------------------
# Best separable approximation

@dataclass(frozen=True)
class BsaResult:
    B: float
    q_ent: QPoint
    q_sep: QPoint
    residual: float
    restarts_used: int


def _is_separable(Q, thresholds):
    q = QPoint(3, tuple(Q))
    if not feasibility(q) or not ppt_closed(q):
        return False
    s, p, _ = sp_values(q)
    return not (p > thresholds.p_threshold) and not (s > thresholds.s_threshold)


def _is_entangled(Q, thresholds):
    q = QPoint(3, tuple(Q))
    if not feasibility(q):
        return False
    s, p, _ = sp_values(q)
    return p > thresholds.p_threshold or s > thresholds.s_threshold


def _min_valid_B(q_arr, q_ent, thresholds, b_tol, grid=256):
    """Smallest B for which q_sep = (q - B q_ent)/(1-B) is separable."""
    def sep_at(B):
        q_sep = (q_arr - B * q_ent) / (1.0 - B)
        return _is_separable(q_sep, thresholds)

    Bs = np.linspace(0.0, 1.0 - 1e-9, grid)
    lo = None
    for i in range(1, grid):
        if sep_at(Bs[i]):
            lo = (Bs[i - 1], Bs[i])
            break
    if lo is None:
        return None
    a, b = lo
    while b - a > b_tol:
        m = 0.5 * (a + b)
        if sep_at(m):
            b = m
        else:
            a = m
    return b


def _max_feasible_step(q_arr, d, margin=1e-7):
    """Largest t with q + t d strictly inside the feasibility polytope."""
    t_max = np.inf
    # coordinate positivity and the weighted simplex face, all linear in t
    for value, slope in [(q_arr[0], d[0]), (q_arr[1], d[1]), (q_arr[2], d[2]),
                         (1.0 - q_arr @ np.array([1.0, 3.0, 2.0]),
                          -d @ np.array([1.0, 3.0, 2.0]))]:
        if slope < 0:
            t_max = min(t_max, (value - margin) / -slope)
    return max(t_max, 0.0)


def _seed_points(q_arr):
    # radial seeds: push the entangled part outward from the maximally
    # mixed state through q, up to the feasibility boundary
    center = np.full(3, 1.0 / 9.0)
    d = q_arr - center
    seeds = []
    if np.abs(d).max() > 1e-12:
        t_max = _max_feasible_step(q_arr, d)
        for frac in (0.999, 0.9, 0.5, 0.25):
            seeds.append(q_arr + frac * t_max * d)
    # vertex-biased seeds (the optimum tends to sit near an extreme state)
    eps = 1e-6
    seeds += [np.array([0.5 - eps, eps, eps]),
              np.array([eps, 0.2, eps]),
              np.array([eps, eps, 0.45]),
              np.array([0.2, 0.05, 0.2])]
    spec = SequenceSpec(dim=3, offset=0.25)
    raw = point_batch(spec, 1, 64)
    scaled = raw * np.array([1.0, 1.0 / 3.0, 0.5])
    for row in scaled:
        if feasibility(QPoint(3, tuple(row))):
            seeds.append(row)
    return seeds


def bsa(q: QPoint, restarts: int = 32, b_tol: float = 1e-6,
        thresholds: Thresholds | None = None) -> BsaResult:
    """Minimal entangled weight B with rho(q) = (1-B) rho_sep + B rho_ent.

    Derivative-free: Nelder-Mead over q_ent with an inner bisection on B;
    restarts keep the best split found so far, so the reported B is
    monotone non-increasing in the restart budget.
    """
    if q.dim != 3:
        raise DimensionMismatchError("bsa is defined for the d=3 family")
    thresholds = thresholds or Thresholds.default(3)
    q_arr = q.array
    if _is_separable(q_arr, thresholds):
        return BsaResult(B=0.0, q_ent=q, q_sep=q, residual=0.0, restarts_used=0)

    def objective(x):
        if not feasibility(QPoint(3, tuple(x))):
            return 2.0
        if not _is_entangled(x, thresholds):
            return 2.0
        B = _min_valid_B(q_arr, x, thresholds, b_tol)
        return 2.0 if B is None else B

    best = (np.inf, None)
    seeds = _seed_points(q_arr)
    used = 0
    for seed in seeds[:max(1, restarts)]:
        used += 1
        res = minimize(objective, seed, method="Nelder-Mead",
                       options={"xatol": 1e-9, "fatol": 0.2 * b_tol,
                                "maxiter": 2000, "maxfev": 4000})
        if res.fun < best[0]:
            best = (res.fun, np.clip(res.x, 0.0, 1.0))
    B, q_ent = best
    if q_ent is None or B >= 1.5:
        raise NoSeparableSplitError("no separable split found within the restart budget")
    B = _min_valid_B(q_arr, q_ent, thresholds, b_tol * 1e-3) or B
    q_sep = (q_arr - B * q_ent) / (1.0 - B)
    rho = build_density(q)
    rho_mix = ((1.0 - B) * build_density(QPoint(3, tuple(q_sep)))
               + B * build_density(QPoint(3, tuple(q_ent))))
    residual = float(np.abs(rho_mix - rho).max())
    return BsaResult(B=float(B), q_ent=QPoint(3, tuple(q_ent)),
                     q_sep=QPoint(3, tuple(q_sep)), residual=residual,
                     restarts_used=used)


def bsa_result_to_json(result: BsaResult) -> dict:
    return {"B": result.B, "q_ent": list(result.q_ent.q),
            "q_sep": list(result.q_sep.q), "residual": result.residual,
            "restarts_used": result.restarts_used}
