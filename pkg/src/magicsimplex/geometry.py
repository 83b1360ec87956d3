"""Figure datasets: region point clouds, POCU-candidate layers, and
constraint-saturation curves on and off the PPT boundary.

Clouds are drawn from the same deterministic quasirandom stream as the
probability estimates, so they carry the flat (Hilbert-Schmidt) measure.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .boolexpr import BooleanExpr
from .criteria import Thresholds, evaluate_batch
from .errors import NoSignChangeError, RegionEmptyError
from .linalg import eigenvalues_hermitian, partial_transpose
from .quasirandom import SequenceSpec, point_batch
from .states import QPoint, build_density

LABELS = ("separable", "bound", "free", "pocu-candidate")

_CSV_COLUMNS_D3 = ("index", "Q1", "Q2", "Q3", "s", "p", "feasible", "ppt",
                   "mub", "choi", "ccnr", "P", "S", "label")
_CSV_COLUMNS_D4 = ("index", "Q1", "Q2", "Q3", "Q4", "s", "p", "feasible", "ppt",
                   "mub", "choi", "ccnr", "P", "S", "label")


@dataclass
class PointCloud:
    """Labeled point rows for one region or curve."""

    dim: int
    index: np.ndarray
    Q: np.ndarray
    s: np.ndarray
    p: np.ndarray
    flags: dict          # name -> bool array (missing predicates absent)
    labels: np.ndarray   # array of label strings

    def __len__(self):
        return len(self.index)

    def to_csv(self, path):
        cols = _CSV_COLUMNS_D3 if self.dim == 3 else _CSV_COLUMNS_D4
        with open(path, "w") as fh:
            fh.write(",".join(cols) + "\n")
            for i in range(len(self.index)):
                row = [str(int(self.index[i]))]
                row += [f"{x:.17g}" for x in self.Q[i]]
                row += [f"{self.s[i]:.17g}", f"{self.p[i]:.17g}"]
                for name in ("feasible", "ppt", "mub", "choi", "ccnr", "P", "S"):
                    arr = self.flags.get(name)
                    row.append("" if arr is None else str(int(arr[i])))
                row.append(str(self.labels[i]))
                fh.write(",".join(row) + "\n")


def classify_labels(results):
    """Row labels from predicate arrays: separable, bound, free, pocu-candidate."""
    P, S, ppt = results["P"], results["S"], results["PPT"]
    ent = P | S
    labels = np.full(len(P), "pocu-candidate", dtype=object)
    labels[ppt & ~ent] = "separable"
    labels[ppt & ent] = "bound"
    labels[~ppt & ent] = "free"
    return labels


def _expr_mask(expr: BooleanExpr, results, extra=None):
    env_names = [n for n in ("P", "S", "PPT", "MUB", "Choi", "CCNR", "feasible")
                 if n in results or (extra and n in extra)]
    lookup = {}
    arrays = []
    for name in sorted(expr.names):
        if name in results:
            arrays.append((name, results[name]))
        elif extra and name in extra:
            arrays.append((name, extra[name]))
        else:
            # raise through evaluate for a uniform error message
            expr.evaluate({n: False for n in env_names})
    k = len(arrays)
    idx = sum(arr.astype(np.int64) << j for j, (_, arr) in enumerate(arrays))
    table = np.empty(2**k, dtype=bool)
    for assignment in range(2**k):
        env = {name: bool(assignment >> j & 1) for j, (name, _) in enumerate(arrays)}
        table[assignment] = expr.evaluate(env)
    return table[idx]


def _cloud_from(indices, Q, results, dim):
    return PointCloud(dim=dim, index=np.asarray(indices), Q=Q,
                      s=results["s"], p=results["p"],
                      flags={"feasible": np.ones(len(Q), dtype=bool),
                             "ppt": results["PPT"],
                             "mub": results.get("MUB"),
                             "choi": results.get("Choi"),
                             "ccnr": results.get("CCNR"),
                             "P": results["P"], "S": results["S"]},
                      labels=classify_labels(results))


def region_cloud(expr, count, family_dim=3, thresholds=None, spec=None,
                 max_raw=500_000_000, batch_size=1_000_000) -> PointCloud:
    """First `count` feasible stream points satisfying a boolean expression."""
    if isinstance(expr, str):
        expr = BooleanExpr(expr)
    thresholds = thresholds or Thresholds.default(family_dim)
    spec = spec or SequenceSpec(dim=family_dim)
    got_idx, got_Q, got_res = [], [], []
    n_found = 0
    lo = spec.start_index
    while n_found < count and lo < spec.start_index + max_raw:
        n = min(batch_size, spec.start_index + max_raw - lo)
        Q = point_batch(spec, lo, n)
        feas, results = evaluate_batch(Q, family_dim, thresholds)
        mask = _expr_mask(expr, results,
                          extra={"feasible": np.ones(int(feas.sum()), dtype=bool)})
        if mask.any():
            take = np.nonzero(mask)[0][:count - n_found]
            feas_idx = np.nonzero(feas)[0]
            got_idx.append(lo + feas_idx[take])
            got_Q.append(Q[feas][take])
            got_res.append({k: v[take] for k, v in results.items()})
            n_found += len(take)
        lo += n
    if n_found == 0:
        raise RegionEmptyError(f"no point satisfying {expr.source!r} within {max_raw} raw points")
    merged = {k: np.concatenate([r[k] for r in got_res]) for k in got_res[0]}
    return _cloud_from(np.concatenate(got_idx), np.vstack(got_Q), merged, family_dim)


def pocu_candidates(count, thresholds=None, spec=None, max_raw=5_000_000_000,
                    batch_size=2_000_000):
    """Feasible, NPT points below both entanglement bounds (d=3).

    Returns (cloud, min_s, argmin_q).
    """
    cloud = region_cloud("!PPT && !P && !S", count, family_dim=3,
                         thresholds=thresholds, spec=spec, max_raw=max_raw,
                         batch_size=batch_size)
    i = int(np.argmin(cloud.s))
    return cloud, float(cloud.s[i]), QPoint(3, tuple(cloud.Q[i]))


def solve_on_segment(f, target, q_lo: QPoint, q_hi: QPoint, tol=1e-12,
                     max_iter=200):
    """Bisection root of f(q) = target on the segment [q_lo, q_hi].

    f must be continuous; the endpoint values must straddle the target.
    """
    a, b = q_lo.array, q_hi.array
    dim = q_lo.dim
    fa = f(QPoint(dim, tuple(a))) - target
    fb = f(QPoint(dim, tuple(b))) - target
    if fa == 0.0:
        return q_lo
    if fb == 0.0:
        return q_hi
    if np.sign(fa) == np.sign(fb):
        raise NoSignChangeError("segment endpoints do not straddle the target")
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        qm = QPoint(dim, tuple(m))
        fm = f(qm) - target
        if abs(fm) <= tol * max(1.0, abs(target)):
            return qm
        if np.sign(fm) == np.sign(fa):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return QPoint(dim, tuple(0.5 * (a + b)))


def _s_closed(Q):
    Q1, Q2, Q3 = Q
    zeta = (1 - 9 * Q2 - 6 * Q3
            + 3 * (Q1**2 + (3 * Q2 + 4 * Q3 - 1) * Q1 + 9 * Q2**2 + 4 * Q3**2 + 6 * Q2 * Q3))
    return (4.0 / 3.0 * np.sqrt(max(zeta, 0.0)) + 4.0 * abs(Q1 - Q3)) ** 2


def _p_closed(Q):
    Q1, Q2, Q3 = Q
    zeta = (1 - 9 * Q2 - 6 * Q3
            + 3 * (Q1**2 + (3 * Q2 + 4 * Q3 - 1) * Q1 + 9 * Q2**2 + 4 * Q3**2 + 6 * Q2 * Q3))
    return (2.0 / 3.0) ** 16 * (Q1 - Q3) ** 12 * zeta**2


def _ppt_quartic(Q):
    Q1, Q2, Q3 = Q
    return 3 * Q2 + 2 * Q1 * Q3 - (Q1**2 + 3 * Q2 * Q1 + (3 * Q2 + Q3) ** 2)


def _feasible_strict(Q, margin=1e-9):
    Q1, Q2, Q3 = Q
    return Q1 > margin and Q2 > margin and Q3 > margin and Q1 + 3 * Q2 + 2 * Q3 < 1 - margin


def _constraint_fn(constraint):
    if constraint == "s":
        return _s_closed, False
    if constraint == "p":
        return _p_closed, True   # solve in log space; p spans many decades
    raise ValueError(f"constraint must be 's' or 'p', got {constraint!r}")


def _scan_roots(g, lo, hi, n=256):
    xs = np.linspace(lo, hi, n)
    vals = np.array([g(x) for x in xs])
    roots = []
    for i in range(n - 1):
        if np.isfinite(vals[i]) and np.isfinite(vals[i + 1]) and vals[i] * vals[i + 1] < 0:
            a, b, fa = xs[i], xs[i + 1], vals[i]
            for _ in range(80):
                m = 0.5 * (a + b)
                fm = g(m)
                if fm == 0.0:
                    break
                if np.sign(fm) == np.sign(fa):
                    a, fa = m, fm
                else:
                    b = m
            roots.append(0.5 * (a + b))
    return roots


def min_pt_eigenvalue(Q):
    rho = build_density(QPoint(3, tuple(Q)))
    return float(eigenvalues_hermitian(partial_transpose(rho, (3, 3)))[0])


def _newton_pair(Q1, Q2_0, Q3_0, g1, max_iter=60):
    """2D Newton in (Q2, Q3) at fixed Q1 for (g1, ppt quartic) = (0, 0)."""
    x = np.array([Q2_0, Q3_0])

    def g(x):
        Q = (Q1, x[0], x[1])
        return np.array([g1(Q), _ppt_quartic(Q)])

    for _ in range(max_iter):
        v = g(x)
        if not np.all(np.isfinite(v)):
            return None
        if np.abs(v).max() < 1e-13:
            break
        h = 1e-8
        J = np.empty((2, 2))
        for j in range(2):
            e = np.zeros(2)
            e[j] = h
            J[:, j] = (g(x + e) - g(x - e)) / (2 * h)
        try:
            step = np.linalg.solve(J, v)
        except np.linalg.LinAlgError:
            return None
        step = np.clip(step, -0.05, 0.05)
        x = x - step
        if x[0] < 0 or x[1] < 0 or x[0] > 0.5 or x[1] > 0.6:
            return None
    else:
        return None
    return x


def saturation_points(constraint, target, locus, count, thresholds=None,
                      spec=None, max_seeds=200_000) -> PointCloud:
    """d=3 points where s or p equals `target`, inside the PPT set or on
    its boundary.  May return fewer than `count` points."""
    f, use_log = _constraint_fn(constraint)
    thresholds = thresholds or Thresholds.default(3)

    def resid(Q):
        if use_log:
            v = f(Q)
            return np.log(v) - np.log(target) if v > 0 else np.nan
        return f(Q) - target

    spec2 = spec or SequenceSpec(dim=2)
    found_Q = []
    seed = spec2.start_index
    while len(found_Q) < count and seed < spec2.start_index + max_seeds:
        xy = point_batch(spec2, seed, 1)[0]
        seed += 1
        Q1 = xy[0]
        Q2s = xy[1] / 3.0
        hi3 = (1 - Q1 - 3 * Q2s) / 2.0
        if Q1 <= 0 or Q2s <= 0 or hi3 <= 1e-9:
            continue
        roots = _scan_roots(lambda q3: resid((Q1, Q2s, q3)), 1e-9, hi3 - 1e-9)
        for q3 in roots:
            Q = np.array([Q1, Q2s, q3])
            if locus == "interior-PPT":
                if _feasible_strict(Q) and _ppt_quartic(Q) > 1e-9 \
                        and abs(f(Q) - target) <= 1e-10 * max(1.0, abs(target)):
                    found_Q.append(Q)
            elif locus == "ppt-boundary":
                x = _newton_pair(Q1, Q2s, q3, resid)
                if x is None:
                    continue
                Q = np.array([Q1, x[0], x[1]])
                rho_scale = 1.0
                if (_feasible_strict(Q)
                        and abs(f(Q) - target) <= 1e-10 * max(1.0, abs(target))
                        and abs(min_pt_eigenvalue(Q)) <= 1e-10 * rho_scale):
                    found_Q.append(Q)
            else:
                raise ValueError(f"locus must be interior-PPT or ppt-boundary, got {locus!r}")
            if len(found_Q) >= count:
                break

    if not found_Q:
        return PointCloud(dim=3, index=np.empty(0, dtype=int), Q=np.empty((0, 3)),
                          s=np.empty(0), p=np.empty(0), flags={}, labels=np.empty(0, dtype=object))
    Q = np.vstack(found_Q)
    _, results = evaluate_batch(Q, 3, thresholds)
    return _cloud_from(np.arange(len(Q)), Q, results, 3)


def cluster_count(points: np.ndarray, radius: float = 0.02) -> int:
    """Number of single-linkage clusters at the given merge radius."""
    points = np.asarray(points)
    n = len(points)
    if n == 0:
        return 0
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    tree = cKDTree(points)
    for i, j in tree.query_pairs(radius):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    return len({find(i) for i in range(n)})
