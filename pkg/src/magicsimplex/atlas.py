"""Boolean-atom tallies over quasirandom feasible-point streams.

A tally counts, for an ordered predicate list of length k, how many
feasible points realize each of the 2^k truth assignments.  Assignment
index is sum_j bit_j 2^j over the predicate list (predicate j contributes
bit 2^j).  Tallies over disjoint index ranges merge by exact integer
addition, which is what makes worker partitioning and checkpoint/resume
bit-reproducible.
"""

from dataclasses import dataclass, field, replace
from concurrent.futures import ProcessPoolExecutor
import hashlib
import json
import math

import numpy as np

from .boolexpr import BooleanExpr
from .criteria import Thresholds, evaluate_batch
from .errors import CorruptCheckpointError, EmptyTallyError, UnknownPredicateError
from .quasirandom import SequenceSpec, point_batch
from .references import ATOM_ORDER, exact_atoms, reference_table

CHECKPOINT_VERSION = 1

PREDICATES_D3 = ("P", "S", "PPT", "MUB", "Choi", "CCNR")
PREDICATES_D4 = ("P", "S", "PPT")


@dataclass
class AtomTally:
    """Mergeable truth-assignment counts for one predicate list."""

    family_dim: int
    predicate_names: tuple
    counts: np.ndarray
    raw_total: int
    feasible_total: int
    spec: SequenceSpec
    thresholds: Thresholds
    next_index: int

    @classmethod
    def empty(cls, family_dim, predicate_names, spec, thresholds):
        k = len(predicate_names)
        return cls(family_dim=family_dim, predicate_names=tuple(predicate_names),
                   counts=np.zeros(2**k, dtype=np.int64), raw_total=0,
                   feasible_total=0, spec=spec, thresholds=thresholds,
                   next_index=spec.start_index)

    def merge(self, other: "AtomTally") -> "AtomTally":
        """Exact integer merge of tallies from disjoint index ranges."""
        if (self.predicate_names != other.predicate_names
                or self.family_dim != other.family_dim
                or self.spec.dim != other.spec.dim
                or self.spec.offset != other.spec.offset
                or self.thresholds != other.thresholds):
            raise ValueError("tallies are not merge-compatible")
        return replace(self, counts=self.counts + other.counts,
                       raw_total=self.raw_total + other.raw_total,
                       feasible_total=self.feasible_total + other.feasible_total,
                       next_index=max(self.next_index, other.next_index))


def _assignment_index(results, predicate_names):
    masks = []
    for j, name in enumerate(predicate_names):
        if name not in results:
            raise UnknownPredicateError(f"predicate {name!r} unavailable for this family")
        masks.append(results[name].astype(np.int64) << j)
    return sum(masks)


def process_range(family_dim, spec, start, count, predicate_names, thresholds,
                  batch_size=1_000_000):
    """Tally one contiguous index range [start, start+count).  Pure function."""
    k = len(predicate_names)
    counts = np.zeros(2**k, dtype=np.int64)
    feasible = 0
    for lo in range(start, start + count, batch_size):
        n = min(batch_size, start + count - lo)
        Q = point_batch(spec, lo, n)
        feas, results = evaluate_batch(Q, family_dim, thresholds)
        idx = _assignment_index(results, predicate_names)
        counts += np.bincount(idx, minlength=2**k)
        feasible += int(feas.sum())
    return counts, count, feasible


def _worker(args):
    return process_range(*args)


def tally(family_dim, budget, predicate_names=None, spec=None, thresholds=None,
          workers=1, batch_size=1_000_000, start_index=None) -> AtomTally:
    """Run a tally over `budget` raw sequence points.

    The index range is split into `workers` contiguous partitions; the
    merged result is identical for any worker count.
    """
    predicate_names = tuple(predicate_names or
                            (PREDICATES_D3 if family_dim == 3 else PREDICATES_D4))
    spec = spec or SequenceSpec(dim=family_dim)
    if start_index is not None:
        spec = replace(spec, start_index=start_index)
    thresholds = thresholds or Thresholds.default(family_dim)
    budget = int(budget)
    workers = max(1, int(workers))

    bounds = np.linspace(spec.start_index, spec.start_index + budget,
                         workers + 1).astype(np.int64)
    jobs = [(family_dim, spec, int(lo), int(hi - lo), predicate_names, thresholds,
             batch_size) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]

    result = AtomTally.empty(family_dim, predicate_names, spec, thresholds)
    if workers == 1 or len(jobs) == 1:
        parts = [process_range(*j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_worker, jobs))
    for counts, raw, feas in parts:
        result.counts = result.counts + counts
        result.raw_total += raw
        result.feasible_total += feas
    result.next_index = spec.start_index + budget
    return result


def extend(t: AtomTally, budget, workers=1, batch_size=1_000_000) -> AtomTally:
    """Continue a tally for `budget` further raw points."""
    more = tally(t.family_dim, budget, t.predicate_names,
                 spec=replace(t.spec, start_index=t.next_index),
                 thresholds=t.thresholds, workers=workers, batch_size=batch_size)
    merged = t.merge(more)
    merged.next_index = more.next_index
    return merged


def atom_probabilities(t: AtomTally) -> np.ndarray:
    """counts / feasible_total, indexed by truth assignment."""
    if t.feasible_total <= 0:
        raise EmptyTallyError("tally contains no feasible points")
    return t.counts / t.feasible_total


def eval_boolean(expr, source) -> float:
    """Probability mass of a boolean combination.

    `source` is an AtomTally, or a mapping of predicate-name tuples to
    exact atom probabilities as produced by exact_atom_probabilities().
    """
    if isinstance(expr, str):
        expr = BooleanExpr(expr)
    if isinstance(t := source, AtomTally):
        names = t.predicate_names
        probs = atom_probabilities(t)
    else:
        names, probs = source
    missing = expr.names - set(names)
    if missing:
        raise UnknownPredicateError(f"predicates {sorted(missing)} not in tally {names}")
    total = 0.0
    for assignment in range(len(probs)):
        env = {name: bool(assignment >> j & 1) for j, name in enumerate(names)}
        if expr.evaluate(env):
            total += probs[assignment]
    return total


def boolean_function_probability(func_index: int, source) -> float:
    """Index-mode boolean combination (alternative to expression strings).

    Bit convention: assignment index is sum_j bit_j 2^j over the predicate
    list, and bit a of `func_index` is the function's output on assignment
    a.  So for predicates (P, S, PPT), func_index 170 = 0b10101010 selects
    every assignment with P true.
    """
    if isinstance(t := source, AtomTally):
        probs = atom_probabilities(t)
    else:
        _, probs = source
    if not 0 <= func_index < 2 ** len(probs):
        raise ValueError(f"function index {func_index} out of range for "
                         f"{len(probs)} assignments")
    return float(sum(p for a, p in enumerate(probs) if func_index >> a & 1))


def exact_atom_probabilities():
    """Exact d=3 (P,S,PPT) atom masses keyed by assignment index, as an
    eval_boolean source."""
    names = ("P", "S", "PPT")
    probs = np.zeros(8)
    for combo, value in zip(ATOM_ORDER, exact_atoms()):
        expr = BooleanExpr(combo)
        for assignment in range(8):
            env = {name: bool(assignment >> j & 1) for j, name in enumerate(names)}
            if expr.evaluate(env):
                probs[assignment] = value
    return names, probs


def atoms_in_publication_order(t: AtomTally) -> np.ndarray:
    """The eight (P,S,PPT) atom estimates in the publication's order."""
    return np.array([eval_boolean(combo, t) for combo in ATOM_ORDER])


@dataclass(frozen=True)
class ReportRow:
    name: str
    combo: str
    estimate: float
    exact: float
    abs_err: float
    z: float
    kind: str


def compare_report(t: AtomTally):
    """Estimate-vs-reference rows for every catalog entry expressible over
    the tally's predicates.  z uses the binomial standard error."""
    rows = []
    n = t.feasible_total
    for ref in reference_table():
        if ref.family_dim != t.family_dim or ref.combo is None:
            continue
        try:
            est = eval_boolean(ref.combo, t)
        except UnknownPredicateError:
            continue
        v = min(max(ref.value, 0.0), 1.0)
        se = math.sqrt(v * (1.0 - v) / n) if n and 0.0 < v < 1.0 else float("nan")
        err = est - ref.value
        z = err / se if se and not math.isnan(se) else float("nan")
        rows.append(ReportRow(name=ref.name, combo=ref.combo, estimate=est,
                              exact=ref.value, abs_err=abs(err), z=z, kind=ref.kind))
    return rows


# ---------------------------------------------------------------------------
# Checkpointing

def _checkpoint_payload(t: AtomTally):
    return {
        "version": CHECKPOINT_VERSION,
        "family_dim": t.family_dim,
        "spec": {"offset": t.spec.offset, "start_index": t.spec.start_index,
                 "next_index": t.next_index},
        "thresholds": {"s": t.thresholds.s_threshold, "p": t.thresholds.p_threshold},
        "predicate_names": list(t.predicate_names),
        "counts": [int(c) for c in t.counts],
        "raw_total": t.raw_total,
        "feasible_total": t.feasible_total,
    }


def _payload_hash(payload):
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def checkpoint_save(t: AtomTally, path):
    payload = _checkpoint_payload(t)
    payload["integrity_hash"] = _payload_hash({k: v for k, v in payload.items()})
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)


def checkpoint_load(path, expected_thresholds: Thresholds | None = None) -> AtomTally:
    with open(path) as fh:
        payload = json.load(fh)
    stored_hash = payload.pop("integrity_hash", None)
    if payload.get("version") != CHECKPOINT_VERSION:
        raise CorruptCheckpointError(f"unsupported checkpoint version {payload.get('version')}")
    if stored_hash != _payload_hash(payload):
        raise CorruptCheckpointError("integrity hash mismatch")
    thresholds = Thresholds(payload["thresholds"]["s"], payload["thresholds"]["p"])
    if expected_thresholds is not None and thresholds != expected_thresholds:
        raise CorruptCheckpointError(
            f"checkpoint thresholds {thresholds} differ from requested {expected_thresholds}")
    spec = SequenceSpec(dim=payload["family_dim"], offset=payload["spec"]["offset"],
                        start_index=payload["spec"]["start_index"])
    t = AtomTally(family_dim=payload["family_dim"],
                  predicate_names=tuple(payload["predicate_names"]),
                  counts=np.asarray(payload["counts"], dtype=np.int64),
                  raw_total=payload["raw_total"],
                  feasible_total=payload["feasible_total"],
                  spec=spec, thresholds=thresholds,
                  next_index=payload["spec"]["next_index"])
    if t.counts.sum() != t.feasible_total:
        raise CorruptCheckpointError("counts do not sum to feasible_total")
    return t
