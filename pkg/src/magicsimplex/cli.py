"""Command-line interface.

Exit codes: 0 success, 1 criterion not met (e.g. z-score gate, invalid
certificate), 2 usage error, 3 numeric inconsistency between closed forms
and matrix oracles, 4 I/O failure.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import atlas, geometry, liqiao, references
from .criteria import Thresholds, profile
from .errors import (CorruptCheckpointError, MagicSimplexError,
                     MalformedCertificateError, OracleDisagreementError,
                     UnknownReferenceError)
from .quasirandom import SequenceSpec, point_batch
from .states import QPoint

USAGE_ERROR, ORACLE_ERROR, IO_ERROR = 2, 3, 4


def parse_rational(text: str) -> float:
    """Accept '3/7', '0.25', '1e-3'."""
    text = text.strip()
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def parse_q(text: str, dim: int) -> QPoint:
    parts = [parse_rational(p) for p in text.split(",")]
    return QPoint(dim, tuple(parts))


def parse_count(text: str) -> int:
    return int(float(text))


def _json_default(o):
    import numpy as np

    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    raise TypeError(f"not JSON serializable: {type(o)}")


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, default=_json_default) + "\n"


def _write(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _thresholds(args, dim):
    t = Thresholds.default(dim)
    if getattr(args, "s_threshold", None) is not None:
        t = Thresholds(parse_rational(args.s_threshold), t.p_threshold)
    if getattr(args, "p_threshold", None) is not None:
        t = Thresholds(t.s_threshold, parse_rational(args.p_threshold))
    return t


def _workers(args):
    if args.workers is not None:
        return args.workers
    return int(os.environ.get("ATLAS_WORKERS", "1"))


# ---------------------------------------------------------------------------
# Subcommands

def cmd_estimate(args):
    thresholds = _thresholds(args, args.dim)
    predicates = tuple(args.predicates.split(",")) if args.predicates else None
    points = parse_count(args.points)
    t = None
    if args.resume and args.checkpoint and os.path.exists(args.checkpoint):
        t = atlas.checkpoint_load(args.checkpoint, expected_thresholds=thresholds)
        done = t.raw_total
        if done < points:
            t = atlas.extend(t, points - done, workers=_workers(args),
                             batch_size=args.batch_size)
    if t is None:
        t = atlas.tally(args.dim, points, predicates, thresholds=thresholds,
                        workers=_workers(args), batch_size=args.batch_size,
                        start_index=args.start)
    if args.checkpoint:
        atlas.checkpoint_save(t, args.checkpoint)

    rows = atlas.compare_report(t)
    report = {
        "family_dim": t.family_dim,
        "predicates": list(t.predicate_names),
        "raw_total": t.raw_total,
        "feasible_total": t.feasible_total,
        "acceptance_fraction": t.feasible_total / t.raw_total,
        "counts": [int(c) for c in t.counts],
        "comparisons": [{"name": r.name, "combo": r.combo, "estimate": r.estimate,
                         "exact": r.exact, "abs_err": r.abs_err, "z": r.z,
                         "kind": r.kind} for r in rows],
    }
    if set(("P", "S", "PPT")) <= set(t.predicate_names):
        report["atoms"] = {combo: est for combo, est in
                          zip(references.ATOM_ORDER, atlas.atoms_in_publication_order(t))}
    if args.format == "csv":
        lines = ["name,estimate,exact,abs_err,z"]
        for r in rows:
            lines.append(f"{r.name},{r.estimate:.17g},{r.exact:.17g},"
                         f"{r.abs_err:.17g},{r.z:.6g}")
        _write("\n".join(lines) + "\n", args.out)
    else:
        _write(_json_dump(report), args.out)
    worst = max((abs(r.z) for r in rows if r.kind == "exact"), default=0.0)
    return 0 if worst < 5.0 else 1


def cmd_classify(args):
    q = parse_q(args.q, args.dim)
    thresholds = _thresholds(args, args.dim)
    out = {"q": list(q.q), "dim": args.dim,
           "closed": profile(q, thresholds, mode="closed").as_dict(),
           "oracle": profile(q, thresholds, mode="oracle").as_dict()}
    # 'both' mode raises on out-of-band disagreement -> exit 3 via main()
    profile(q, thresholds, mode="both")
    _write(_json_dump(out), args.out)
    return 0


def _cloud_output(cloud, args):
    if args.format == "csv":
        if args.out in (None, "-"):
            raise MagicSimplexError("csv format requires --out")
        cloud.to_csv(args.out)
    else:
        payload = {"dim": cloud.dim, "points": [
            {"index": int(cloud.index[i]), "Q": [float(x) for x in cloud.Q[i]],
             "s": float(cloud.s[i]), "p": float(cloud.p[i]),
             "label": str(cloud.labels[i])} for i in range(len(cloud))]}
        _write(_json_dump(payload), args.out)


def cmd_cloud(args):
    thresholds = _thresholds(args, args.dim)
    cloud = geometry.region_cloud(args.expr, parse_count(args.count),
                                  family_dim=args.dim, thresholds=thresholds,
                                  max_raw=parse_count(args.max_raw))
    _cloud_output(cloud, args)
    return 0


def cmd_surface(args):
    target = parse_rational(args.target)
    cloud = geometry.saturation_points(args.constraint, target, args.locus,
                                       parse_count(args.count))
    _cloud_output(cloud, args)
    return 0


def cmd_bsa(args):
    q = parse_q(args.q, 3)
    result = liqiao.bsa(q, restarts=args.restarts)
    _write(_json_dump(liqiao.bsa_result_to_json(result)), args.out)
    return 0


def cmd_verify(args):
    q, cert = liqiao.load_certificate(args.cert)
    report = liqiao.verify_decomposition(q, cert)
    _write(_json_dump({"valid": report.valid,
                       "reconstruction_error": report.reconstruction_error,
                       "min_factor_eigenvalue": report.min_factor_eigenvalue,
                       "negative_terms": list(report.negative_terms)}), args.out)
    return 0 if report.valid else 1


def cmd_reference(args):
    if args.name:
        ref = references.exact_reference(args.name)
        refs = [ref]
    else:
        refs = references.reference_table()
    if args.format == "csv":
        lines = ["name,kind,family_dim,value,expression,combo"]
        for r in refs:
            lines.append(f'{r.name},{r.kind},{r.family_dim},{r.value:.17g},'
                         f'"{r.expression}","{r.combo or ""}"')
        _write("\n".join(lines) + "\n", args.out)
    else:
        _write(_json_dump([{"name": r.name, "kind": r.kind, "family_dim": r.family_dim,
                            "value": r.value, "expression": r.expression,
                            "combo": r.combo, "note": r.note} for r in refs]), args.out)
    return 0


def cmd_oracle_check(args):
    from .criteria import feasibility

    spec = SequenceSpec(dim=args.dim)
    need = parse_count(args.points)
    checked = 0
    idx = spec.start_index
    while checked < need:
        Q = point_batch(spec, idx, 10_000)
        idx += 10_000
        for row in Q:
            q = QPoint(args.dim, tuple(row))
            if not feasibility(q):
                continue
            profile(q, mode="both")  # raises OracleDisagreementError on mismatch
            checked += 1
            if checked >= need:
                break
    _write(_json_dump({"dim": args.dim, "feasible_checked": checked,
                       "disagreements": 0}), args.out)
    return 0


# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="magicsimplex",
                                description="Magic-simplex entanglement atlas tools")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, dim=True, fmt=True):
        if dim:
            sp.add_argument("--dim", type=int, choices=(3, 4), default=3)
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        if fmt:
            sp.add_argument("--format", choices=("csv", "json"), default="json")
        sp.add_argument("--s-threshold", default=None)
        sp.add_argument("--p-threshold", default=None)

    sp = sub.add_parser("estimate", help="quasirandom probability estimation")
    add_common(sp)
    sp.add_argument("--points", required=True, help="raw point budget, e.g. 1e8")
    sp.add_argument("--predicates", default=None, help="comma list, e.g. P,S,PPT")
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--batch-size", type=int, default=1_000_000)
    sp.add_argument("--start", type=int, default=None)
    sp.add_argument("--checkpoint", default=None)
    sp.add_argument("--resume", action="store_true")
    sp.set_defaults(func=cmd_estimate)

    sp = sub.add_parser("classify", help="criteria profile at one point")
    add_common(sp, fmt=False)
    sp.add_argument("--q", required=True, help="comma-separated, rationals allowed")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("cloud", help="labeled region point cloud")
    add_common(sp)
    sp.add_argument("--expr", required=True, help='boolean region, e.g. "P && !S"')
    sp.add_argument("--count", required=True)
    sp.add_argument("--max-raw", default="5e8")
    sp.set_defaults(func=cmd_cloud)

    sp = sub.add_parser("surface", help="constraint-saturation curve points")
    add_common(sp)
    sp.add_argument("--constraint", choices=("s", "p"), required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--locus", choices=("interior-PPT", "ppt-boundary"), required=True)
    sp.add_argument("--count", default="500")
    sp.set_defaults(func=cmd_surface)

    sp = sub.add_parser("bsa", help="best separable approximation (d=3)")
    add_common(sp, dim=False, fmt=False)
    sp.add_argument("--q", required=True)
    sp.add_argument("--restarts", type=int, default=32)
    sp.set_defaults(func=cmd_bsa)

    sp = sub.add_parser("verify-decomposition", help="check a certificate file")
    add_common(sp, dim=False, fmt=False)
    sp.add_argument("--cert", required=True, help="certificate JSON path")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("reference", help="exact-reference catalog")
    add_common(sp, dim=False)
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--name", default=None)
    sp.set_defaults(func=cmd_reference)

    sp = sub.add_parser("oracle-check", help="closed forms vs matrix oracles")
    add_common(sp, fmt=False)
    sp.add_argument("--points", default="1e4", help="feasible points to check")
    sp.set_defaults(func=cmd_oracle_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except OracleDisagreementError as exc:
        print(f"numeric inconsistency: {exc}", file=sys.stderr)
        return ORACLE_ERROR
    except CorruptCheckpointError as exc:
        print(f"checkpoint error: {exc}", file=sys.stderr)
        return IO_ERROR
    except (MalformedCertificateError, UnknownReferenceError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return IO_ERROR
    except MagicSimplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
