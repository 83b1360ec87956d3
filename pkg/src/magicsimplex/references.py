"""Catalog of exact reference constants for the probability estimates.

Every entry stores a human-readable closed-form expression together with
its double-precision value.  Entries whose probability is expressible as
a boolean combination of tallied predicates also carry that combination,
which is what compare_report matches against.

kind:
  'exact'    -- closed form believed exact
  'approx'   -- near-identity reported with a fit ratio close to 1
  'estimate' -- published numerical estimate with no known closed form

Known misprints in the source tables are resolved in favor of values
consistent with the eight-atom decomposition:

* the printed formula for "not PPT and MUB" does not evaluate to its
  printed numeric value; the catalog stores MUB - (PPT and MUB), which
  does;
* the printed formula for "not P or not S" duplicates the one for
  "PPT and not P and not S"; the catalog stores 1 - (P and S).
"""

from dataclasses import dataclass
from math import acosh, log, pi, sqrt

from .errors import UnknownReferenceError

_SQRT3 = sqrt(3.0)
_ACOSH97 = acosh(97.0)          # equals log(97 + 56 sqrt(3))
_A = _SQRT3 * log(2.0) / log(81.0)
_C = _ACOSH97 / (54.0 * _SQRT3)
_P4 = 4.0 * pi / (27.0 * _SQRT3)


@dataclass(frozen=True)
class ExactReference:
    name: str
    expression: str
    value: float
    kind: str = "exact"
    combo: str | None = None     # boolean combination over tallied predicates
    family_dim: int = 3
    note: str | None = None


#: the eight P/S/PPT atoms of the d=3 family, in publication order
ATOM_ORDER = (
    "P && S && PPT", "!P && S && PPT", "P && !S && PPT", "P && S && !PPT",
    "!P && !S && PPT", "!P && S && !PPT", "P && !S && !PPT", "!P && !S && !PPT",
)

_ATOM_VALUES = (
    2.0 / 121.0,
    4.0 * (242.0 * _SQRT3 * pi - 1311.0) / 9801.0,
    524119.0 / 4247100.0 + _P4 - _A - _C,
    7909.0 / 8775.0 - _P4 - _A + _C,
    1678081.0 / 4247100.0 - _P4 + _A + _C,
    -434.0 / 8775.0 - _P4 + _A + _C,
    70064.0 / 1061775.0 - _P4 + _A - _C,
    87236.0 / 1061775.0 + _P4 - _A - _C,
)

_ATOM_EXPRS = (
    "2/121",
    "4(242 sqrt(3) pi - 1311)/9801",
    "524119/4247100 + 4 pi/(27 sqrt(3)) - sqrt(3) log(2)/log(81) - acosh(97)/(54 sqrt(3))",
    "7909/8775 - 4 pi/(27 sqrt(3)) - sqrt(3) log(2)/log(81) + acosh(97)/(54 sqrt(3))",
    "1678081/4247100 - 4 pi/(27 sqrt(3)) + sqrt(3) log(2)/log(81) + acosh(97)/(54 sqrt(3))",
    "-434/8775 - 4 pi/(27 sqrt(3)) + sqrt(3) log(2)/log(81) + acosh(97)/(54 sqrt(3))",
    "70064/1061775 - 4 pi/(27 sqrt(3)) + sqrt(3) log(2)/log(81) - acosh(97)/(54 sqrt(3))",
    "87236/1061775 + 4 pi/(27 sqrt(3)) - sqrt(3) log(2)/log(81) - acosh(97)/(54 sqrt(3))",
)

_ATOM_NAMES = (
    "atom_P_S_PPT", "atom_notP_S_PPT", "atom_P_notS_PPT", "atom_P_S_notPPT",
    "atom_notP_notS_PPT", "atom_notP_S_notPPT", "atom_P_notS_notPPT",
    "atom_notP_notS_notPPT",
)


def exact_atoms() -> tuple:
    """The eight exact d=3 atom probabilities in publication order."""
    return _ATOM_VALUES


def _atom_sum(*indices):
    return sum(_ATOM_VALUES[i] for i in indices)


def _build_catalog():
    entries = []

    for name, expr, val, combo in zip(_ATOM_NAMES, _ATOM_EXPRS, _ATOM_VALUES, ATOM_ORDER):
        entries.append(ExactReference(name, expr, val, combo=combo))

    # P/S/PPT combinations (all exact sums of atoms)
    pspt = [
        ("ppt_d3", "8 pi/(27 sqrt(3))", 8.0 * pi / (27.0 * _SQRT3), "PPT"),
        ("notP_and_notS", "21/44", 21.0 / 44.0, "!P && !S"),
        ("P_d3",
         "4702531/4247100 - 4 pi/(27 sqrt(3)) - sqrt(3) log(2)/log(81) - acosh(97)/(54 sqrt(3))",
         4702531.0 / 4247100.0 - _P4 - _A - _C, "P"),
        ("S_d3", "(27 + sqrt(3) log(97 + 56 sqrt(3)))/81",
         (27.0 + _SQRT3 * _ACOSH97) / 81.0, "S"),
        ("P_and_S",
         "974539/1061775 - 4 pi/(27 sqrt(3)) - sqrt(3) log(2)/log(81) + acosh(97)/(54 sqrt(3))",
         974539.0 / 1061775.0 - _P4 - _A + _C, "P && S"),
        ("P_or_S", "23/44", 23.0 / 44.0, "P || S"),
        ("notP_or_notS", "1 - (P and S)", 1.0 - _atom_sum(0, 3), "!P || !S"),
        ("ppt_and_notP_notS",
         "1678081/4247100 - 4 pi/(27 sqrt(3)) + sqrt(3) log(2)/log(81) + acosh(97)/(54 sqrt(3))",
         _ATOM_VALUES[4], "PPT && !P && !S"),
        ("ppt_and_P",
         "54029/386100 + 4 pi/(27 sqrt(3)) - sqrt(3) log(2)/log(81) - acosh(97)/(54 sqrt(3))",
         54029.0 / 386100.0 + _P4 - _A - _C, "PPT && P"),
        ("ppt_and_S", "2(4 sqrt(3) pi - 21)/81",
         2.0 * (4.0 * _SQRT3 * pi - 21.0) / 81.0, "PPT && S"),
        ("ppt_and_P_and_S", "2/121", 2.0 / 121.0, "PPT && P && S"),
        ("ppt_and_P_or_S", "PPT - (PPT and not P and not S)",
         _atom_sum(0, 1, 2), "PPT && (P || S)"),
        ("ppt_and_notP_or_notS", "8 pi/(27 sqrt(3)) - 2/121",
         8.0 * pi / (27.0 * _SQRT3) - 2.0 / 121.0, "PPT && (!P || !S)"),
        ("ppt_and_S_and_notP", "4(242 sqrt(3) pi - 1311)/9801",
         _ATOM_VALUES[1], "PPT && S && !P"),
        ("notPPT_or_S", "13/27", 13.0 / 27.0, "!PPT || S"),
    ]
    for name, expr, val, combo in pspt:
        entries.append(ExactReference(name, expr, val, combo=combo))

    # PPT/MUB/Choi table
    _pptmub = -4.0 / 9.0 + _P4 + log(3.0) / 6.0
    mubchoi = [
        ("mub_d3", "1/6", 1.0 / 6.0, "MUB", None),
        ("choi_d3", "1/6", 1.0 / 6.0, "Choi", None),
        ("ppt_and_mub", "-4/9 + 4 pi/(27 sqrt(3)) + log(3)/6", _pptmub, "PPT && MUB", None),
        ("ppt_and_choi", "-4/9 + 4 pi/(27 sqrt(3)) + log(3)/6", _pptmub, "PPT && Choi", None),
        ("mub_and_choi", "1/9", 1.0 / 9.0, "MUB && Choi", None),
        ("mub_or_choi", "2/9", 2.0 / 9.0, "MUB || Choi", None),
        ("notmub_and_choi", "1/18", 1.0 / 18.0, "!MUB && Choi", None),
        ("mub_and_notchoi", "1/18", 1.0 / 18.0, "MUB && !Choi", None),
        ("ppt_and_notmub", "(72 + 8 sqrt(3) pi - 27 log(3))/162",
         (72.0 + 8.0 * _SQRT3 * pi - 27.0 * log(3.0)) / 162.0, "PPT && !MUB", None),
        ("ppt_and_notchoi", "(72 + 8 sqrt(3) pi - 27 log(3))/162",
         (72.0 + 8.0 * _SQRT3 * pi - 27.0 * log(3.0)) / 162.0, "PPT && !Choi", None),
        ("ppt_and_mub_and_choi", "0", 0.0, "PPT && MUB && Choi", None),
        ("ppt_and_mub_or_choi", "-8/9 + 8 pi/(27 sqrt(3)) + log(3)/3",
         -8.0 / 9.0 + 8.0 * pi / (27.0 * _SQRT3) + log(3.0) / 3.0,
         "PPT && (MUB || Choi)", None),
        ("notppt_and_mub", "1/6 - (PPT and MUB)", 1.0 / 6.0 - _pptmub, "!PPT && MUB",
         "printed formula (22518 sqrt(3)/91 term) does not match its numeric column; "
         "stored value is MUB - (PPT and MUB)"),
        ("notppt_and_choi", "1/6 - (PPT and Choi)", 1.0 / 6.0 - _pptmub, "!PPT && Choi",
         "same misprint as notppt_and_mub"),
        ("notppt_and_notmub", "(9(7 + log(27)) - 8 sqrt(3) pi)/162",
         (9.0 * (7.0 + log(27.0)) - 8.0 * _SQRT3 * pi) / 162.0, "!PPT && !MUB", None),
        ("notppt_and_notchoi", "(9(7 + log(27)) - 8 sqrt(3) pi)/162",
         (9.0 * (7.0 + log(27.0)) - 8.0 * _SQRT3 * pi) / 162.0, "!PPT && !Choi", None),
        ("notppt_and_notmub_and_notchoi", "(3 log(3) - 1)/9",
         (3.0 * log(3.0) - 1.0) / 9.0, "!PPT && !MUB && !Choi", None),
        ("ppt_and_notmub_and_notchoi", "(8 - 3 log(3))/9",
         (8.0 - 3.0 * log(3.0)) / 9.0, "PPT && !MUB && !Choi", None),
        ("ppt_or_mub_and_choi", "(9 + 8 sqrt(3) pi)/81",
         (9.0 + 8.0 * _SQRT3 * pi) / 81.0, "PPT || (MUB && Choi)", None),
    ]
    for name, expr, val, combo, note in mubchoi:
        entries.append(ExactReference(name, expr, val, combo=combo, note=note))

    # CCNR, POCU, d=4 and near-identities
    entries += [
        ExactReference("ccnr_d3", "(27 + sqrt(3) log(97 + 56 sqrt(3)))/81",
                       (27.0 + _SQRT3 * _ACOSH97) / 81.0, combo="CCNR",
                       note="CCNR entanglement probability; equals S_d3"),
        ExactReference("bound_entangled_ccnr_d3", "2(4 sqrt(3) pi - 21)/81",
                       2.0 * (4.0 * _SQRT3 * pi - 21.0) / 81.0, combo="PPT && CCNR"),
        ExactReference("pocu_candidate_prob",
                       "87236/1061775 + 4 pi/(27 sqrt(3)) - sqrt(3) log(2)/log(81) - acosh(97)/(54 sqrt(3))",
                       _ATOM_VALUES[7], combo="!P && !S && !PPT",
                       note="feasible, NPT, and below both entanglement bounds"),
        ExactReference("boolean_133", "16/325", 16.0 / 325.0, kind="approx",
                       combo="(P && PPT && S) || (!P && !PPT)",
                       note="near-identity; reported fit ratio 1.00000006615"),
        ExactReference("boolean_62", "sqrt(3) log(2)/log(9)",
                       _SQRT3 * log(2.0) / log(9.0), kind="approx",
                       combo="!(P && S) && (P || S || PPT)",
                       note="near-identity; reported fit ratio 0.999999807781"),
        ExactReference("ppt_d4", "1/2 + log(2 - sqrt(3))/(8 sqrt(3))",
                       0.5 + log(2.0 - _SQRT3) / (8.0 * _SQRT3), combo="PPT",
                       family_dim=4),
        ExactReference("d4_S_and_ppt", "3/2750", 3.0 / 2750.0, kind="approx",
                       combo="S && PPT", family_dim=4),
        ExactReference("d4_S_or_ppt", "31/38", 31.0 / 38.0, kind="approx",
                       combo="S || PPT", family_dim=4),
        ExactReference("d4_S_prob", "0.4118991565 (sum of published atom estimates)",
                       0.4118991565, kind="estimate", combo="S", family_dim=4),
        ExactReference("d4_separable_atom", "0.40386 (published atom estimate)",
                       0.40386, kind="estimate", combo="!P && !S && PPT", family_dim=4),
        ExactReference("d4_entanglement_prob", "0.607698 (published estimate)",
                       0.607698, kind="estimate", family_dim=4),
    ]
    return {e.name: e for e in entries}


_CATALOG = _build_catalog()


def exact_reference(name: str) -> ExactReference:
    try:
        return _CATALOG[name]
    except KeyError:
        raise UnknownReferenceError(f"no reference named {name!r}") from None


def reference_table() -> tuple:
    """All catalog entries."""
    return tuple(_CATALOG.values())
