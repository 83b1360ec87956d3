import json

import numpy as np
import pytest

from simplexfigures.cli import main
from simplexfigures.render import (ATOM_COMBOS, EmptyInputError, FigureSpec,
                                   MissingColumnError, SchemaMismatchError,
                                   read_cloud_csv, render_atoms, render_cloud)

HEADER = "index,Q1,Q2,Q3,s,p,feasible,ppt,mub,choi,ccnr,P,S,label"


def write_cloud(path, n=40, label="bound"):
    rng = np.random.default_rng(0)
    lines = [HEADER]
    labels = ["bound", "free", "separable", "pocu-candidate"]
    for i in range(n):
        q = rng.uniform(0.0, 0.3, 3)
        lab = label if label else labels[i % 4]
        lines.append(f"{i},{q[0]},{q[1]},{q[2]},1.5,1e-16,1,1,0,0,0,1,0,{lab}")
    path.write_text("\n".join(lines) + "\n")


def atom_report(n_atoms=8, with_exact=True):
    combos = list(ATOM_COMBOS)[:n_atoms]
    report = {"atoms": {c: 0.1 for c in combos}}
    if with_exact:
        report["comparisons"] = [
            {"name": f"atom_{i}", "combo": c, "exact": 0.1, "estimate": 0.1}
            for i, c in enumerate(ATOM_COMBOS)]
    return report


def test_render_cloud(tmp_path):
    csv_path = tmp_path / "cloud.csv"
    write_cloud(csv_path, label=None)
    out = tmp_path / "fig.png"
    render_cloud(FigureSpec(str(csv_path), str(out), title="layers"))
    assert out.exists() and out.stat().st_size > 0


def test_render_cloud_color_by_predicate(tmp_path):
    csv_path = tmp_path / "cloud.csv"
    write_cloud(csv_path)
    out = tmp_path / "fig.png"
    render_cloud(FigureSpec(str(csv_path), str(out), color_by="ppt"))
    assert out.exists()


def test_empty_csv_rejected(tmp_path):
    csv_path = tmp_path / "empty.csv"
    csv_path.write_text(HEADER + "\n")
    out = tmp_path / "fig.png"
    with pytest.raises(EmptyInputError):
        render_cloud(FigureSpec(str(csv_path), str(out)))
    assert not out.exists()


def test_missing_column_rejected(tmp_path):
    csv_path = tmp_path / "bad.csv"
    csv_path.write_text("index,Q1,Q2\n1,0.1,0.1\n")
    with pytest.raises(MissingColumnError):
        read_cloud_csv(str(csv_path))


def test_render_atoms(tmp_path):
    report_path = tmp_path / "report.json"
    report_path.write_text(json.dumps(atom_report()))
    out = tmp_path / "atoms.png"
    render_atoms(FigureSpec(str(report_path), str(out), log_scale=True))
    assert out.exists() and out.stat().st_size > 0


def test_render_atoms_exact_only(tmp_path):
    report_path = tmp_path / "report.json"
    report_path.write_text(json.dumps({"atoms_exact": {c: 0.1 for c in ATOM_COMBOS}}))
    out = tmp_path / "atoms.png"
    render_atoms(FigureSpec(str(report_path), str(out)))
    assert out.exists()


def test_render_atoms_schema_mismatch(tmp_path):
    report_path = tmp_path / "report.json"
    report_path.write_text(json.dumps(atom_report(n_atoms=7, with_exact=False)))
    with pytest.raises(SchemaMismatchError):
        render_atoms(FigureSpec(str(report_path), str(tmp_path / "x.png")))


def test_cli_roundtrip(tmp_path):
    csv_path = tmp_path / "cloud.csv"
    write_cloud(csv_path)
    out = tmp_path / "fig.png"
    assert main(["render-cloud", "--in", str(csv_path), "--out", str(out)]) == 0
    assert out.exists()

    report_path = tmp_path / "report.json"
    report_path.write_text(json.dumps(atom_report()))
    out2 = tmp_path / "atoms.png"
    assert main(["render-atoms", "--in", str(report_path), "--out", str(out2),
                 "--log"]) == 0
    assert out2.exists()


def test_cli_error_exit(tmp_path):
    missing = tmp_path / "nope.csv"
    assert main(["render-cloud", "--in", str(missing),
                 "--out", str(tmp_path / "f.png")]) == 1
