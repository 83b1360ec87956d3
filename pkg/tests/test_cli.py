import json

import numpy as np
import pytest

from magicsimplex.cli import main, parse_count, parse_q, parse_rational


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_parse_rational():
    assert parse_rational("3/7") == 3 / 7
    assert parse_rational("0.25") == 0.25
    assert parse_rational("1e-3") == 1e-3
    assert parse_count("1e6") == 1_000_000


def test_parse_q():
    q = parse_q("2/7,4/21,0", 3)
    assert q.q == (2 / 7, 4 / 21, 0.0)


def test_usage_error_exit_code(capsys):
    assert main(["no-such-command"]) == 2
    capsys.readouterr()
    assert main(["classify", "--dim", "3"]) == 2  # missing --q
    capsys.readouterr()


def test_classify(capsys):
    code, out = run(capsys, "classify", "--dim", "3", "--q", "2/7,4/21,0")
    assert code == 0
    d = json.loads(out)
    assert d["closed"]["ppt"] and d["closed"]["S"] and d["closed"]["P"]
    assert d["oracle"]["ppt"]
    np.testing.assert_allclose(d["closed"]["s"], d["oracle"]["s"], rtol=1e-12)


def test_classify_separable(capsys):
    code, out = run(capsys, "classify", "--dim", "3", "--q",
                    "0.1111,0.1111,0.1111")
    d = json.loads(out)
    assert code == 0
    assert d["closed"]["feasible"] and d["closed"]["ppt"]
    for key in ("P", "S", "mub", "choi", "ccnr"):
        assert not d["closed"][key]


def test_classify_d4(capsys):
    code, out = run(capsys, "classify", "--dim", "4", "--q",
                    "5/806,100/407,64/36743,8/18805")
    d = json.loads(out)
    assert code == 0
    assert d["closed"]["ppt"] and d["closed"]["S"]


def test_estimate_small(capsys, tmp_path):
    out_path = tmp_path / "est.json"
    code, _ = run(capsys, "estimate", "--dim", "3", "--points", "1e6",
                  "--out", str(out_path))
    assert code == 0
    d = json.loads(out_path.read_text())
    assert d["raw_total"] == 1_000_000
    assert abs(d["acceptance_fraction"] - 1 / 36) < 1e-3
    assert len(d["atoms"]) == 8
    assert any(r["name"] == "ppt_d3" for r in d["comparisons"])


def test_estimate_csv_report(capsys, tmp_path):
    out_path = tmp_path / "report.csv"
    code, _ = run(capsys, "estimate", "--dim", "3", "--points", "1e6",
                  "--format", "csv", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "name,estimate,exact,abs_err,z"
    row = dict(zip(lines[0].split(","),
                   next(l for l in lines if l.startswith("ppt_d3,")).split(",")))
    assert abs(float(row["estimate"]) - float(row["exact"])) == float(row["abs_err"])


def test_estimate_resume_matches_fresh(capsys, tmp_path):
    ck = tmp_path / "ck.json"
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert run(capsys, "estimate", "--dim", "3", "--points", "5e5",
               "--checkpoint", str(ck), "--out", str(a))[0] == 0
    assert run(capsys, "estimate", "--dim", "3", "--points", "1e6",
               "--checkpoint", str(ck), "--resume", "--out", str(b))[0] == 0
    fresh = tmp_path / "fresh.json"
    assert run(capsys, "estimate", "--dim", "3", "--points", "1e6",
               "--out", str(fresh))[0] == 0
    assert json.loads(b.read_text())["counts"] == json.loads(fresh.read_text())["counts"]


def test_estimate_checkpoint_mismatch(capsys, tmp_path):
    ck = tmp_path / "ck.json"
    assert run(capsys, "estimate", "--dim", "3", "--points", "1e5",
               "--checkpoint", str(ck))[0] == 0
    code, _ = run(capsys, "estimate", "--dim", "3", "--points", "2e5",
                  "--checkpoint", str(ck), "--resume", "--s-threshold", "2")
    assert code == 4


def test_cloud_csv_idempotent(capsys, tmp_path):
    p1 = tmp_path / "c1.csv"
    p2 = tmp_path / "c2.csv"
    args = ["cloud", "--expr", "PPT && (P || S)", "--count", "50",
            "--format", "csv"]
    assert main(args + ["--out", str(p1)]) == 0
    assert main(args + ["--out", str(p2)]) == 0
    capsys.readouterr()
    assert p1.read_bytes() == p2.read_bytes()
    assert len(p1.read_text().splitlines()) == 51


def test_surface(capsys, tmp_path):
    out_path = tmp_path / "surf.csv"
    code, _ = run(capsys, "surface", "--constraint", "s", "--target", "16/9",
                  "--locus", "interior-PPT", "--count", "10",
                  "--format", "csv", "--out", str(out_path))
    assert code == 0
    rows = out_path.read_text().splitlines()
    assert len(rows) == 11
    s_col = rows[0].split(",").index("s")
    for row in rows[1:]:
        assert abs(float(row.split(",")[s_col]) - 16 / 9) < 1e-10


def test_bsa_command(capsys):
    code, out = run(capsys, "bsa", "--q", "0.28,0.19,0.001", "--restarts", "4")
    assert code == 0
    d = json.loads(out)
    assert 0 < d["B"] < 1
    assert d["residual"] <= 1e-12


def test_verify_decomposition(capsys, tmp_path):
    third = 1 / 3
    mat = [[[third, 0], [0, 0], [0, 0]],
           [[0, 0], [third, 0], [0, 0]],
           [[0, 0], [0, 0], [third, 0]]]
    cert = {"q": [1 / 9, 1 / 9, 1 / 9], "terms": [{"w": 1.0, "A": mat, "B": mat}]}
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(cert))
    code, out = run(capsys, "verify-decomposition", "--cert", str(path))
    assert code == 0
    assert json.loads(out)["valid"]

    cert["q"] = [0.3, 0.05, 0.1]
    path.write_text(json.dumps(cert))
    code, out = run(capsys, "verify-decomposition", "--cert", str(path))
    assert code == 1
    assert not json.loads(out)["valid"]

    path.write_text(json.dumps({"q": [0.1, 0.1, 0.1]}))
    code, _ = run(capsys, "verify-decomposition", "--cert", str(path))
    assert code == 2


def test_reference_list(capsys):
    code, out = run(capsys, "reference", "--list", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) - 1 >= 30
    assert any("8 pi/(27 sqrt(3))" in line for line in lines)


def test_reference_by_name(capsys):
    code, out = run(capsys, "reference", "--name", "ppt_d3")
    assert code == 0
    assert json.loads(out)[0]["name"] == "ppt_d3"
    code, _ = run(capsys, "reference", "--name", "bogus")
    assert code == 2


def test_oracle_check(capsys):
    code, out = run(capsys, "oracle-check", "--dim", "3", "--points", "100")
    assert code == 0
    assert json.loads(out)["disagreements"] == 0


def test_workers_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ATLAS_WORKERS", "2")
    a = tmp_path / "a.json"
    assert run(capsys, "estimate", "--dim", "3", "--points", "4e5",
               "--out", str(a))[0] == 0
    monkeypatch.delenv("ATLAS_WORKERS")
    b = tmp_path / "b.json"
    assert run(capsys, "estimate", "--dim", "3", "--points", "4e5",
               "--out", str(b))[0] == 0
    assert json.loads(a.read_text())["counts"] == json.loads(b.read_text())["counts"]
