import csv
import json

import pytest

from piezoplate.cli import main

from conftest import DATA

PROBLEMS = sorted(DATA.glob("problem_*.json"))


def rows(text):
    r = list(csv.reader(text.splitlines()))
    return r[0], [[float(v) for v in row] for row in r[1:]]


@pytest.mark.parametrize("path", PROBLEMS, ids=lambda p: p.stem)
def test_solve_reproduces_boundary_data(path, tmp_path):
    out = tmp_path / "profile.csv"
    assert main(["solve", "--problem", str(path), "--out", str(out), "--samples", "11"]) == 0
    header, data = rows(out.read_text())
    assert len(header) == 18 and len(data) == 11
    col = dict(zip(header, zip(*data)))
    d = json.loads(path.read_text())["data"]
    assert col["T"][-1] == pytest.approx(d["Tbar"], rel=1e-12)
    assert col["phi"][-1] == pytest.approx(d["phibar"], rel=1e-12)
    for i in (1, 2, 3):
        assert col[f"u{i}"][0] == pytest.approx(d[f"ubar{i}"], rel=1e-12)
    if "phibar2" in d:
        assert col["phi"][0] == pytest.approx(d["phibar2"], abs=1e-10 * d["phibar"])
    tr = ("t1", "t6", "t5") if "1" in path.stem.split("_")[2] else ("t3", "t4", "t5")
    for k, name in enumerate(tr):
        assert col[name][-1] == pytest.approx(d[f"tbar{k + 1}"], rel=1e-9, abs=1e-9 * 1e6)
    report = json.loads(out.with_suffix(".json").read_text())
    assert report["checks"]["max_boundary_error"] <= 1e-10


def test_output_is_deterministic(capsys):
    p = str(PROBLEMS[0])
    main(["solve", "--problem", p])
    first = capsys.readouterr().out
    main(["solve", "--problem", p])
    assert capsys.readouterr().out == first


@pytest.mark.parametrize("path", PROBLEMS, ids=lambda p: p.stem)
def test_control(path, capsys):
    assert main(["control", "--problem", str(path)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["relative_residual"] <= 1e-10
    assert rep["achieved"] == pytest.approx(rep["target"], rel=1e-10)


def test_control_known_value(capsys):
    main(["control", "--problem", str(DATA / "problem_II_1_3.json")])
    rep = json.loads(capsys.readouterr().out)
    assert rep["free"] == "phibar2"
    assert rep["value"] == pytest.approx(-1350.0, rel=1e-9)


def test_verify(capsys):
    assert main(["verify", "--problem", str(DATA / "problem_II_3_3.json"), "--grid", "512"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["passed"] and rep["coarse"]["n"] == 512 and rep["n"] == 1024
    assert 1.8 <= rep["observed_order"] <= 2.2


def test_verify_failure_exit_code(capsys):
    code = main(["verify", "--problem", str(PROBLEMS[0]), "--grid", "16", "--tol", "1e-14"])
    assert code == 4
    assert "VerificationFailed" in capsys.readouterr().err


def test_sweep(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(["sweep", "--problem", str(DATA / "problem_I_1_3.json"),
                 "--schedule", str(DATA / "schedule_ramp.json"), "--out", str(out), "--samples", "5"])
    assert code == 0
    header, data = rows(out.read_text())
    assert header[0] == "tau" and len(header) == 19
    sched = json.loads((DATA / "schedule_ramp.json").read_text())
    assert len(data) == 5 * len(sched)
    assert [r[0] for r in data[::5]] == [e["tau"] for e in sched]


def test_schema_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"variant": "III"}')
    assert main(["solve", "--problem", str(bad)]) == 2
    bad.write_text("not json")
    assert main(["solve", "--problem", str(bad)]) == 2
    assert main(["solve", "--problem", str(tmp_path / "missing.json")]) == 2
    assert main(["sweep", "--problem", str(PROBLEMS[0])]) == 2


def test_solver_error_exit_code(tmp_path, capsys):
    raw = json.loads((DATA / "problem_I_1_3.json").read_text())
    raw["control"]["x"] = 1.0
    p = tmp_path / "far.json"
    p.write_text(json.dumps(raw))
    assert main(["control", "--problem", str(p)]) == 3
    assert capsys.readouterr().err.startswith("OutOfDomain")
