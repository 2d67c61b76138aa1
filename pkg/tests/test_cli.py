import csv
import io
import json
import math

import numpy as np
import pytest

from wigner_bounds import bounds, cli, wignerfile
from wigner_bounds.phase_space import Thermal


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    lines = text.splitlines()
    assert lines[0].startswith("# wigner-bounds ")
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


def test_surface(capsys):
    code, out, _ = run(capsys, "surface", "--mu-g-steps", "3", "--params-per-branch", "4")
    assert code == 0
    data = rows(out)
    assert {r["branch"] for r in data} == {"two_root", "one_root"}
    for r in data:
        p = bounds.branch_point(r["branch"], float(r["mu_g"]), float(r["param"]))
        assert float(r["mu_ex"]) == p.mu_ex and float(r["delta_ex"]) == p.delta_ex


def test_ultimate_with_lower(capsys):
    code, out, _ = run(capsys, "ultimate", "--mu-g-min", "0.1", "--mu-g-steps", "8", "--with-lower")
    assert code == 0
    data = rows(out)
    assert float(data[-1]["mu_g"]) == 1.0 and float(data[-1]["delta_upper"]) == 0.0
    for r in data:
        assert float(r["delta_lower"]) <= float(r["delta_upper"]) + 1e-12


def test_output_file_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert cli.main(["ultimate", "--mu-g-steps", "10", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_check_thermal(tmp_path, capsys):
    path = tmp_path / "t.json"
    wignerfile.dump(Thermal(1.0), path)
    code, out, _ = run(capsys, "check", "--input", str(path), "--max-n", "10")
    assert code == 0
    rep = json.loads(out)
    assert rep["physicality"]["verdict"] == "PassedUpToNmax"
    assert rep["delta"] == pytest.approx(0.0, abs=1e-12)
    assert rep["mu_g"] == pytest.approx(0.5)


def test_check_sampled_extremal_fails(tmp_path, capsys):
    mu_g = 0.5
    branch, param = max(bounds.ratio_locus(1 / mu_g), key=lambda bp: bounds.delta_ex_of(*bp))
    src = tmp_path / "ex.json"
    src.write_text(json.dumps({"type": "extremal", "branch": branch.value, "mu_g": mu_g, "param": param,
                               "convention": "vacuum-identity"}))
    form = wignerfile.load(src)
    sampled = wignerfile.sample(form, np.linspace(form.r_lo, form.r_hi, 3000))
    path = tmp_path / "s.json"
    wignerfile.dump(sampled, path)
    code, out, _ = run(capsys, "check", "--input", str(path), "--max-n", "8")
    assert code == 0
    rep = json.loads(out)
    assert rep["physicality"]["verdict"].startswith("FailedAtN(")
    assert rep["purity"] == pytest.approx(1.0, rel=1e-4)


def test_check_schema_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"type": "thermal", "C": 1.0, "convention": "other"}))
    code, _, err = run(capsys, "check", "--input", str(path))
    assert code == 2 and "convention" in err


def test_check_missing_file(capsys):
    code, _, _ = run(capsys, "check", "--input", "/nonexistent/file.json")
    assert code == 2


@pytest.mark.parametrize("branch,param", [("two_root", 0.8), ("one-root", 3.0), ("II", 9.0)])
def test_verify_passes(capsys, branch, param):
    code, out, _ = run(capsys, "verify", "--branch", branch, "--mu-g", "0.5", "--param", str(param))
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] and doc["max_rel_err"] < 1e-6


def test_verify_out_of_range(capsys):
    code, _, err = run(capsys, "verify", "--branch", "two_root", "--mu-g", "0.5", "--param", "3")
    assert code == 2 and "alpha" in err


def test_bad_grid(capsys):
    code, _, _ = run(capsys, "surface", "--mu-g-min", "0.8", "--mu-g-max", "0.2")
    assert code == 2


def test_bad_rel_tol(capsys):
    code, _, _ = run(capsys, "surface", "--rel-tol", "0")
    assert code == 2


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--branch", "three_root", "--mu-g", "0.5", "--param", "1"])
    assert exc.value.code == 2


def test_fmt_round_trips():
    for x in (math.pi, 1e-300, 0.1, 8 / 9):
        assert float(cli.fmt(x)) == x
