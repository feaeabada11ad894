import csv
import io
import json
import subprocess
import sys

import pytest

from djkm.arith import parse_ratfunc
from djkm.cli import main
from djkm.liealg import SL2_TEXT
from djkm.omega import BASIS_KEYS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_psi_csv(capsys):
    code, out, _ = run(capsys, "psi", "--smin", "-6", "--smax", "6", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["s"]) for r in rows] == list(range(-6, 7))
    row5 = next(r for r in rows if r["s"] == "5")
    assert row5["omega_m3"] == "(c/2)" and row5["omega_m1"] == "(c^2/2)"


def test_reduce_t4u_dt(capsys):
    code, out, _ = run(capsys, "reduce", "--expr", "t^4*u", "--d", "t")
    assert code == 0
    data = json.loads(out)
    assert list(data) == ["differential", *BASIS_KEYS]
    assert parse_ratfunc(data["omega_m4"]) == parse_ratfunc("(32*c^2-5)/35")
    assert parse_ratfunc(data["omega_m2"]) == parse_ratfunc("8*c/35")


def test_reduce_general_differential(capsys):
    # u * d(t^-2 u) pairs to 2c omega0 on sheet 1
    code, out, _ = run(capsys, "reduce", "--expr", "u", "--d", "t^-2*u", "--format", "csv")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert parse_ratfunc(row["omega0"]) == parse_ratfunc("2*c")


def test_verify_window0(capsys):
    code, out, _ = run(capsys, "verify", "--window", "0", "--checks", "all")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_verify_algebra_file(tmp_path, capsys):
    path = tmp_path / "sl2.txt"
    path.write_text(SL2_TEXT)
    code, out, _ = run(capsys, "verify", "--window", "0", "--algebra", str(path), "--checks", "jacobi,agreement")
    assert code == 0
    assert [c["name"] for c in json.loads(out)["checks"]] == ["jacobi", "agreement"]


def test_verify_failure_exit_1(capsys, monkeypatch):
    import functools

    import djkm.cli
    from faults import psi_sign_flip

    monkeypatch.setattr(djkm.cli, "verify", functools.partial(djkm.cli.verify, psi_fn=psi_sign_flip))
    code, out, _ = run(capsys, "verify", "--window", "2", "--checks", "agreement")
    assert code == 1
    assert json.loads(out)["checks"][0]["firstCounterexample"] == "[e⊗t^2, f⊗t^2*u]"


def test_invalid_algebra_file_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("dim 3\nlabels a b c\n0 1 2 1\n0 2 0 1\n")
    code, _, err = run(capsys, "verify", "--window", "0", "--algebra", str(path))
    assert code == 2 and "Jacobi" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["psi", "--c", "1"],
        ["psi", "--c", "-1"],
        ["psi", "--c", "1/0"],
        ["psi", "--c", "abc"],
        ["psi", "--bogus"],
        ["reduce", "--expr", "t^^2"],
        ["verify", "--checks", "nope"],
        ["verify", "--algebra", "/nonexistent/file"],
        ["series", "--family", "-5"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("djkm: error:")


def test_specialized_c(capsys):
    code, out, _ = run(capsys, "psi", "--smin", "5", "--smax", "5", "--c", "1/3", "--format", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    assert (row["omega_m1"], row["omega_m3"]) == ("(1/18)", "(1/6)")


def test_negative_lambda(capsys):
    code, out, _ = run(capsys, "gegenbauer", "--lambda", "-1/2", "--nmax", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[-1] == "2,(-c^2+1)/2"


def test_truncation_env(capsys, monkeypatch):
    monkeypatch.setenv("DJKM_TRUNCATION", "9")
    code, out, _ = run(capsys, "series", "--family", "-4")
    assert json.loads(out)["order"] == 9 and len(json.loads(out)["rows"]) == 9
    monkeypatch.setenv("DJKM_TRUNCATION", "x")
    code, _, _ = run(capsys, "series", "--family", "-4")
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["psi", "--smin", "-10", "--smax", "10", "--format", "csv"],
        ["pfamily", "--kmax", "20", "--format", "csv"],
        ["series", "--family", "-2", "--N", "30", "--format", "csv"],
        ["gegenbauer", "--lambda", "3/2", "--nmax", "12", "--format", "csv"],
    ],
)
def test_round_trip_and_determinism(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    from djkm.arith import format_ratfunc

    for row in list(csv.reader(io.StringIO(first)))[1:]:
        cell = row[-1]
        assert format_ratfunc(parse_ratfunc(cell)) == cell


@pytest.mark.parametrize("fmt", ["json", "csv", "latex"])
@pytest.mark.parametrize("cmd", [["psi"], ["pfamily", "--kmax", "4"], ["series", "--family", "-3", "--N", "8"], ["gegenbauer"], ["reduce", "--expr", "t*u"], ["verify", "--window", "0"]])
def test_all_formats(capsys, cmd, fmt):
    code, out, _ = run(capsys, *cmd, "--format", fmt)
    assert code == 0 and out
    if fmt == "json":
        json.loads(out)
    if fmt == "latex":
        assert out.startswith(r"\begin{tabular}") and out.rstrip().endswith(r"\end{tabular}")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "djkm", "psi", "--smin", "2", "--smax", "2", "--format", "csv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "2,0,0,0,0,1"
