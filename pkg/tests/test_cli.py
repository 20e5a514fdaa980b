import csv
import io
import json
import subprocess
import sys

import pytest

from thetabounds.cli import run


def _json(capsys, argv):
    assert run(argv) == 0
    return json.loads(capsys.readouterr().out)


def test_orders(capsys):
    out = _json(capsys, ["orders", "--family", "sp", "--size", "1", "--q", "3", "--level", "1", "--oracle"])
    assert out == {"formula_value": "24", "oracle_value": "24", "match": True}


def test_orders_exact_big_number(capsys):
    out = _json(capsys, ["orders", "--family", "o", "--size", "6", "--q", "7", "--level", "4", "--epsilon", "-1"])
    assert int(out["formula_value"]) > 2 ** 100


def test_exponents_csv(capsys):
    assert run(["exponents", "--n", "5", "--m", "1", "--case", "orth"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert list(rows[0]) == ["case", "n", "m", "E", "nontrivial", "slope", "hybrid_factors"]
    assert rows[0]["E"] == "3/10" and rows[0]["nontrivial"] == "true"


def test_exponents_hybrid(capsys):
    assert run(["exponents", "--n", "5", "--m", "1", "--case", "orth", "--q", "3", "--nu", "20", "--ideal-norm", "81"]) == 0
    row = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))[0]
    assert row["slope"] == "2" and row["hybrid_factors"].startswith("vol=81;")


def test_roots(capsys):
    out = _json(capsys, ["roots", "--family", "o", "--n", "5", "--m", "2"])
    assert out["multiplicity_sum"] == 8 == out["dim_minus_rank"]
    assert sum(r["multiplicity"] for r in out["roots"]) == 8


def test_density_csv(capsys):
    assert run(["density", "--family", "o", "--n", "3", "--m", "1", "--nu", "10", "--samples", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "lambda_coords,beta,beta_tilde"
    assert lines[2].split(",")[1] == "4.000000000000e+02"


@pytest.mark.parametrize("prop", ["1", "2", "3"])
def test_testfn(capsys, prop):
    out = _json(capsys, ["--seed", "1", "testfn", "--family", "o", "--n", "4", "--m", "1", "--nu", "20", "--property", prop])
    assert set(out) == {"property", "grid", "min_value", "max_violation", "verdict"}
    assert out["verdict"] == "PASS"


def test_theta(capsys):
    out = _json(capsys, ["theta", "--n", "4", "--m", "2", "--case", "unit", "--mode", "trivial"])
    assert out["parameter"] == ["9/2", "7/2", "5/2", "3/2"] and out["rho_identity_holds"]
    out = _json(capsys, ["theta", "--n", "5", "--m", "1", "--case", "orth", "--mode", "tempered", "--lambda", "7"])
    assert out["ktype"] == ["2"] and out["spectral_parameter"] == ["7i"]


def test_out_file(tmp_path, capsys):
    p = tmp_path / "o.json"
    assert run(["--out", str(p), "orders", "--family", "u", "--size", "2", "--q", "3"]) == 0
    assert json.loads(p.read_text())["formula_value"] == "96"


def test_errors(capsys):
    assert run(["orders", "--family", "sp", "--size", "1", "--q", "4"]) == 1
    err = capsys.readouterr().err
    assert "finorders" in err and "'q': 4" in err
    assert run(["theta", "--n", "5", "--m", "1", "--case", "orth", "--mode", "tempered"]) == 1
    with pytest.raises(SystemExit) as exc:
        run(["nonsense"])
    assert exc.value.code != 0


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thetabounds", "exponents", "--n", "3", "--m", "1", "--case", "unit"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "1/3" in proc.stdout
