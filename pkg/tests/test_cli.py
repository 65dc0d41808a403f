import json
import subprocess
import sys

import pytest

from wplstable.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_dim_s(capsys):
    assert run(capsys, "dim-s", "2*c") == (0, "3\n")
    code, out = run(capsys, "dim-s", "w", "--format", "json")
    assert json.loads(out) == {"element": "x1+x2+x3+x4-2*c", "dim": 0}


def test_euler(capsys):
    assert run(capsys, "euler", "[O(0)]", "[O(w)]") == (0, "-1\n")
    assert run(capsys, "euler", "O(w)", "F(1,0)")[1] == "2\n"


def test_k0_reduce(capsys):
    code, out = run(capsys, "k0-reduce", "x1+x2", "--format", "json")
    d = json.loads(out)
    assert d["coefficients"] == [-1, 1, 1, 0, 0, 0] and d["rank"] == 1 and d["degree"] == 2
    assert d["steps"][0]["rule"] == "R2"


def test_shift_slope(capsys):
    assert run(capsys, "shift-slope", "0", "1")[1] == "4/3\n"
    assert run(capsys, "shift-slope", "1/2", "-1")[1] == "-1/2\n"
    assert run(capsys, "shift-slope", "-1/2", "-1")[1] == "-3/2\n"


def test_slope_normalize(capsys):
    assert run(capsys, "slope-normalize", "-4/3")[1] == "n1 = 1, slope 0\n"


def test_bundle(capsys):
    code, out = run(capsys, "bundle", "F(1,0)", "--format", "json")
    d = json.loads(out)
    assert d["projective_cover"] is None
    assert (d["injective_hull"]["rank"], d["injective_hull"]["degree"]) == (5, 6)


def test_hom_and_stable_hom(capsys):
    assert run(capsys, "hom", "O(w)", "F(1,0)")[1] == "2\n"
    code, out = run(capsys, "stable-hom", "F(1,0)", "E(0)[1]", "--trace", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["dim"] == 0
    assert d["trace"][-1]["rule"].startswith("S-")
    assert all("anchor" in s for s in d["trace"])


def test_unknown_exit_code(capsys):
    code, out = run(capsys, "hom", "Q(0)", "Q(x1+x2-c)")
    assert code == 3 and out.startswith("unknown")


def test_verify_tilting(capsys):
    code, out = run(capsys, "verify-tilting", "--object", "T", "--window", "3", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "verified" and d["total_dimension"] == 16
    assert {"from", "to", "n", "dim"} <= set(d["cells"][0])
    code, out = run(capsys, "verify-tilting", "--object", "Tprime", "--strict")
    assert code == 0 and "verdict: verified" in out


def test_bad_input(capsys):
    code = main(["dim-s", "x9"])
    assert code == 4
    assert "error" in capsys.readouterr().err


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "wplstable.cli", "shift-slope", "2/3", "1"],
                         capture_output=True, text=True, check=True).stdout
    assert out == "2\n"
