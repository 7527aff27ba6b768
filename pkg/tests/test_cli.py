"""Command line behaviour and exit codes."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from gpoly.cli import main

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_compute_examples(capsys):
    assert run(capsys, "compute", "--poly", "nc-u", "--graph", str(FIX / "np3.gpg"))[1] == \
        "1/4*theta^2 + alpha[e1]*alpha[e2] + alpha[e1]*alpha[e3] + alpha[e2]*alpha[e3]"
    assert run(capsys, "compute", "--poly", "tutte", "--graph", str(FIX / "c3.gpg"))[1] == "x^2 + x + y"
    assert run(capsys, "compute", "--poly", "symanzik-u", "--graph", str(FIX / "p2.gpg"))[1] == "1"


@pytest.mark.parametrize("method", ["startree", "matrix", "br_limit", "delcontr"])
def test_methods_print_the_same(capsys, method):
    code, out, _ = run(capsys, "compute", "--poly", "nc-u", "--graph", "np3", "--method", method)
    assert code == 0 and out.startswith("1/4*theta^2")


def test_formats_and_eval(capsys):
    code, out, _ = run(capsys, "compute", "--poly", "tutte", "--graph", "c3", "--format", "json")
    assert code == 0 and json.loads(out)
    code, out, _ = run(capsys, "compute", "--poly", "tutte", "--graph", "c3", "--format", "latex")
    assert code == 0 and "x^{2}" in out
    code, out, _ = run(capsys, "compute", "--poly", "nc-u", "--graph", "np3",
                       "--eval", "alpha[e1]=1,alpha[e2]=1,alpha[e3]=1,theta=2")
    assert (code, out) == (0, "4")


def test_nc_x_conserve_flag(capsys):
    on = run(capsys, "compute", "--poly", "nc-x", "--graph", "np3")[1]
    off = run(capsys, "compute", "--poly", "nc-x", "--graph", "np3", "--no-conserve")[1]
    assert "dot(p,p)" in on and "dot(p,p)" in off


def test_info(capsys):
    assert run(capsys, "info", "--graph", str(FIX / "np3.gpg"))[1] == \
        "V=2 E=3 k=1 r=1 n=2 bc=1 g=1 broken=1 flags=f1,f2"
    out = run(capsys, "info", "--graph", "np3", "--dual", "--format", "json")[1]
    m = json.loads(out)
    assert (m["V"], m["E"], m["bc"], m["g"]) == (1, 3, 2, 1)


def test_info_bare_vertex(capsys, tmp_path):
    p = tmp_path / "bare.gpg"
    p.write_text("graph B { vertex v ; }")
    out = run(capsys, "info", "--graph", str(p))[1]
    assert out.startswith("V=1 E=0") and "bc=1 g=0" in out


def test_exit_codes(capsys, tmp_path):
    plain = tmp_path / "plain.gpg"
    plain.write_text("graph G { vertex a ; vertex b ; edge e1 a -> b ; }")
    bad = tmp_path / "bad.gpg"
    bad.write_text("graph G { vertex a ; edge e1 a -> a ; edge e1 a -> a ; }")
    big = tmp_path / "big.gpg"
    big.write_text("graph G { vertex a ; " + " ".join(f"edge e{i} a -> a ;" for i in range(30)) + " }")
    assert run(capsys, "compute", "--poly", "br", "--graph", str(plain))[0] == 3
    assert run(capsys, "compute", "--poly", "tutte", "--graph", str(bad))[0] == 2
    assert run(capsys, "compute", "--poly", "tutte", "--graph", str(tmp_path / "none.gpg"))[0] == 2
    assert run(capsys, "compute", "--poly", "tutte", "--graph", str(big))[0] == 4
    assert run(capsys, "compute", "--poly", "tutte", "--graph", "c3", "--method", "matrix")[0] == 3
    assert run(capsys, "compute", "--poly", "nonsense", "--graph", "c3")[0] == 3
    assert run(capsys, "compute", "--poly", "tutte", "--graph", "c3", "--max-edges", "2")[0] == 4


def test_check_classical_seed(capsys):
    code, out, _ = run(capsys, "check", "--suite", "classical", "--seed", "7", "--random", "20")
    assert code == 0 and out.endswith("9/9 identities hold")


def test_check_nc_lists_route_agreement(capsys):
    code, out, _ = run(capsys, "check", "--suite", "nc", "--random", "5", "--rosettes", "5")
    assert code == 0 and "U* startree=matrix=br_limit=delcontr" in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "gpoly.cli", "compute", "--poly", "tutte", "--graph", "c3"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "x^2 + x + y"
