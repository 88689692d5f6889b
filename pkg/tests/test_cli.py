import io
import json
import subprocess
import sys

import pytest

from negbeta.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def body(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


def test_header_echoes_budgets():
    code, text = run("orbit", "--named", "gm2", "-n", "2")
    assert code == 0
    header = text.splitlines()[0]
    for key in ("named=gm2", "n=2", "horizon=2000", "letters=64", "precision=4096", "format=text"):
        assert key in header


def test_orbit_gm2_repeats():
    code, text = run("orbit", "--poly", "1,-3,1", "--bracket", "2,3", "-n", "4")
    rows = [line for line in body(text) if line.startswith("n=")]
    assert code == 0 and len(rows) == 5
    t = [line.split("t=")[1].split("~")[0].strip() for line in rows]
    assert t[0] == t[2] == t[4] and t[1] == t[3]
    assert "t_2 = t_0" in text


def test_orbit_integer_base_negative_coefficients():
    code, text = run("orbit", "--poly", "-2,1", "--bracket", "1,3", "-n", "3")
    assert code == 0
    rows = [line for line in body(text) if line.startswith("n=")]
    assert all("t=-2/3" in r for r in rows) and all("a=2" in r for r in rows[1:])


def test_orbit_streamed_csv():
    code, text = run("orbit", "--seq", "3 (0 1)", "-n", "3", "--format", "csv")
    assert code == 0
    lines = body(text)
    assert lines[0] == "n,a_n,t_n,t_n_decimal"
    assert [line.split(",")[1] for line in lines[1:]] == ["0", "3", "0", "1"]


def test_gapmorphism_text():
    code, text = run("gapmorphism", "--poly", "1,-3,1")
    assert code == 0
    assert body(text)[1:3] == ["A -> A B", "B -> A B B"]


def test_gapmorphism_budget_exit_code():
    code, text = run("gapmorphism", "--named", "prop11", "--letters", "8")
    assert code == 4 and "not closed within 8 letters" in text


def test_solve_counterexample_warning():
    code, text = run("solve", "--seq", "2 (1 0)")
    assert code == 0
    first = body(text)[0]
    assert first.startswith("beta = 2 (exact); WARNING: not the expansion")
    assert "2 2 2 2" in first


def test_solve_prints_exact_bracket():
    code, text = run("solve", "--seq", "(2 1)^")
    assert code == 0 and "root of x^2 - 3x + 1 in [2, 3]" in text
    code, text = run("solve", "--named", "prop13", "--horizon", "300")
    line = body(text)[0]
    assert code == 0 and line.startswith("beta in [") and "/" in line


def test_zset_reference_windows():
    code, text = run("zset", "--named", "golden", "--window", "-b^3,b^4")
    assert code == 0 and "14 points" in text and "gaps: AABABAABAABAB" in text
    code, text = run("zset", "--named", "gm2", "--window", "-b^3,b^2", "--format", "csv")
    lines = body(text)
    assert lines[0] == "k,y_k,y_k_decimal,is_z,letter" and len(lines) == 20
    code, text = run("zset", "--named", "two", "--window", "-4,4")
    assert "9 points" in text and "gaps: AAAAAAAA" in text


def test_zset_svg_and_json():
    code, svg = run("zset", "--named", "golden", "--window", "-b^3,b^4", "--format", "svg")
    assert code == 0 and svg.startswith("<svg") and svg.count('stroke-width="1.5"') == 14
    code, text = run("zset", "--named", "gm2", "--window", "-b^3,b^2", "--format", "json")
    doc = json.loads("\n".join(body(text)))
    assert list(doc) == ["base", "window", "z_points", "gap_labels", "gaps"]
    assert doc["gap_labels"] == "ABBABABBABBABABBAB"


def test_delone_tables():
    code, text = run("delone", "--named", "prop13", "--depth", "3")
    assert code == 0
    rows = [line.split() for line in body(text)[2:5]]
    maxes = [float(r[-1]) for r in rows]
    assert maxes == sorted(maxes) and len(set(maxes)) == 3
    code, text = run("delone", "--named", "gm2")
    assert "min gap: 1 " in text and "max gap: -1 + b" in text


def test_psi_and_oracle():
    code, text = run("psi", "--named", "gm2")
    assert code == 0 and "(0,1) -> (0,inf) (inf,0) (0,1)" in text
    code, text = run("oracle", "--named", "golden", "--depth", "4")
    assert code == 0 and "equal" in text


@pytest.mark.parametrize("argv", [
    ("orbit", "--poly", "1,-2,1"),
    ("orbit", "--poly", "1,-3,1", "--bracket", "0,3"),
    ("solve", "--seq", "(1)^"),
    ("solve", "--seq", "2 (3)^"),
    ("gapmorphism", "--named", "small13"),
    ("orbit", "--named", "gm2", "--poly", "1,-3,1"),
    ("zset", "--named", "gm2", "--window", "1,0"),
    ("zset", "--named", "gm2", "--window", "b**x,1"),
])
def test_precondition_exit_code(argv):
    assert run(*argv)[0] == 2


def test_undecidable_exit_code(capsys):
    code, _ = run("orbit", "--named", "prop12", "--precision", "64", "-n", "5")
    assert code == 3
    assert "undecidable" in capsys.readouterr().err


def test_determinism():
    a = run("zset", "--named", "prop12", "--depth", "2", "--format", "csv")
    b = run("zset", "--named", "prop12", "--depth", "2", "--format", "csv")
    assert a == b


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "negbeta.cli", "gapmorphism", "--named", "golden"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "A -> A B" in r.stdout
