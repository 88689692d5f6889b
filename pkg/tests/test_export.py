import csv
import io

from negbeta.export import (alphabet_csv, gaps_csv, orbit_csv, points_csv, to_json, window_svg)
from negbeta.pointset import derive_gap_morphism, z_enumerate


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_orbit_csv(gm2):
    rows = _rows(orbit_csv(gm2, 2))
    assert rows[0] == ["n", "a_n", "t_n", "t_n_decimal"]
    assert rows[1] == ["0", "0", "-1/5 - 1/5*b", "-0.723607"]


def test_alphabet_csv(gm2):
    rows = _rows(alphabet_csv(gm2))
    assert rows[0] == ["i", "j", "t_2i", "t_2j-1", "length"]
    assert ["inf", "0", "0.000000", "0.276393", "0.276393"] in rows


def test_points_and_gaps_csv(gm2):
    b = gm2.beta
    W = z_enumerate(gm2, (-b, b))
    rows = _rows(points_csv(W, z_only=True))
    assert rows[0] == ["k", "y_k", "y_k_decimal", "is_z", "letter"]
    assert all(r[3] == "1" for r in rows[1:])
    g = _rows(gaps_csv(derive_gap_morphism(gm2)))
    assert g[1] == ["A", "1", "1.000000", "(inf,0) (0,inf)"]
    assert g[2][:3] == ["B", "-1 + b", "1.618034"]


def test_json_keeps_field_order():
    assert to_json({"b": 1, "a": 2}).index('"b"') < to_json({"b": 1, "a": 2}).index('"a"')


def test_svg_has_fixed_decimals(golden):
    b = golden.beta
    svg = window_svg(z_enumerate(golden, (-b ** 3, b ** 4)), "AABABAABAABAB")
    assert 'x1="20.000000"' in svg and svg.rstrip().endswith("</svg>")
    assert svg.count(">A<") == 8 and svg.count(">B<") == 5
