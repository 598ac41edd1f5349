import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from isodyn import cli
from isodyn import io as iio
from isodyn.polynomial import rational_poly
from isodyn.scalar import GaussianRational


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.out, out.err


# -- parsing -----------------------------------------------------------------------

@pytest.mark.parametrize("text,value", [
    ("3/7", GaussianRational(3, 0) / 7),
    ("-2", GaussianRational(-2)),
    ("0.25", GaussianRational(1, 0) / 4),
    ("1+2i", GaussianRational(1, 2)),
    ("-i", GaussianRational(0, -1)),
    ("1/2-3/4j", GaussianRational(1, 0) / 2 - GaussianRational(0, 3) / 4),
    ("5i", GaussianRational(0, 5)),
])
def test_parse_scalar(text, value):
    assert iio.parse_scalar(text) == value


def test_parse_scalar_float_exponent():
    assert iio.parse_scalar("1e-3+1e2j", exact=False) == complex(1e-3, 1e2)


def test_parse_coeffs_descending_and_errors():
    assert iio.parse_coeffs("1,0,0,-1") == rational_poly([-1, 0, 0, 1])
    with pytest.raises(iio.InputError, match="coefficient 2 of 3"):
        iio.parse_coeffs("1,x,2")
    with pytest.raises(iio.InputError):
        iio.parse_coeffs("0,0")


def test_parse_misc():
    assert iio.parse_vertices("0,0 1,0 0.3,1.2") == [0, 1, 0.3 + 1.2j]
    with pytest.raises(iio.InputError):
        iio.parse_vertices("0,0 1,0")
    assert iio.parse_rect("-5,5,-5,5") == (-5, 5, -5, 5)
    with pytest.raises(iio.InputError):
        iio.parse_rect("1,0,0,1")
    assert len(iio.parse_alphas("-5:5")) == 11
    assert iio.parse_alphas("1/2,3") == [0.5, 3]


@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(1, 9), st.integers(-50, 50)), min_size=1, max_size=6))
def test_poly_json_roundtrip(entries):
    P = rational_poly([GaussianRational(a, c) / b for a, b, c in entries] + [1])
    assert iio.poly_from_json(json.loads(iio.dumps(iio.poly_to_json(P)))) == P
    F = P.to_float()
    assert iio.poly_from_json(iio.poly_to_json(F)) == F


def test_poly_json_schema():
    obj = iio.poly_to_json(rational_poly([GaussianRational(3, 0) / 7, 1]))
    assert obj == {"mode": "exact", "coeffs": [["3/7", "0"], ["1", "0"]]}
    with pytest.raises(iio.InputError, match=r"coeffs\[1\]"):
        iio.poly_from_json({"mode": "exact", "coeffs": [["1", "0"], ["1"]]})
    with pytest.raises(iio.InputError):
        iio.poly_from_json({"mode": "quad", "coeffs": []})


def test_loads_reports_position():
    with pytest.raises(iio.InputError, match=r"in\.json:2:5"):
        iio.loads('{"p":\n    oops}', "in.json")


# -- subcommands ------------------------------------------------------------------

def test_iso_poly_example(capsys):
    code, out, _, _ = run(capsys, "iso", "poly", "--coeffs", "1,0,0,-1")
    assert code == 0 and out["validity"] == "Valid"
    assert out["divisor"]["infinity"] == 1 and out["divisor"]["degree"] == 2
    (re, im, m), = out["divisor"]["points"]
    assert abs(re) < 1e-12 and abs(im) < 1e-12 and m == 1
    assert "config" in out and out["config"]["tol"] == 1e-10


def test_iso_poly_critical_pipeline_agrees(capsys):
    _, a, _, _ = run(capsys, "iso", "poly", "--coeffs", "1,0,1,0", "--pipeline", "critical")
    _, b, _, _ = run(capsys, "iso", "poly", "--coeffs", "1,0,1,0")
    for p, q in zip(a["divisor"]["points"], b["divisor"]["points"]):
        assert abs(p[0] - q[0]) < 1e-10 and abs(p[1] - q[1]) < 1e-10


def test_iso_rat_example(capsys):
    code, out, _, _ = run(capsys, "iso", "rat", "--p", "1,0,1", "--q", "1,0")
    assert code == 0
    pts = sorted(out["divisor"]["points"], key=lambda p: p[1])
    assert [round(p[1], 10) for p in pts] == [-1.0, 1.0] and all(abs(p[0]) < 1e-12 for p in pts)


def test_iso_from_json_file(tmp_path, capsys):
    f = tmp_path / "w.json"
    f.write_text(json.dumps({"p": {"mode": "exact", "coeffs": [["1", "0"], ["0", "0"], ["1", "0"]]},
                             "q": {"mode": "exact", "coeffs": [["0", "0"], ["1", "0"]]}}))
    code, out, _, _ = run(capsys, "iso", "rat", "--json", str(f))
    assert code == 0 and len(out["divisor"]["points"]) == 2


def test_malformed_json_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"p": [1, 2,,]}')
    code, _, _, err = run(capsys, "iso", "poly", "--json", str(f))
    assert code == 2 and "bad.json:1:" in err


def test_invalid_inputs_exit_2(capsys):
    code, out, _, _ = run(capsys, "iso", "poly", "--coeffs", "1,3,3,1")
    assert code == 2 and out["validity"] == "BinomialDegenerate"
    code, _, _, err = run(capsys, "iso", "poly", "--coeffs", "1,zz")
    assert code == 2 and "coefficient 2 of 2" in err
    code, _, _, _ = run(capsys, "iso", "triangle", "--vertices", "0,0 0,0 1,1")
    assert code == 2


def test_iso_triangle(capsys):
    code, out, _, _ = run(capsys, "iso", "triangle", "--vertices", "0,0 1,0 0.3,1.2")
    assert code == 0
    assert out["residual_S"] < 1e-9 and out["residual_S_prime"] < 1e-9
    assert abs(out["X26613"][0] - out["X26613_from_discriminant"][0]) < 1e-10


def test_iso_triangle_equilateral(capsys):
    code, out, _, _ = run(capsys, "iso", "triangle", "--vertices", "1,0 -0.5,0.8660254037844386 -0.5,-0.8660254037844386")
    assert code == 0 and out["S_prime"] == "inf" and out["X26613"] is None


def test_check_equivariance(capsys):
    code, out, _, _ = run(capsys, "check", "equivariance", "--d", "4", "--trials", "50", "--seed", "1")
    assert code == 0 and out["pass"]
    assert out["config"]["seed"] == 1 and out["config"]["pole_degrees"] == [0, 1, 2]


def test_check_equivariance_failure_exit_1(capsys):
    code, out, _, _ = run(capsys, "check", "equivariance", "--d", "3", "--trials", "3", "--pole-degree", "0",
                          "--tol", "0")
    assert code == 1 and not out["pass"]


def test_check_crosscheck(capsys):
    code, out, _, _ = run(capsys, "check", "crosscheck", "--trials", "12", "--max-d", "4", "--max-pole", "1")
    assert code == 0 and out["report"]["pass"]


def test_check_separation(capsys):
    code, out, _, _ = run(capsys, "check", "separation", "--d", "4", "--samples", "20", "--rect", "-5,5,-5,5",
                          "--seed", "7")
    assert code == 0 and out["scan"]["strict"] == 0 and out["control"]["separable"]
    assert out["config"]["rect"] == [-5.0, 5.0, -5.0, 5.0]


def test_scan_strata(capsys):
    code, out, _, _ = run(capsys, "scan", "strata", "--d", "4", "--samples", "3", "--seed", "42")
    assert code == 0 and out["report"]["pass"]


def test_centroid_line(capsys):
    code, out, _, _ = run(capsys, "centroid-line", "--coeffs", "1,1,0,2", "--alphas", "-5:5")
    assert code == 0 and out["collinear"]
    code, out, _, _ = run(capsys, "centroid-line", "--coeffs", "1,0,0,-1")
    assert out["line"]["degenerate"]


def test_emit_figure_and_output_flag(tmp_path, capsys):
    report = tmp_path / "r.json"
    code = cli.main(["-o", str(report), "emit", "figure", "legendre", "10", "--out", str(tmp_path / "leg")])
    assert code == 0
    out = json.loads(report.read_text())
    assert out["roots"] == 10 and out["iso_points"] == 16
    assert (tmp_path / "leg.csv").exists() and (tmp_path / "leg.svg").exists()


def test_output_is_byte_identical(capsys):
    _, _, a, _ = run(capsys, "check", "equivariance", "--d", "3", "--trials", "5", "--pole-degree", "1")
    _, _, b, _ = run(capsys, "check", "equivariance", "--d", "3", "--trials", "5", "--pole-degree", "1")
    assert a == b and a.endswith("\n")


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "isodyn.cli", "iso", "poly", "--coeffs", "1,0,1,0"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["divisor"]["degree"] == 2
