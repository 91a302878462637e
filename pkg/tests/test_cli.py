import io
import json
import math
import subprocess
import sys

import pytest

from foldribbon.cli import parse_angle, run
from foldribbon.export import from_document

SQRT3 = math.sqrt(3.0)


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_angle():
    assert parse_angle("60deg") == pytest.approx(math.pi / 3, abs=1e-15)
    assert parse_angle("1.5") == 1.5
    assert parse_angle("90DEG") == pytest.approx(math.pi / 2, abs=1e-15)


def test_build_then_analyze(tmp_path):
    doc = tmp_path / "m.json"
    code, out, err = invoke("build", "--family", "moebius", "--theta", "60deg", "--d", "0.01",
                            "--n", "3", "--out", str(doc))
    assert (code, out, err) == (0, "", "")
    assert from_document(doc.read_text()).diagram.params.n == 3
    code, out, _ = invoke("analyze", "--input", str(doc))
    rep = json.loads(out)
    assert code == 0
    assert rep["formula_value"] == pytest.approx(3 * SQRT3 + 0.09, abs=1e-12)
    assert rep["oracle_value"] == pytest.approx(3 * SQRT3 + 0.09, abs=1e-9)
    assert rep["linking_number"] == 7 and rep["band_type"] == "moebius_band"


def test_build_to_stdout_is_document():
    code, out, _ = invoke("build", "--family", "twist-even", "--n", "2", "--d", "0.05")
    assert code == 0
    assert from_document(out).diagram.params.family.value == "twist_even"


def test_optimize():
    code, out, _ = invoke("optimize", "--tol", "1e-9")
    res = json.loads(out)
    assert code == 0
    assert abs(res["theta"] - math.pi / 3) <= 1e-9
    assert f"{res['theta']:.9f}" == "1.047197551"
    assert f"{res['value']:.6f}" == "5.196152"
    assert res["iterations"] > 0


def test_table_csv_and_doc():
    code, out, _ = invoke("table", "--q-max", "9")
    assert code == 0
    assert out.splitlines() == ["q,crossing_number,construction_bound,kny_bound",
                                "3,3,13.856406,8.500000", "5,5,13.856406,13.500000",
                                "7,7,13.856406,18.500000", "9,9,13.856406,23.500000"]
    code, out, _ = invoke("table", "--q-max", "5", "--format", "doc")
    assert [r["q"] for r in json.loads(out)] == [3, 5]


def test_crease_and_render():
    code, out, _ = invoke("crease", "--family", "torus2q", "--q", "3", "--d", "0.1",
                          "--format", "doc")
    assert code == 0 and json.loads(out)["creases"]
    code, out, _ = invoke("crease", "--family", "moebius", "--theta", "90deg", "--d", "0.1")
    assert code == 0 and out.startswith("<?xml")
    code, out, _ = invoke("render", "--family", "moebius", "--d", "0.1", "--no-labels")
    assert code == 0 and "<text" not in out


@pytest.mark.parametrize("argv,code,needle", [
    (["build", "--family", "torus2q", "--q", "4"], 2, "odd"),
    (["build", "--family", "moebius", "--theta", "200deg"], 2, "(0, pi)"),
    (["build", "--family", "moebius", "--d", "-1"], 2, "> 0"),
    (["build", "--family", "moebius", "--d", "0.01", "--k", "4"], 3,
     "escape accordion clearance, Lemma 3.3"),
    (["build", "--family", "moebius", "--d", "0.01", "--k", "5"], 2, "Lemma 3.3"),
    (["build", "--family", "knot"], 2, "invalid choice"),
    (["build"], 2, "--family"),
    (["analyze", "--input", "/nonexistent/doc.json"], 2, "No such file"),
    (["build", "--family", "moebius", "--format", "svg"], 2, "format"),
    (["frobnicate"], 2, "invalid choice"),
    ([], 2, "required"),
])
def test_errors(argv, code, needle):
    got, out, err = invoke(*argv)
    assert got == code
    assert out == ""
    assert needle in err


def test_bad_document(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"schema_version": "99"}')
    code, out, err = invoke("analyze", "--input", str(p))
    assert (code, out) == (2, "") and "schema_version" in err
    p.write_text('{"schema_version": "1", ')
    code, out, err = invoke("render", "--input", str(p))
    assert (code, out) == (2, "") and "line 1" in err


def test_numerical_failure_exit_code(monkeypatch):
    from foldribbon import analysis
    from foldribbon.errors import NumericalError

    def boom(tol):
        raise NumericalError("bracket lost")
    monkeypatch.setattr(analysis, "optimal_theta", boom)
    code, out, err = invoke("optimize")
    assert (code, out) == (4, "") and "bracket lost" in err


@pytest.mark.parametrize("argv", [
    ["build", "--family", "torus2q", "--q", "7", "--d", "0.03"],
    ["analyze", "--family", "twist-odd", "--n", "2", "--d", "0.04"],
    ["render", "--family", "twist-even", "--n", "2", "--d", "0.05"],
    ["crease", "--family", "moebius", "--theta", "1.2", "--d", "0.02", "--n", "2"],
    ["optimize"],
    ["table"],
])
def test_deterministic_across_processes(argv):
    cmd = [sys.executable, "-m", "foldribbon", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and len(a) > 0
