from __future__ import annotations

import io
import json

import pytest

from hypersing.cli import SCHEMA, Request, dispatch, main, parse_request, render_text
from hypersing.errors import ParseError


def run(argv, stdin=""):
    out = io.StringIO()
    code = main(argv, io.StringIO(stdin), out)
    return code, out.getvalue()


def run_json(argv, stdin=""):
    code, text = run(argv, stdin)
    return code, json.loads(text)


def test_parse_request_examples():
    req = parse_request(["slope", "--field", "F2", "--vars", "y|x", "x^2+y^4+y^5"])
    assert req.command == "slope" and req.field_spec == "F2" and req.frame_spec == "y|x"
    req = parse_request(["delta", "--vars", "u|y1,y2,y3", "--precision", "96"],
                        io.StringIO("y1^4+y1^2*(y2+u^2)^2+y3^4+y3*u^7+u^12\n"))
    assert req.precision == 96 and req.poly_text.startswith("y1^4")
    with pytest.raises(ParseError) as info:
        parse_request(["slope", "--field", "F2", "x^^2"])
    assert info.value.column == 3
    with pytest.raises(ParseError):
        parse_request(["slope", "--bogus", "x^2"])
    with pytest.raises(ParseError):
        parse_request(["slope", "--vars", "u|y", "x^2"])
    with pytest.raises(ParseError):
        parse_request(["slope"], io.StringIO(""))


def test_intro_report():
    code, rep = run_json(["slope", "--field", "F2", "--vars", "y|x", "x^2+y^4+y^5", "--no-timing"])
    assert code == 0 and rep["schema"] == SCHEMA and rep["status"] == "ok"
    assert rep["result"]["slope"] == {"kind": "Exact", "num": 5, "den": 2}
    assert rep["result"]["witness"] == ["x -> y^2 + x"]
    assert "timing_ms" not in rep


def test_refined_report_from_file(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("y1^4+y1^2*(y2+u^2)^2+y3^4+y3*u^7+u^12\n")
    code, rep = run_json(["refined-slope", "--vars", "u,y1,y2,y3", "--file", str(path)])
    assert code == 0
    assert rep["result"]["slope"] == {"kind": "Exact", "num": 7, "den": 3}
    assert isinstance(rep["timing_ms"], float)


def test_degenerate_report():
    code, rep = run_json(["delta", "y^3", "--no-timing"])
    assert code == 0
    assert rep["result"]["delta"] == {"kind": "Infinite"}
    assert rep["result"]["trace"]["status"] == "Degenerate"


def test_exit_codes():
    code, rep = run_json(["slope", "--vars", "u|y", "y+u^2"])
    assert code == 2 and rep["status"] == "refused" and rep["error"]["type"] == "PreconditionError"
    code, rep = run_json(["slope", "x^^2"])
    assert code == 1 and rep["error"]["type"] == "ParseError"
    code, rep = run_json(["cut", "--field", "F2", "--vars", "u|y1,y2", "--cut", "0", "y1*y2+u^3*y1+u^5"])
    assert code == 2 and rep["error"]["type"] == "InvalidCutError"
    code, rep = run_json(["directrix", "--field", "Fpt:2", "x^2+t*y^2"])
    assert code == 1 and rep["error"]["type"] == "UnsupportedFieldError"


def test_determinism_modulo_timing():
    argv = ["cut", "--vars", "u|z1,z2,z3", "--seed", "5", "z1^4+z1^2*z2^2+z3^4+z3*u^7+u^12"]
    a = run_json(argv)[1]
    b = run_json(argv)[1]
    a.pop("timing_ms")
    b.pop("timing_ms")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["result"]["nubar_gen"] == {"kind": "Exact", "num": 7, "den": 3}
    assert a["result"]["certificate"]["valid"]


@pytest.mark.parametrize("cut,value", [("0,0", (3, 1)), ("0,1", (7, 3))])
def test_explicit_cuts(cut, value):
    code, rep = run_json(["cut", "--vars", "u|z1,z2,z3", "--cut", cut, "z1^4+z1^2*z2^2+z3^4+z3*u^7+u^12"])
    assert code == 0
    num, den = value
    assert rep["result"]["nubar_lin"] == {"kind": "Exact", "num": num, "den": den}


def test_stdin_and_dash():
    code, rep = run_json(["order", "-"], "x^3 + x*y^2 + y^7\n")
    assert code == 0 and rep["result"]["order"] == 3


@pytest.mark.parametrize("argv,key", [
    (["initial-form", "--vars", "y|x", "--vertex", "2", "x^2+y^4+y^5"], "plus"),
    (["directrix", "(x+y)^3+x^4"], "codimension"),
    (["polyhedron", "--vars", "y|x", "x^2+y^4+y^5"], "delta"),
    (["prepare", "--vars", "u|z", "z^2+2*u^2*z+u^5"], "orders"),
    (["nubar", "--vars", "u|z", "--theta", "z+u^2", "z^2+2*u^2*z+u^5"], "resultant"),
    (["hord", "z^3+3*z*u^5+u^7"], "ord_d"),
])
def test_every_command_runs(argv, key):
    code, rep = run_json(argv)
    assert code == 0 and key in rep["result"]


def test_nubar_intro_resultant():
    code, rep = run_json(["nubar", "--field", "F2", "--vars", "y|x", "--theta", "x+y^2", "x^2+y^4+y^5"])
    assert rep["result"]["resultant"] == {"kind": "Exact", "num": 5, "den": 2}


def test_text_format_derives_from_json():
    code, text = run(["slope", "--field", "F2", "--vars", "y|x", "--format", "text", "--no-timing",
                      "x^2+y^4+y^5"])
    assert code == 0
    assert "result.slope: Exact(5/2)" in text.splitlines()
    report, _ = dispatch(parse_request(["slope", "--field", "F2", "--vars", "y|x", "--no-timing", "x^2+y^4+y^5"]))
    assert render_text(report) + "\n" == text


def test_suite_command():
    code, rep = run_json(["suite", "--precision", "32"])
    assert code == 0 and rep["result"]["all_pass"]
    assert rep["result"]["passed"] == rep["result"]["total"]


def test_precision_env(monkeypatch):
    monkeypatch.setenv("HYPERSING_PRECISION", "20")
    assert parse_request(["order", "x^2"]).precision == 20
    assert Request("order").precision == 20
