"""Command-line front end: parse a request, dispatch it, print a JSON report.

Exit codes: 0 on success, 2 when a computation refuses on mathematical
grounds (an unmet precondition), 1 on any other error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Sequence, TextIO

from . import __version__
from .cone import directrix, is_extremal, normalize_frame
from .corpus import CORPUS
from .cuts import LinearCut, apply_cut, certify_generic, nubar_gen, nubar_lin, refined_samuel_slope
from .errors import HypersingError, ParseError, PreconditionError, Refusal
from .hord import hord_report, maximal_contact_check
from .hpoly import initial_form_at_vertex, polyhedron, prepare_delta
from .mpoly import Frame, Poly, default_precision, format_poly
from .nubar import SlopeReport, nubar_hickel, nubar_lower_bound, nubar_resultant, samuel_slope
from .parse import identifiers, parse_poly
from .scalars import Field, parse_field
from .wprep import coefficient_orders, prepare

SCHEMA = "hypersing.report/1"

COMMANDS = ("order", "initial-form", "directrix", "polyhedron", "delta", "prepare",
            "nubar", "slope", "refined-slope", "hord", "cut", "suite")


@dataclass(frozen=True)
class Request:
    command: str
    poly_text: str = ""
    field_spec: str = "Q"
    frame_spec: str = "auto"
    precision: int = dc_field(default_factory=default_precision)
    seed: int = 0
    fmt: str = "json"
    theta: str | None = None
    cut: str | None = None
    vertex: str | None = None
    n_max: int = 6
    timing: bool = True

    def echo(self) -> dict:
        return {
            "command": self.command,
            "poly": self.poly_text,
            "field": self.field_spec,
            "vars": self.frame_spec,
            "precision": self.precision,
            "seed": self.seed,
        }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message, None, None)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypersing", description="Samuel slope and related invariants of hypersurfaces")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("poly", nargs="?", help="polynomial text; '-' or omitted reads --file or stdin")
    p.add_argument("--field", default="Q", help="Q, Fp:<p>, Fq:<p>^<e> or Fpt:<p>")
    p.add_argument("--vars", default="auto", help='frame "u1,u2|y1,y2" or "auto"')
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--file", default=None)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--theta", default=None, help="element for the nubar command")
    p.add_argument("--cut", default=None, help="comma-separated a_2..a_r for the cut command")
    p.add_argument("--vertex", default=None, help="comma-separated rational vertex")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--no-timing", action="store_true")
    return p


def parse_request(argv: Sequence[str], stdin: TextIO | None = None) -> Request:
    ns = _build_parser().parse_intermixed_args(list(argv))
    text = ns.poly
    if ns.command != "suite":
        if text is None or text == "-":
            if ns.file is not None:
                with open(ns.file, encoding="utf-8") as fh:
                    text = fh.read()
            else:
                text = (stdin or sys.stdin).read()
        text = text.strip()
        if not text:
            raise ParseError("no polynomial given", None, None)
    precision = ns.precision if ns.precision is not None else default_precision()
    if precision < 1:
        raise ParseError("precision must be positive", None, None)
    req = Request(ns.command, text or "", ns.field, ns.vars.strip(), precision, ns.seed, ns.format,
                  ns.theta, ns.cut, ns.vertex, ns.n_max, not ns.no_timing)
    if req.command != "suite":
        _load(req)  # grammar and variable validation
    return req


# ---------------------------------------------------------------------------
# helpers


def _names_and_frame(req: Request, fld: Field) -> tuple[tuple[str, ...], Frame | None]:
    if req.frame_spec == "auto":
        gen = fld.generator_name
        names = tuple(sorted(x for x in identifiers(req.poly_text) if x != gen))
        if not names:
            raise ParseError("polynomial has no variables", None, None)
        return names, None
    frame = Frame.parse(req.frame_spec, req.precision)
    return frame.names, frame


def _load(req: Request) -> tuple[Poly, tuple[str, ...], Frame | None, Field]:
    fld = parse_field(req.field_spec)
    names, frame = _names_and_frame(req, fld)
    f = parse_poly(req.poly_text, names, fld)
    return f, names, frame, fld


def _normalized(req: Request) -> tuple[Poly, Frame, Field]:
    f, names, frame, fld = _load(req)
    if frame is None:
        g, fr, _ = normalize_frame(f, names, req.precision)
        return g, fr, fld
    return f, frame, fld


def _fraction(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def _slope_json(rep: SlopeReport) -> dict:
    out: dict[str, Any] = {
        "multiplicity": rep.m,
        "extremal": rep.extremal,
        "slope": rep.slope.to_json(),
        "method": rep.method,
    }
    if rep.frame is not None:
        out["frame"] = rep.frame.text()
        out["normalized"] = format_poly(rep.poly, rep.frame.names)
        out["witness"] = rep.witness_text()
        out["trace"] = rep.trace.to_json(rep.frame)
    if rep.notes:
        out["notes"] = list(rep.notes)
    return out


def _parse_scalars(text: str, fld: Field) -> list:
    vals = []
    for part in text.split(","):
        vals.append(parse_poly(part, [], fld).constant_term())
    return vals


# ---------------------------------------------------------------------------
# commands


def _cmd_order(req: Request) -> dict:
    f, names, _, _ = _load(req)
    return {"order": f.ord() if not f.is_zero() else None,
            "initial_form": format_poly(f.initial_form(), names) if not f.is_zero() else "0"}


def _cmd_initial_form(req: Request) -> dict:
    if req.vertex is None:
        f, names, _, _ = _load(req)
        if f.is_zero():
            raise PreconditionError("zero polynomial has no initial form")
        return {"degree": f.ord(), "initial_form": format_poly(f.initial_form(), names)}
    f, frame, fld = _normalized(req)
    v = tuple(Fraction(x.strip()) for x in req.vertex.split(","))
    ivf = initial_form_at_vertex(f, frame, v)
    return {"frame": frame.text(), "vertex": [_fraction(x) for x in ivf.vertex],
            "initial_form": format_poly(ivf.form, frame.names), "plus": format_poly(ivf.plus, frame.names)}


def _cmd_directrix(req: Request) -> dict:
    f, names, _, _ = _load(req)
    if f.is_zero() or f.ord() < 1:
        raise PreconditionError("f must be a nonzero element of the maximal ideal")
    d = directrix(f.initial_form())
    new_names, split = d.new_names(names)
    out = {
        "codimension": d.r,
        "forms": [format_poly(L, names) for L in d.forms],
        "frame": Frame(new_names, split, req.precision).text(),
    }
    if f.ord() >= 2:
        out["extremal"] = is_extremal(f).extremal
    return out


def _cmd_polyhedron(req: Request) -> dict:
    f, frame, _ = _normalized(req)
    out = polyhedron(f, frame).to_json()
    out["frame"] = frame.text()
    return out


def _cmd_delta(req: Request) -> dict:
    f, frame, _ = _normalized(req)
    val, trace = prepare_delta(f, frame)
    return {"frame": frame.text(), "delta": val.to_json(), "trace": trace.to_json(frame)}


def _cmd_prepare(req: Request) -> dict:
    f, names, frame, _ = _load(req)
    if frame is None:
        f, frame, _ = _normalized(req)
    w = prepare(f, frame)
    nm = frame.names
    return {
        "frame": frame.text(),
        "degree": w.ell,
        "exact": w.exact,
        "coefficients": [{"i": i, "a": format_poly(s.poly, nm), "certified_degree": s.degree}
                         for i, s in enumerate(w.coeffs, start=1)],
        "orders": [v.to_json() for v in coefficient_orders(w)],
        "unit": format_poly(w.unit.poly, nm),
    }


def _cmd_nubar(req: Request) -> dict:
    f, frame, fld = _normalized(req)
    y = frame.y_indices[0]
    out: dict[str, Any] = {"frame": frame.text()}
    theta = parse_poly(req.theta, frame.names, fld) if req.theta else Poly.var(fld, frame.n, y)
    out["theta"] = format_poly(theta, frame.names)
    if theta == Poly.var(fld, frame.n, y):
        out["hickel"] = nubar_hickel(f, frame).to_json()
    try:
        out["resultant"] = nubar_resultant(f, frame, theta).to_json()
        out["resultant_method"] = "characteristic-polynomial variant"
    except Refusal as exc:
        out["resultant_refused"] = str(exc)
    try:
        lb = nubar_lower_bound(f, frame, theta, req.n_max)
        out["lower_bound"] = None if lb == float("inf") else _fraction(lb)
    except Refusal as exc:
        out["lower_bound_refused"] = str(exc)
    if not any(k in out for k in ("hickel", "resultant")):
        raise PreconditionError("no ν̄ route applies to this input")
    return out


def _cmd_slope(req: Request) -> dict:
    f, names, _, _ = _load(req)
    return _slope_json(samuel_slope(f, names, req.precision))


def _cmd_refined(req: Request) -> dict:
    f, names, _, _ = _load(req)
    return _slope_json(refined_samuel_slope(f, names, req.precision))


def _cmd_hord(req: Request) -> dict:
    f, names, _, _ = _load(req)
    rep = hord_report(f, names, req.precision)
    out = {
        "hord": rep.value.to_json(),
        "ord_d": rep.ord_d.to_json() if rep.ord_d is not None else None,
        "note": rep.note,
        "slope": _slope_json(rep.slope),
    }
    if rep.slope.extremal and rep.slope.frame is not None:
        mc = maximal_contact_check(rep.slope.poly, rep.slope.frame)
        out["maximal_contact"] = mc.to_json(rep.slope.frame.names)
    return out


def _cmd_cut(req: Request) -> dict:
    f, frame, fld = _normalized(req)
    out: dict[str, Any] = {"frame": frame.text()}
    if req.cut is not None:
        cut = LinearCut(tuple(_parse_scalars(req.cut, fld)))
        cert = certify_generic(f, frame, cut)
        g, fr = apply_cut(f, frame, cut)
        out.update({
            "cut": [fld.fmt(a) for a in cut.coeffs],
            "restricted": format_poly(g, fr.names),
            "nubar_lin": nubar_lin(f, frame, cut).to_json(),
            "certificate": cert.to_json(),
        })
        return out
    val, cert, g, cut = nubar_gen(f, frame, req.seed)
    out.update({
        "cut": [cert.field.fmt(a) for a in cut.coeffs],
        "nubar_gen": val.to_json(),
        "certificate": cert.to_json(),
    })
    return out


def _cmd_suite(req: Request) -> dict:
    rows = []
    ok = True
    for item in CORPUS:
        f, frame, _ = item.build(req.precision)
        fn = samuel_slope if item.extremal else refined_samuel_slope
        got = fn(f, frame.names, req.precision).slope
        passed = got == item.slope
        ok &= passed
        rows.append({"name": item.name, "expected": item.slope.to_json(), "got": got.to_json(), "pass": passed})
    return {"items": rows, "passed": sum(r["pass"] for r in rows), "total": len(rows), "all_pass": ok}


_DISPATCH = {
    "order": _cmd_order,
    "initial-form": _cmd_initial_form,
    "directrix": _cmd_directrix,
    "polyhedron": _cmd_polyhedron,
    "delta": _cmd_delta,
    "prepare": _cmd_prepare,
    "nubar": _cmd_nubar,
    "slope": _cmd_slope,
    "refined-slope": _cmd_refined,
    "hord": _cmd_hord,
    "cut": _cmd_cut,
    "suite": _cmd_suite,
}


def dispatch(req: Request) -> tuple[dict, int]:
    """Run a request; returns the report and the exit code."""
    report: dict[str, Any] = {"schema": SCHEMA, "engine": __version__, "request": req.echo()}
    start = time.perf_counter()
    try:
        result = _DISPATCH[req.command](req)
        report["status"] = "ok"
        report["result"] = result
        code = 0
        if req.command == "suite" and not result["all_pass"]:
            code = 1
    except Refusal as exc:
        report["status"] = "refused"
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 2
    except (HypersingError, ValueError, ArithmeticError) as exc:
        report["status"] = "error"
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 1
    if req.timing:
        report["timing_ms"] = round(1000 * (time.perf_counter() - start), 3)
    return report, code


def render_text(report: dict) -> str:
    """Flat ``key: value`` lines derived from the JSON report."""
    lines = []

    def walk(prefix: str, obj):
        if isinstance(obj, dict) and set(obj) >= {"kind"} and set(obj) <= {"kind", "num", "den", "certified_degree"}:
            val = obj["kind"] if "num" not in obj else f"{obj['kind']}({obj['num']}/{obj['den']})"
            lines.append(f"{prefix}: {val}")
        elif isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
            for i, v in enumerate(obj):
                walk(f"{prefix}[{i}]", v)
        else:
            lines.append(f"{prefix}: {json.dumps(obj, ensure_ascii=False)}")

    walk("", report)
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    argv = sys.argv[1:] if argv is None else argv
    try:
        req = parse_request(argv, stdin)
    except (ParseError, ValueError, OSError) as exc:
        report = {"schema": SCHEMA, "engine": __version__, "status": "error",
                  "error": {"type": type(exc).__name__, "message": str(exc)}}
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
        return 1
    report, code = dispatch(req)
    if req.fmt == "text":
        out.write(render_text(report) + "\n")
    else:
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
