from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import F2, F2t, F3, P, random_poly
from hypersing.corpus import CORPUS, by_name
from hypersing.cuts import (
    LinearCut,
    _kronecker_cut,
    apply_cut,
    certify_generic,
    cut_frame,
    describe_cut,
    genericity_polys,
    nubar_gen,
    nubar_lin,
    refined_samuel_slope,
)
from hypersing.errors import InvalidCutError, NeedsFieldExtensionError, PreconditionError
from hypersing.hpoly import polyhedron
from hypersing.mpoly import Frame, Poly
from hypersing.scalars import QQ
from hypersing.values import Exact


def _section8():
    return by_name("section8-z").build(32)


def test_cut_values_on_prepared_example():
    f, fr, fld = _section8()
    assert nubar_lin(f, fr, LinearCut.of(fld, [0, 0])) == Exact(3)
    assert nubar_lin(f, fr, LinearCut.of(fld, [1, 0])) == Exact(3)
    assert nubar_lin(f, fr, LinearCut.of(fld, [0, 1])) == Exact(Fraction(7, 3))
    cert = certify_generic(f, fr, LinearCut.of(fld, [0, 0]))
    assert not cert.valid and cert.failures()
    assert certify_generic(f, fr, LinearCut.of(fld, [2, 5])).valid


def test_special_cut_on_unprepared_form():
    f, fr, fld = by_name("section8").build(32)
    assert nubar_lin(f, fr, LinearCut.of(fld, [0, 1])) == Exact(2)


def test_apply_cut_shape_and_errors():
    fr = Frame.parse("u|y1,y2")
    f = P("y1*y2+u^3*y1+u^5", fr, F2)
    g, gfr = apply_cut(f, fr, LinearCut.of(F2, [1]))
    assert gfr == cut_frame(fr) and gfr.names == ("u", "y1") and gfr.split == 1
    assert g == P("y1^2+u^3*y1+u^5", gfr, F2)
    with pytest.raises(InvalidCutError):
        apply_cut(f, fr, LinearCut.of(F2, [0]))
    with pytest.raises(PreconditionError):
        apply_cut(f, fr, LinearCut.of(F2, [1, 1]))
    with pytest.raises(PreconditionError):
        apply_cut(P("y^2+u^3", "u|y"), Frame.parse("u|y"), LinearCut(()))
    assert describe_cut(fr, LinearCut.of(F2, [1]), F2) == ["y2 -> y1"]


def test_genericity_polys_example():
    fr = Frame.parse("u|y1,y2")
    f = P("y1*y2+y2^2+u^5", fr, F2)
    polys = {(a, i): g for a, i, g in genericity_polys(f, fr)}
    assert polys[((0,), 2)] == P("a+a^2", "a", F2)
    assert polys[((5,), 0)] == Poly.one(F2, 1)


def test_field_escalation():
    fr = Frame.parse("u|y1,y2", 32)
    f = P("y1*y2+y2^2+u^5", fr, F2)
    with pytest.raises(NeedsFieldExtensionError):
        nubar_gen(f, fr, 1, escalate=False)
    val, cert, lifted, cut = nubar_gen(f, fr, 1)
    assert cert.valid and cert.field.order == 16
    assert lifted.field == cert.field
    assert val == Exact(Fraction(5, 2))
    js = cert.to_json()
    assert js["valid"] and js["field"] == "Fq:2^4"


def test_kronecker_cut_never_vanishes():
    rng = random.Random(11)
    for _ in range(60):
        r = rng.randint(2, 4)
        g = random_poly(F2, r - 1, rng, max_deg=4, terms=4)
        if g.is_zero():
            continue
        D = g.total_degree() + 1
        cut = _kronecker_cut(F2t, r, D, rng.randint(0, 3))
        point = [Poly.const(F2t, 0, a) for a in cut.coeffs]
        assert g.lift(F2t).substitute(dict(enumerate(point))).constant_term() != F2t.zero


def test_nubar_gen_is_seeded():
    f, fr, _ = _section8()
    a = nubar_gen(f, fr, 7)
    b = nubar_gen(f, fr, 7)
    assert a[3] == b[3] and a[0] == b[0]


@pytest.mark.parametrize("item", [c for c in CORPUS if not c.extremal], ids=lambda c: c.name)
def test_refined_slope_matches_generic_cut(item):
    f, fr, _ = item.build(32)
    rep = refined_samuel_slope(f, fr.names, 32)
    assert rep.slope == item.slope and rep.method == "refined-polyhedron"
    g = rep.final_poly()
    val, cert, lifted, cut = nubar_gen(g, rep.frame, 3)
    assert cert.valid and val == rep.slope
    cg, cfr = apply_cut(lifted, rep.frame, cut)
    assert polyhedron(cg, cfr).delta == rep.slope


def test_refined_slope_redirects_extremal_input():
    f, fr, _ = by_name("cusp").build()
    rep = refined_samuel_slope(f, fr.names)
    assert rep.method == "polyhedron" and rep.notes


def test_nubar_gen_over_function_field():
    fr = Frame.parse("u|y1,y2", 24)
    f = P("y1^2+t*y2^2+u^5", fr, F2t)
    val, cert, _, _ = nubar_gen(f, fr, 2)
    assert cert.valid and val == Exact(Fraction(5, 2))
