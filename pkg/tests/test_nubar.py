from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import F2, F3, P, random_poly
from hypersing.corpus import CORPUS
from hypersing.errors import PreconditionError
from hypersing.mpoly import INF, Frame, Poly
from hypersing.nubar import (
    characteristic_polynomial,
    hickel_from_orders,
    nubar_hickel,
    nubar_lower_bound,
    nubar_reduction_case,
    nubar_resultant,
    reduce_mod,
    replay_slope,
    samuel_slope,
)
from hypersing.scalars import QQ
from hypersing.values import AtLeast, Exact, Infinite


def test_hickel_from_orders():
    assert hickel_from_orders([Exact(3), Exact(4)]) == Exact(2)
    assert hickel_from_orders([Infinite, Exact(3)]) == Exact(Fraction(3, 2))
    assert hickel_from_orders([Infinite, Infinite]) == Infinite


def test_hickel_examples():
    fr = Frame.parse("u|z")
    assert nubar_hickel(P("z^2-u^3", fr), fr) == Exact(Fraction(3, 2))
    assert nubar_hickel(P("z^3+3*z*u^5+u^7", fr), fr) == Exact(Fraction(7, 3))
    fx = Frame.parse("y|x")
    assert nubar_hickel(P("x^2+y^4+y^5", fx), fx) == Exact(2)
    assert nubar_hickel(P("x^2+y^5", fx, F2), fx) == Exact(Fraction(5, 2))
    assert nubar_hickel(P("(z-u^2)^2", fr), fr) == Exact(2)
    with pytest.raises(PreconditionError):
        nubar_hickel(P("z^3+u^2", fr), fr)  # Weierstrass degree 3, multiplicity 2


def test_hickel_precision_bound():
    fr = Frame.parse("u|z", 10)
    val = nubar_hickel(P("z^2+u^30", fr), fr)
    assert val.kind == "AtLeast" and val.value <= 15


def test_characteristic_polynomial_examples():
    fr = Frame.parse("u|y")
    p, ell = characteristic_polynomial(P("y^2-u", fr), fr, P("y", fr))
    assert ell == 2 and p == P("Z^2-u", "u,y,Z")
    p, _ = characteristic_polynomial(P("y^2-u^3", fr), fr, P("u^2", fr))
    assert p == P("(Z-u^2)^2", "u,y,Z")
    with pytest.raises(PreconditionError):
        characteristic_polynomial(P("u*y^2+u^3", fr), fr, P("y", fr))


def test_resultant_agrees_with_hickel_on_distinguished_variable(rng):
    fr = Frame.parse("u1,u2|y")
    for fld in (QQ, F2, F3):
        done = 0
        while done < 12:
            ell = rng.randint(2, 3)
            y = Poly.var(fld, 3, 2)
            f = y ** ell
            for i in range(1, ell + 1):
                a = random_poly(fld, 3, rng, max_deg=6, min_deg=i, terms=2).restrict(lambda e: e[2] == 0)
                f = f + a * y ** (ell - i)
            if f.ord() != ell:
                continue
            assert nubar_resultant(f, fr, y) == nubar_hickel(f, fr)
            done += 1


def test_resultant_maximal_contact_example():
    fr = Frame.parse("u|z")
    f = P("z^2+2*u^2*z+u^5", fr)
    theta = P("z+u^2", fr)
    assert nubar_resultant(f, fr, theta) == Exact(2)
    assert nubar_resultant(f, fr, P("z", fr)) == Exact(2)


def test_reduce_mod():
    fr = Frame.parse("u|y")
    f = P("y^2-u^3", fr)
    assert reduce_mod(P("y^3", fr), f, 1) == P("u^3*y", fr)
    assert reduce_mod(P("y^4", fr), f, 1) == P("u^6", fr)
    with pytest.raises(PreconditionError):
        reduce_mod(P("y^3", fr), P("u*y^2+u", fr), 1)


def test_lower_bound_examples():
    fr = Frame.parse("u|y")
    f = P("y^2-u^3", fr)
    assert nubar_lower_bound(f, fr, P("y", fr), 1) == 1
    assert nubar_lower_bound(f, fr, P("y", fr), 2) == Fraction(3, 2)
    assert nubar_lower_bound(P("y^2", fr), fr, P("y", fr), 3) == INF


def test_lower_bound_below_resultant(rng):
    fr = Frame.parse("u|y")
    for fld in (QQ, F3):
        for _ in range(15):
            y = Poly.var(fld, 2, 1)
            a1 = random_poly(fld, 2, rng, max_deg=4, min_deg=1, terms=1).restrict(lambda e: e[1] == 0)
            a2 = random_poly(fld, 2, rng, max_deg=7, min_deg=2, terms=2).restrict(lambda e: e[1] == 0)
            f = y ** 2 + a1 * y + a2
            theta = y + random_poly(fld, 2, rng, max_deg=3, min_deg=1, terms=1).restrict(lambda e: e[1] == 0)
            exact = nubar_resultant(f, fr, theta)
            lb = nubar_lower_bound(f, fr, theta, 6)
            assert lb <= exact.lower()


def test_reduction_case():
    fr = Frame.parse("u1,u2|y")
    f = P("y^2+u1^3+u2^3", fr)
    assert nubar_reduction_case(f, fr, P("u1^2+u1*u2*(1+y)", fr)) == Exact(2)
    with pytest.raises(PreconditionError):
        nubar_reduction_case(f, fr, P("y", fr))


@pytest.mark.parametrize("item", CORPUS, ids=lambda c: c.name)
def test_samuel_slope_on_corpus(item):
    f, fr, _ = item.build(32)
    rep = samuel_slope(f, fr.names, 32)
    assert rep.m == f.ord()
    if not item.extremal:
        assert rep.slope == Exact(1) and rep.method == "non-extremal"
        assert replay_slope(rep) == Exact(1)
        return
    assert rep.slope == item.slope
    if item.squarefree:
        assert replay_slope(rep) == item.slope


def test_samuel_slope_preconditions():
    fr = Frame.parse("u|y")
    with pytest.raises(PreconditionError):
        samuel_slope(P("y+u^2", fr), fr.names)
    with pytest.raises(PreconditionError):
        samuel_slope(Poly.zero(QQ, 2), fr.names)


def test_witness_text():
    f = P("x^2+y^4+y^5", "y,x", F2)
    rep = samuel_slope(f, ["y", "x"])
    assert rep.witness_text() == ["x -> y^2 + x"]
    assert rep.final_poly() == P("x^2+y^5", "y,x", F2)


def test_atleast_reported_when_precision_runs_out():
    f = P("y^2+u^40", "u,y")
    rep = samuel_slope(f, ["u", "y"], 12)
    assert rep.slope == AtLeast(6, 12)
