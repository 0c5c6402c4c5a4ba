from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from conftest import F2, F4, F2t, random_poly
from hypersing.errors import ParseError
from hypersing.mpoly import Poly, format_poly
from hypersing.parse import identifiers, parse_poly
from hypersing.scalars import QQ


def test_basic_grammar():
    names = ["x", "y"]
    f = parse_poly("x^2 + y^4 + y^5", names, QQ)
    assert f.ord() == 2 and len(f.terms) == 3
    assert parse_poly("-(x - y)*(x + y)", names, QQ) == parse_poly("y^2 - x^2", names, QQ)
    assert parse_poly("x/2 + x/2", names, QQ) == parse_poly("x", names, QQ)
    assert parse_poly("  x\n  + 1 ", names, QQ) == parse_poly("1+x", names, QQ)


def test_field_generators():
    w = parse_poly("w", ["x"], F4)
    assert w == Poly.const(F4, 1, F4.generator())
    assert parse_poly("w^3", ["x"], F4) == Poly.one(F4, 1)
    assert parse_poly("t*x", ["x"], F2t).coeff((1,)).value == F2t.generator()
    # a declared variable shadows the generator
    assert parse_poly("w", ["w"], F4) == Poly.var(F4, 1, 0)


@pytest.mark.parametrize(
    "text,msg,col",
    [
        ("x^^2", "exponent", 3),
        ("2x", "implicit", 2),
        ("x + z", "unknown variable", 5),
        ("(x + y", "')'", 7),
        ("x $ y", "unexpected character", 3),
        ("x/y", "constant", 2),
        ("x/0", "zero", 2),
        ("x +", "end of input", 4),
    ],
)
def test_errors_carry_position(text, msg, col):
    with pytest.raises(ParseError) as info:
        parse_poly(text, ["x", "y"], QQ)
    assert msg in info.value.reason
    assert info.value.line == 1 and info.value.column == col


def test_error_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_poly("x +\n y +\n  ^2", ["x", "y"], QQ)
    assert info.value.line == 3 and info.value.column == 3


def test_identifiers_order():
    assert identifiers("y1^2 + u*y2 + y1") == ["y1", "u", "y2"]


@given(st.integers(0, 10**6))
def test_format_parse_roundtrip(seed):
    import random

    rng = random.Random(seed)
    for fld in (QQ, F2, F4):
        f = random_poly(fld, 3, rng)
        names = ["a", "b", "c"]
        assert parse_poly(format_poly(f, names), names, fld) == f
