from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import ALL_FIELDS, F2, F2t, F3, F4, F9
from hypersing.errors import FieldMismatchError, ParseError, UnsupportedFieldError
from hypersing.scalars import (
    QQ,
    ExtensionField,
    PrimeField,
    RationalFunctionField,
    Scalar,
    find_irreducible,
    is_prime,
    parse_field,
    pth_root,
    sample,
    up_is_irreducible,
)


@pytest.mark.parametrize("fld", ALL_FIELDS, ids=lambda f: f.spec)
def test_field_axioms_on_random_triples(fld):
    rng = random.Random(hash(fld.spec) & 0xFFFF)
    for _ in range(1000):
        a, b, c = (fld(fld.random(rng)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a - a == fld(0)
        if not a.is_zero():
            assert a * a.inverse() == fld(1)
            assert (b / a) * a == b


def test_spec_examples():
    assert QQ(Fraction(1, 3)) + QQ(Fraction(1, 6)) == QQ(Fraction(1, 2))
    F7 = PrimeField(7)
    assert F7(3) * F7(5) == F7(1)
    t = F2t(F2t.generator())
    one = F2t(1)
    assert one / (t + one) + one / (t + one) == F2t(0)


def test_rational_function_canonical_form():
    t = F2t(F2t.generator())
    x = (t * t + F2t(1)) / (t + F2t(1))  # (t+1)^2/(t+1) = t+1 in char 2
    assert x == t + F2t(1)
    num, den = x.value
    assert den[-1] == F2.one  # monic denominator


def test_division_by_zero_and_mismatch():
    with pytest.raises(ZeroDivisionError):
        QQ(1) / QQ(0)
    with pytest.raises(ZeroDivisionError):
        F3(1) / F3(0)
    with pytest.raises(FieldMismatchError):
        F3(1) + PrimeField(5)(1)


def test_pth_root_examples():
    F5 = PrimeField(5)
    assert pth_root(F5(2), 1) == F5(2)
    w = F4(F4.generator())
    assert pth_root(w, 1) == w * w
    assert pth_root(F3(0), 2) == F3(0)
    with pytest.raises(UnsupportedFieldError):
        pth_root(QQ(2), 1)
    with pytest.raises(UnsupportedFieldError):
        pth_root(F2t(1), 1)


@pytest.mark.parametrize("fld", [F2, F3, PrimeField(7), F4, F9, ExtensionField.of_degree(2, 3)], ids=lambda f: f.spec)
def test_pth_root_inverts_frobenius(fld):
    p = fld.characteristic
    for e in range(3):
        for a in fld.elements():
            b = pth_root(fld(a), e)
            assert b ** (p ** e) == fld(a)


def test_frobenius_root_in_function_field():
    t = F2t(F2t.generator())
    assert F2t.frobenius_root((t * t + F2t(1)).value, 1) == (t + F2t(1)).value
    assert F2t.frobenius_root(t.value, 1) is None


@pytest.mark.parametrize("p,e", [(2, 1), (2, 4), (3, 3), (5, 2), (7, 2)])
def test_irreducible_modulus(p, e):
    g = find_irreducible(p, e)
    assert len(g) == e + 1 and g[-1] == 1
    assert up_is_irreducible(g, p)
    assert ExtensionField(p, g).order == p ** e


def test_is_prime_matches_trial_division():
    naive = [n for n in range(2, 2000) if all(n % d for d in range(2, int(n ** 0.5) + 1))]
    assert [n for n in range(2000) if is_prime(n)] == naive
    assert is_prime(2 ** 31 - 1)


def test_parse_field_grammar():
    assert parse_field("Q") is QQ
    assert parse_field("Fp:7") == PrimeField(7)
    assert parse_field("F2") == PrimeField(2)
    assert parse_field("Fq:3^2").order == 9
    assert isinstance(parse_field("Fpt:2"), RationalFunctionField)
    assert parse_field("Fqt:2^2").base.order == 4
    for bad in ("Fp:4", "R", "Fq:2^0", "Fp:x"):
        with pytest.raises(ParseError):
            parse_field(bad)


def test_sample_contracts():
    for seed in range(50):
        q = sample(QQ, seed).value
        assert -1000 <= q.numerator <= 1000 and 1 <= q.denominator <= 1000
        assert sample(F2, seed).value in (0, 1)
        assert sample(F2t, seed) == sample(F2t, seed)
    assert len({sample(F2t, s) for s in range(20)}) > 2


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rationals_lowest_terms(n, d):
    x = QQ(Fraction(n, d))
    assert x.value.denominator > 0
    assert x == QQ(n) / QQ(d)


def test_scalar_is_immutable():
    x = QQ(1)
    with pytest.raises(AttributeError):
        x.value = 2
    assert isinstance(hash(x), int) and isinstance(x, Scalar)
