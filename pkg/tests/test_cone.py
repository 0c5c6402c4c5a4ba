from __future__ import annotations

import itertools
import random

import pytest

from conftest import F2, F2t, F3, F4, P
from hypersing.cone import (
    directrix,
    directrix_char0_span,
    is_extremal,
    monomials,
    normalize_frame,
    ridge,
)
from hypersing.errors import PreconditionError, UnsupportedFieldError
from hypersing.linalg import rank, rref
from hypersing.mpoly import Frame, Poly
from hypersing.scalars import QQ


def _unit(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def brute_ridge_dim(F: Poly) -> int:
    """Codimension of ``{w : F(X + s w) = F(X)}``, by enumerating a finite field."""
    fld, n = F.field, F.nvars
    big = F.reindex(n + 1, {i: i for i in range(n)})
    s = Poly.var(fld, n + 1, n)
    W = []
    for w in itertools.product(list(fld.elements()), repeat=n):
        sub = {i: Poly.var(fld, n + 1, i) + s.scale(w[i]) for i in range(n)}
        if big.substitute(sub) == big:
            W.append(list(w))
    return n - rank(W, fld) if W else n


def _random_form(fld, n, m, rng, density):
    return Poly(fld, n, {e: fld.random(rng) for e in monomials(n, m) if rng.random() < density})


def _structured_form(fld, rng):
    n, m = rng.randint(2, 3), rng.randint(2, 6)
    if rng.random() < 0.6:
        k = rng.randint(1, n)
        Ls = [Poly(fld, n, {_unit(n, i): fld.random(rng) for i in range(n)}) for _ in range(k)]
        G = _random_form(fld, k, m, rng, 0.4)
        return G.substitute({i: Ls[i] for i in range(k)})
    return _random_form(fld, n, m, rng, 0.3)


@pytest.mark.parametrize("fld", [F2, F3, F4], ids=lambda f: f.spec)
def test_ridge_matches_brute_force(fld):
    rng = random.Random(7 + fld.order)
    checked = 0
    while checked < 60:
        F = _structured_form(fld, rng)
        if F.is_zero() or not F.is_homogeneous():
            continue
        r = len(ridge(F).generators)
        assert r == brute_ridge_dim(F), F
        d = directrix(F)
        G = d.apply(F)
        assert not any(G.involves(i) for i in range(len(d.free)))
        checked += 1


def test_ridge_examples():
    fr = Frame.parse("x,y")
    rd = ridge(P("x^2+y^2", fr, F2))
    assert len(rd.generators) == 1
    L, e = rd.generators[0]
    assert e == 1 and L == P("x+y", fr, F2)
    assert directrix(P("x^2+x*y+y^2", fr)).r == 2
    fr3 = Frame.parse("y1,y2,y3")
    assert directrix(P("y1^4+y1^2*y2^2+y3^4", fr3)).r == 3
    F = P("y1^4+y1^2*y2^2+y3^4", fr3, F2)
    assert directrix(F).r == brute_ridge_dim(F) == 3
    with pytest.raises(UnsupportedFieldError):
        ridge(P("x^2+t*y^2", fr, F2t))
    with pytest.raises(PreconditionError):
        ridge(P("x^2+y^3", fr))


def test_extremality_examples():
    fr = Frame.parse("x,y")
    ext = is_extremal(P("(x+y)^3+x^4", fr))
    assert ext.extremal and ext.form is not None
    assert not is_extremal(P("x*y+x^3", fr)).extremal
    assert is_extremal(P("x^2+y^4+y^5", fr, F2)).extremal
    with pytest.raises(PreconditionError):
        is_extremal(P("x+y^2", fr))


def test_char0_directrix_is_derivative_span(rng):
    for _ in range(40):
        n, m = rng.randint(2, 4), rng.randint(2, 4)
        k = rng.randint(1, n)
        Ls = [Poly(QQ, n, {_unit(n, i): QQ.small_random(rng) for i in range(n)}) for _ in range(k)]
        G = _random_form(QQ, k, m, rng, 0.5)
        F = G.substitute({i: Ls[i] for i in range(k)})
        if F.is_zero():
            continue
        d = directrix(F)
        forms = [[L.coeff(_unit(n, i)).value for i in range(n)] for L in d.forms]
        assert rref(forms, QQ)[0] == directrix_char0_span(F)


@pytest.mark.parametrize("fld", [QQ, F2, F3], ids=lambda f: f.spec)
def test_ridge_dimension_invariant_under_linear_change(fld, rng):
    done = 0
    while done < 25:
        F = _structured_form(fld, rng)
        if F.is_zero() or not F.is_homogeneous():
            continue
        n = F.nvars
        M = [[fld.small_random(rng) for _ in range(n)] for _ in range(n)]
        if rank(M, fld) < n:
            continue
        sub = {i: Poly(fld, n, {_unit(n, j): M[i][j] for j in range(n)}) for i in range(n)}
        assert len(ridge(F.substitute(sub)).generators) == len(ridge(F).generators)
        done += 1


def test_normalize_frame_puts_directrix_on_y_block():
    fr = Frame.parse("x,y")
    nf = normalize_frame(P("(x+y)^2+x^5", fr), fr.names)
    assert nf.frame.r == 1
    In = nf.poly.initial_form()
    assert not In.involves(0) and In.involves(1)
    assert nf.directrix.apply(P("(x+y)^2+x^5", fr)) == nf.poly
    fr4 = Frame.parse("u,y1,y2,y3")
    nf = normalize_frame(P("y1^4+y1^2*(y2+u^2)^2+y3^4+y3*u^7+u^12", fr4), fr4.names)
    assert nf.frame.split == 1 and nf.frame.r == 3
    with pytest.raises(PreconditionError):
        normalize_frame(P("1+x", fr), fr.names)
