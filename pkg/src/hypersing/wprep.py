"""Weierstrass preparation with respect to one distinguished variable.

Given ``f`` whose restriction to the distinguished line has order ``ℓ``,
find a unit ``v`` and ``a_1..a_ℓ`` free of the distinguished variable with

    v*f = y^ℓ + a_1 y^(ℓ-1) + ... + a_ℓ

modulo total degree ``N + 1``.  This is Weierstrass division of ``y^ℓ``
by ``f``; the quotient is ``v`` and minus the remainder gives the ``a_i``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .mpoly import Frame, Poly, TruncSeries, invert_unit
from .values import AtLeast, Exact, Infinite, NuValue


@dataclass(frozen=True)
class PseudoWeierstrass:
    ell: int
    coeffs: tuple[TruncSeries, ...]  # a_1..a_ℓ, a_i certified to its own degree
    unit: TruncSeries
    degree: int  # working truncation degree N
    exact: bool  # no truncation discarded anything and the division terminated
    var: int  # distinguished variable index

    def a(self, i: int) -> Poly:
        return self.coeffs[i - 1].poly

    def as_poly(self) -> Poly:
        """``y^ℓ + sum a_i y^(ℓ-i)`` as a polynomial."""
        f = self.unit.poly.field
        n = self.unit.poly.nvars
        y = Poly.var(f, n, self.var)
        out = y ** self.ell
        for i in range(1, self.ell + 1):
            out = out + self.a(i) * y ** (self.ell - i)
        return out


def _distinguished(frame: Frame, y: int | None) -> int:
    if y is None:
        if frame.r < 1:
            raise PreconditionError("frame has no y-variable")
        return frame.y_indices[0]
    return y


def weierstrass_degree(f: Poly, frame: Frame, y: int | None = None) -> int | None:
    """Order of ``f`` along the distinguished axis; None when ``f`` vanishes there."""
    y = _distinguished(frame, y)
    ks = [e[y] for e in f.terms if sum(e) == e[y]]
    return min(ks) if ks else None


def _split(g: Poly, y: int, ell: int) -> tuple[Poly, Poly]:
    """``g = y^ℓ * high + low`` with ``deg_y low < ℓ``."""
    hi, lo = {}, {}
    for e, c in g.terms.items():
        if e[y] >= ell:
            hi[e[:y] + (e[y] - ell,) + e[y + 1:]] = c
        else:
            lo[e] = c
    return Poly._raw(g.field, g.nvars, hi), Poly._raw(g.field, g.nvars, lo)


def _mul(a: Poly, b: Poly, N: int) -> tuple[Poly, bool]:
    """Truncated product and whether truncation may have dropped a term."""
    if not a.terms or not b.terms:
        return Poly.zero(a.field, a.nvars), False
    return a.mul_trunc(b, N), a.total_degree() + b.total_degree() > N


class _Filtration:
    """Truncation by ``wt(e) = ℓ*|α| + β`` (u-exponent α, y-exponent β) at bound ``W``."""

    def __init__(self, y: int, ell: int, W: int):
        self.y, self.ell, self.W = y, ell, W

    def wt(self, e) -> int:
        return self.ell * (sum(e) - e[self.y]) + e[self.y]

    def top(self, a: Poly) -> int:
        return max((self.wt(e) for e in a.terms), default=0)

    def cut(self, a: Poly) -> Poly:
        return a.restrict(lambda e: self.wt(e) <= self.W)

    def mul(self, a: Poly, b: Poly) -> tuple[Poly, bool]:
        fld = a.field
        out: dict = {}
        bw = [(e, c, self.wt(e)) for e, c in b.terms.items()]
        dropped = False
        for ea, ca in a.terms.items():
            wa = self.wt(ea)
            for eb, cb, wb in bw:
                if wa + wb > self.W:
                    dropped = True
                    continue
                e = tuple(x + z for x, z in zip(ea, eb))
                v = fld.mul(ca, cb)
                out[e] = fld.add(out[e], v) if e in out else v
        return Poly.from_terms(fld, a.nvars, out.items()), dropped

    def inverse(self, E: Poly) -> Poly:
        fld = E.field
        c = fld.inv(E.constant_term())
        h = Poly.one(fld, E.nvars) - E.scale(c)  # positive weight
        acc = Poly.one(fld, E.nvars)
        power = Poly.one(fld, E.nvars)
        for _ in range(self.W):
            power, _ = self.mul(power, h)
            if power.is_zero():
                break
            acc = acc + power
        return acc.scale(c)


def prepare(f: Poly, frame: Frame, y: int | None = None, N: int | None = None) -> PseudoWeierstrass:
    y = _distinguished(frame, y)
    N = frame.N if N is None else N
    ell = weierstrass_degree(f, frame, y)
    if ell is None:
        raise PreconditionError("f lies in the ideal of the other variables; no preparation")
    _, low = _split(f, y, ell)
    if low.terms and low.ord() < ell:
        return _prepare_weighted(f, y, ell, N)
    fld = f.field
    n = f.nvars
    exact = f.total_degree() <= N
    f_t = f.truncate(N)
    E, P = _split(f_t, y, ell)
    if E.is_zero() or E.constant_term() == fld.zero:
        raise PreconditionError("leading block is not a unit")
    if len(E.terms) == 1 and E.total_degree() == 0:
        Einv = Poly.const(fld, n, fld.inv(E.constant_term()))
    else:
        Einv = invert_unit(E, N).poly
        exact = False
    q = Poly.zero(fld, n)
    r = Poly.zero(fld, n)
    g = Poly.var(fld, n, y) ** ell
    for _ in range(N + 2):
        if g.is_zero():
            break
        G, R = _split(g, y, ell)
        r = r + R
        if G.is_zero():
            g = Poly.zero(fld, n)
            break
        step, cut1 = _mul(G, Einv, N)
        q = q + step
        prod, cut2 = _mul(step, P, N)
        exact = exact and not (cut1 or cut2)
        g = -prod
    else:
        exact = False
    if not g.is_zero():
        exact = False
    return _assemble(f, y, ell, N, q, r, exact)


def _prepare_weighted(f: Poly, y: int, ell: int, N: int) -> PseudoWeierstrass:
    """Division when the low block has order below ``ℓ``.

    Total degree is then not preserved by a division step, but the weight
    ``ℓ*|α| + β`` is, and weight ``ℓN + ℓ - 1`` covers total degree ``N``.
    """
    fld = f.field
    n = f.nvars
    flt = _Filtration(y, ell, ell * N + ell - 1)
    exact = flt.top(f) <= flt.W
    E, P = _split(flt.cut(f), y, ell)
    if E.is_zero() or E.constant_term() == fld.zero:
        raise PreconditionError("leading block is not a unit")
    if len(E.terms) == 1 and E.total_degree() == 0:
        Einv = Poly.const(fld, n, fld.inv(E.constant_term()))
    else:
        Einv = flt.inverse(E)
        exact = False
    q = Poly.zero(fld, n)
    r = Poly.zero(fld, n)
    g = Poly.var(fld, n, y) ** ell
    # each step raises the u-degree, so N + 2 steps reach weight W
    for _ in range(N + 2):
        if g.is_zero():
            break
        G, R = _split(g, y, ell)
        r = r + R
        if G.is_zero():
            g = Poly.zero(fld, n)
            break
        step, cut1 = flt.mul(G, Einv)
        q = q + step
        prod, cut2 = flt.mul(step, P)
        exact = exact and not (cut1 or cut2)
        g = -prod
    else:
        exact = False
    if not g.is_zero():
        exact = False
    return _assemble(f, y, ell, N, q, r, exact)


def _assemble(f: Poly, y: int, ell: int, N: int, q: Poly, r: Poly, exact: bool) -> PseudoWeierstrass:
    fld, n = f.field, f.nvars
    coeffs = []
    rk = r.coeffs_in(y)
    for i in range(1, ell + 1):
        d = N - (ell - i)
        a = -rk.get(ell - i, Poly.zero(fld, n))
        coeffs.append(TruncSeries(a.truncate(d), d))
    return PseudoWeierstrass(ell, tuple(coeffs), TruncSeries(q.truncate(N), N), N, exact, y)


def coefficient_orders(w: PseudoWeierstrass) -> list[NuValue]:
    out = []
    for s in w.coeffs:
        o = s.poly.ord()
        if w.exact:
            out.append(Infinite if s.poly.is_zero() else Exact(o))
        elif o <= s.degree:
            out.append(Exact(o))
        else:
            out.append(AtLeast(s.degree + 1, w.degree))
    return out
