"""Tschirnhausen form, the elimination order and the maximal-contact check."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ConsistencyError, PreconditionError, UnsupportedFieldError
from .mpoly import Frame, Poly, TruncSeries, format_poly, hasse_derivative
from .nubar import SlopeReport, hickel_from_orders, nubar_resultant, samuel_slope
from .values import Exact, NuValue, nu_min
from .wprep import PseudoWeierstrass, coefficient_orders, prepare, weierstrass_degree


@dataclass(frozen=True)
class TschirnForm:
    w: PseudoWeierstrass  # transformed, a_1 = 0
    shift: Poly  # a_1/m; the change is z -> z - shift

    @property
    def m(self) -> int:
        return self.w.ell

    def coeffs(self) -> list[Poly]:
        return [self.w.a(i) for i in range(2, self.m + 1)]


def tschirnhausen(w: PseudoWeierstrass, p: int | None = None) -> TschirnForm:
    fld = w.unit.poly.field
    p = fld.characteristic if p is None else p
    m = w.ell
    if p and m % p == 0:
        raise UnsupportedFieldError(f"characteristic {p} divides the degree {m}")
    n = w.unit.poly.nvars
    shift = w.a(1).scale(fld.inv(fld.from_int(m)))
    if shift.is_zero():
        return TschirnForm(w, shift)
    z = Poly.var(fld, n, w.var)
    g = w.as_poly().substitute({w.var: z - shift})
    ck = g.coeffs_in(w.var)
    coeffs = []
    for i in range(1, m + 1):
        d = w.coeffs[i - 1].degree
        a = ck.get(m - i, Poly.zero(fld, n))
        coeffs.append(TruncSeries(a.truncate(d), d))
    if not coeffs[0].poly.is_zero():
        raise ConsistencyError("translation failed to remove a_1")
    tw = PseudoWeierstrass(m, tuple(coeffs), w.unit, w.degree, w.exact, w.var)
    return TschirnForm(tw, shift)


def ord_d(t: TschirnForm) -> NuValue:
    """``min_{i >= 2} ord(a_i)/i``; the Diff-saturation keeps this minimum."""
    orders = coefficient_orders(t.w)
    return nu_min(v.scaled(Fraction(1, i)) for i, v in enumerate(orders, start=1) if i >= 2)


def slope_P(w: PseudoWeierstrass, elimination_order: NuValue | None = None) -> NuValue:
    """``min{ord(a_i)/i}``, joined with the elimination order when one is given.

    Without an elimination order (characteristic p) the value is only the
    coefficient part.
    """
    val = hickel_from_orders(coefficient_orders(w))
    if elimination_order is None:
        return val
    return nu_min([val, elimination_order])


@dataclass(frozen=True)
class HordReport:
    value: NuValue
    slope: SlopeReport
    ord_d: NuValue | None  # None when the char-0 path was skipped
    note: str


def _compatible(a: NuValue, b: NuValue) -> bool:
    if a.is_exact and b.is_exact or a.is_infinite or b.is_infinite:
        return a == b
    if a.kind == "AtLeast" and b.kind == "AtLeast":
        return True
    exact, bound = (a, b) if a.is_exact else (b, a)
    return exact.value >= bound.value


def _adaptive_ord_d(f: Poly, frame: Frame, m: int) -> NuValue:
    """``ord_d`` at the smallest doubling of precision that makes it exact."""
    N = min(frame.N, max(8, 4 * m))
    while True:
        od = ord_d(tschirnhausen(prepare(f, frame, N=N)))
        if od.kind != "AtLeast" or N >= frame.N:
            return od
        N = min(2 * N, frame.N)


def hord_report(f: Poly, names: Sequence[str] | None = None, N: int | None = None) -> HordReport:
    rep = samuel_slope(f, names, N)
    fld = f.field
    p = fld.characteristic
    if not rep.extremal:
        return HordReport(rep.slope, rep, None, "non-extremal: slope 1")
    if p and rep.m % p == 0:
        return HordReport(rep.slope, rep, None, "characteristic divides m: elimination path skipped")
    if p:
        return HordReport(rep.slope, rep, None, "positive characteristic: elimination path skipped")
    od = _adaptive_ord_d(rep.poly, rep.frame, rep.m)
    if not _compatible(rep.slope, od):
        raise ConsistencyError(f"Samuel slope {rep.slope} differs from the elimination order {od}")
    return HordReport(rep.slope, rep, od, "characteristic 0: slope equals the elimination order")


def hord_d(f: Poly, names: Sequence[str] | None = None, N: int | None = None) -> NuValue:
    return hord_report(f, names, N).value


@dataclass(frozen=True)
class MaxContactReport:
    hypothesis_met: bool
    omega: Poly | None
    nubar_omega: NuValue | None
    slope: NuValue | None
    agree: bool | None
    note: str

    def to_json(self, names: Sequence[str]) -> dict:
        return {
            "hypothesis_met": self.hypothesis_met,
            "omega": format_poly(self.omega, names) if self.omega is not None else None,
            "nubar_omega": self.nubar_omega.to_json() if self.nubar_omega else None,
            "slope": self.slope.to_json() if self.slope else None,
            "agree": self.agree,
            "note": self.note,
        }


def maximal_contact_check(f: Poly, frame: Frame, z: int | None = None) -> MaxContactReport:
    """Compare ν̄(ω) for ``ω = Δ_z^(m-1) f`` with the Samuel slope."""
    if frame.r < 1:
        raise PreconditionError("frame has no y-variable")
    z = frame.y_indices[0] if z is None else z
    m = f.ord()
    if m < 2:
        raise PreconditionError("multiplicity must be at least 2")
    omega = hasse_derivative(f, z, m - 1)
    if omega.is_zero() or omega.ord() != 1:
        return MaxContactReport(False, omega, None, None, None, "Δ^(m-1) f does not have order 1")
    if weierstrass_degree(f, frame, z) != m:
        return MaxContactReport(False, omega, None, None, None, "z is not transversal to the u-block")
    g = f
    if f.degree_in(z) != m:
        w = prepare(f, frame, z)
        if not w.exact:
            return MaxContactReport(False, omega, None, None, None, "no exact Weierstrass polynomial")
        g = w.as_poly()
    nu = nubar_resultant(g, frame, omega, z)
    slope = samuel_slope(f, frame.names, frame.N).slope
    return MaxContactReport(True, omega, nu, slope, nu == slope, "")
