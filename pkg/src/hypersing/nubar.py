"""The asymptotic Samuel function ν̄ on ``R/(f)`` and the Samuel slope.

Three independent routes to ν̄ of an element:

* ``nubar_hickel``: prepare ``f`` w.r.t. the distinguished variable and take
  ``min ord(a_i)/i`` over the Weierstrass coefficients;
* ``nubar_resultant``: the characteristic polynomial of ``θ`` over the
  u-subring, ``Res_y(f, Z - θ)``, with the same ``min ord(b_i)/i`` rule;
* ``nubar_lower_bound``: ``max ord(θ^n mod f)/n`` over small ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .cone import DirectrixData, is_extremal, normalize_frame
from .cpx import has_u_expansion
from .errors import PreconditionError
from .hpoly import PreparationTrace, prepare_delta, replay
from .mpoly import INF, Frame, Poly, format_poly, resultant_in
from .values import AtLeast, Exact, Infinite, NuValue, nu_min
from .wprep import coefficient_orders, prepare, weierstrass_degree


def _dist(frame: Frame, y: int | None) -> int:
    if y is not None:
        return y
    if frame.r < 1:
        raise PreconditionError("frame has no y-variable")
    return frame.y_indices[0]


def hickel_from_orders(orders: Sequence[NuValue]) -> NuValue:
    return nu_min(v.scaled(Fraction(1, i)) for i, v in enumerate(orders, start=1))


def nubar_hickel(f: Poly, frame: Frame, y: int | None = None) -> NuValue:
    """ν̄ of the class of the distinguished variable in ``R/(f)``.

    The other variables must generate a reduction of the maximal ideal of
    ``R/(f)``, which for a hypersurface means the Weierstrass degree equals
    the multiplicity.
    """
    y = _dist(frame, y)
    ell = weierstrass_degree(f, frame, y)
    if ell is None:
        raise PreconditionError("f lies in the ideal generated by the other variables")
    m = f.ord()
    if ell != m:
        raise PreconditionError(f"Weierstrass degree {ell} differs from multiplicity {m}: "
                                "the other variables do not give a reduction")
    N_max = frame.N
    N = min(N_max, max(8, 4 * ell))
    while True:
        w = prepare(f, frame, y, N)
        val = hickel_from_orders(coefficient_orders(w))
        if val.kind != "AtLeast" or N >= N_max:
            return val
        N = min(2 * N, N_max)


def characteristic_polynomial(f: Poly, frame: Frame, theta: Poly, y: int | None = None) -> tuple[Poly, int]:
    """``Res_y(f, Z - θ)`` in ``n+1`` variables with ``Z`` last, and its ``Z``-degree.

    ``f`` may have a unit leading coefficient in ``y``; the result then has
    a unit leading coefficient in ``Z``, scaled to constant term 1.
    """
    y = _dist(frame, y)
    fld = f.field
    n = f.nvars
    ell = f.degree_in(y)
    lead = f.coeffs_in(y)[ell]
    if ell < 1 or lead.constant_term() == fld.zero:
        raise PreconditionError("f must have a unit leading coefficient in the distinguished variable")
    if weierstrass_degree(f, frame, y) != ell:
        raise PreconditionError("f is not a Weierstrass polynomial in the distinguished variable")
    up = {i: i for i in range(n)}
    F = f.reindex(n + 1, up)
    th = theta.reindex(n + 1, up)
    Z = Poly.var(fld, n + 1, n)
    if th.degree_in(y) < 1:
        p = (Z - th) ** ell
    else:
        p = resultant_in(F, Z - th, y)
    deg = p.degree_in(n)
    top = p.coeffs_in(n).get(deg)
    if deg != ell or top is None or top.constant_term() == fld.zero:
        raise PreconditionError("degenerate resultant")
    return p.scale(fld.inv(top.constant_term())), ell


def nubar_resultant(f: Poly, frame: Frame, theta: Poly, y: int | None = None) -> NuValue:
    """ν̄(θ) from the characteristic polynomial of ``θ`` over the u-subring.

    The value agrees with the minimal-polynomial formula because the
    minimum of ``ord(b_i)/i`` is the smallest valuation of a root, which a
    power of the minimal polynomial shares.
    """
    p, ell = characteristic_polynomial(f, frame, theta, y)
    n = f.nvars
    coeffs = p.coeffs_in(n)
    vals = []
    for i in range(1, ell + 1):
        b = coeffs.get(ell - i)
        vals.append(Infinite if b is None else Exact(b.ord()))
    return hickel_from_orders(vals)


def reduce_mod(g: Poly, f: Poly, y: int) -> Poly:
    """Remainder of ``g`` by ``f`` monic in ``y``."""
    ell = f.degree_in(y)
    fc = f.coeffs_in(y)
    if ell < 1 or fc[ell].total_degree() != 0:
        raise PreconditionError("f must be monic in the distinguished variable")
    lead_inv = g.field.inv(fc[ell].constant_term())
    rest = f - fc[ell] * Poly.var(f.field, f.nvars, y) ** ell
    tail = rest.scale(lead_inv)
    while g.degree_in(y) >= ell:
        d = g.degree_in(y)
        top = g.coeffs_in(y)[d]
        shift = top * Poly.var(f.field, f.nvars, y) ** (d - ell)
        g = g - shift * Poly.var(f.field, f.nvars, y) ** ell - shift * tail
    return g


def nubar_lower_bound(f: Poly, frame: Frame, theta: Poly, n_max: int, y: int | None = None):
    """``max_{n <= n_max} ord(θ^n mod f)/n``, a lower bound for ν̄(θ)."""
    y = _dist(frame, y)
    best = Fraction(0)
    power = Poly.one(f.field, f.nvars)
    for n in range(1, n_max + 1):
        power = reduce_mod(power * theta, f, y)
        if power.is_zero():
            return INF
        best = max(best, Fraction(power.ord(), n))
    return best


def nubar_reduction_case(f: Poly, frame: Frame, g: Poly, y: int | None = None) -> NuValue:
    """ν̄(g) = ord(g) when ``g`` has a (u)-CP-expansion and u is a reduction."""
    y = _dist(frame, y)
    if not has_u_expansion(g, frame):
        raise PreconditionError("g has no (u)-CP-expansion")
    if weierstrass_degree(f, frame, y) != f.ord():
        raise PreconditionError("the u-block does not generate a reduction")
    return Exact(g.ord())


# ---------------------------------------------------------------------------
# Samuel slope


@dataclass(frozen=True)
class SlopeReport:
    m: int
    extremal: bool
    slope: NuValue
    method: str
    frame: Frame | None = None
    poly: Poly | None = None  # f in the normalized frame, before translations
    trace: PreparationTrace | None = None
    directrix: DirectrixData | None = None
    notes: tuple[str, ...] = dc_field(default=())

    @property
    def witness(self) -> list[dict[int, Poly]]:
        if self.trace is None or self.frame is None:
            return []
        return [st.translation(self.frame) for st in self.trace.steps]

    def witness_text(self) -> list[str]:
        out = []
        for subs in self.witness:
            for j, p in sorted(subs.items()):
                out.append(f"{self.frame.names[j]} -> {format_poly(p, self.frame.names)}")
        return out

    def final_poly(self) -> Poly | None:
        if self.poly is None or self.trace is None:
            return None
        return replay(self.poly, self.frame, self.trace)


def _names(f: Poly, names: Sequence[str] | None) -> tuple[str, ...]:
    return tuple(names) if names is not None else tuple(f"x{i}" for i in range(f.nvars))


def samuel_slope(f: Poly, names: Sequence[str] | None = None, N: int | None = None) -> SlopeReport:
    names = _names(f, names)
    m = f.ord()
    if f.is_zero() or m <= 1:
        raise PreconditionError("the Samuel slope needs multiplicity at least 2")
    ext = is_extremal(f)
    if not ext.extremal:
        return SlopeReport(m, False, Exact(1), "non-extremal")
    g, frame, d = normalize_frame(f, names, N)
    val, trace = prepare_delta(g, frame)
    return SlopeReport(m, True, val, "polyhedron", frame, g, trace, d)


def replay_slope(report: SlopeReport) -> NuValue:
    """Recompute the slope from the witness via the Weierstrass route."""
    if not report.extremal:
        return Exact(1)
    final = report.final_poly()
    return nubar_hickel(final, report.frame)
