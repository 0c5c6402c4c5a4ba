"""Linear cuts, genericity certificates and the refined Samuel slope.

A normalized cut keeps ``y_1`` and sets ``y_j = a_j y_1`` for ``j >= 2``,
leaving a hypersurface in the frame ``(u | y_1)``.  For ``(α, i)`` in the
projection of ``S(f)`` the polynomial

    ḡ_{α,i}(a) = sum over (α, β) in S(f) with |β| = i of c̄_{α,β} a^β

(``a_1 = 1``) is the leading coefficient of ``u^α y_1^i`` in the cut.  When
none of them vanishes the cut has the same polyhedron as ``f``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .cone import is_extremal, normalize_frame
from .cpx import support_min
from .errors import ConsistencyError, InvalidCutError, NeedsFieldExtensionError, PreconditionError
from .hpoly import polyhedron, prepare_delta
from .mpoly import Exp, Frame, Poly, format_poly
from .nubar import SlopeReport, nubar_hickel, samuel_slope
from .scalars import ExtensionField, Field, PrimeField, RationalFunctionField
from .values import NuValue

ATTEMPTS_PER_FIELD = 16


@dataclass(frozen=True)
class LinearCut:
    """``y_j -> a_j y_1`` for ``j = 2..r``; ``coeffs`` are raw field values."""

    coeffs: tuple

    @classmethod
    def of(cls, field: Field, values: Sequence) -> "LinearCut":
        return cls(tuple(field(v).value for v in values))

    def key(self) -> tuple:
        return tuple(repr(c) for c in self.coeffs)


def _check_r(frame: Frame, cut: LinearCut):
    if frame.r < 2:
        raise PreconditionError("cuts need at least two y-variables")
    if len(cut.coeffs) != frame.r - 1:
        raise PreconditionError(f"cut has {len(cut.coeffs)} coefficients, expected {frame.r - 1}")


def cut_frame(frame: Frame) -> Frame:
    names = [frame.names[i] for i in frame.u_indices] + [frame.names[frame.y_indices[0]]]
    return Frame(tuple(names), frame.split, frame.N)


def apply_cut(f: Poly, frame: Frame, cut: LinearCut) -> tuple[Poly, Frame]:
    """Restrict ``f`` to the cut; raises InvalidCutError if the multiplicity changes.

    The order can only rise, which happens exactly when the initial form
    vanishes on the cut line.
    """
    _check_r(frame, cut)
    fld = f.field
    n = f.nvars
    ys = frame.y_indices
    y1 = Poly.var(fld, n, ys[0])
    g = f.substitute({j: y1.scale(a) for j, a in zip(ys[1:], cut.coeffs)})
    keep = {i: k for k, i in enumerate(frame.u_indices)}
    keep[ys[0]] = frame.split
    g = g.reindex(frame.split + 1, keep)
    if g.is_zero() or g.ord() != f.ord():
        raise InvalidCutError("the initial form vanishes on the cut line")
    return g, cut_frame(frame)


def nubar_lin(f: Poly, frame: Frame, cut: LinearCut) -> NuValue:
    """ν̄ of ``y_1`` in the cut quotient, cross-checked against the cut polyhedron."""
    g, fr = apply_cut(f, frame, cut)
    val = nubar_hickel(g, fr)
    d = polyhedron(g, fr).delta
    if val.is_exact and d.is_exact and val != d:
        raise ConsistencyError(f"Hickel value {val} differs from cut polyhedron {d}")
    return val


# ---------------------------------------------------------------------------
# genericity


@dataclass(frozen=True)
class GenericityCertificate:
    field: Field
    polys: tuple[tuple[tuple, int, Poly], ...]  # (α, i, ḡ_{α,i} in r-1 variables)
    point: tuple
    evaluations: tuple

    @property
    def valid(self) -> bool:
        return all(v != self.field.zero for v in self.evaluations)

    def failures(self) -> list[tuple[tuple, int]]:
        return [(a, i) for (a, i, _), v in zip(self.polys, self.evaluations) if v == self.field.zero]

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        fld = self.field
        out = []
        for (alpha, i, g), v in zip(self.polys, self.evaluations):
            out.append({
                "alpha": list(alpha),
                "i": i,
                "terms": [[list(e), fld.fmt(c)] for e, c in g.sorted_terms()],
                "value": fld.fmt(v),
            })
        return {
            "field": fld.spec,
            "point": [fld.fmt(a) for a in self.point],
            "valid": self.valid,
            "polynomials": out,
        }


def genericity_polys(f: Poly, frame: Frame) -> list[tuple[tuple, int, Poly]]:
    """The family ḡ_{α,i} indexed by the projection of ``S(f)``."""
    fld = f.field
    r = frame.r
    us, ys = frame.u_indices, frame.y_indices
    acc: dict[tuple[tuple, int], dict[Exp, object]] = {}
    for e in support_min(f):
        alpha = tuple(e[i] for i in us)
        beta = [e[j] for j in ys]
        key = (alpha, sum(beta))
        mono = tuple(beta[1:])
        terms = acc.setdefault(key, {})
        terms[mono] = fld.add(terms.get(mono, fld.zero), f.terms[e])
    return [(a, i, Poly(fld, r - 1, t)) for (a, i), t in sorted(acc.items())]


def certify_generic(f: Poly, frame: Frame, cut: LinearCut) -> GenericityCertificate:
    _check_r(frame, cut)
    fld = f.field
    polys = genericity_polys(f, frame)
    point = [Poly.const(fld, 0, a) for a in cut.coeffs]
    evals = tuple(g.substitute(dict(enumerate(point))).constant_term() if not g.is_zero() else fld.zero
                  for _, _, g in polys)
    return GenericityCertificate(fld, tuple(polys), tuple(cut.coeffs), evals)


def _kronecker_cut(field: RationalFunctionField, r: int, D: int, shift: int) -> LinearCut:
    """``a_j = t^(shift + D^(j-2))``: no nonzero polynomial of degree < D vanishes there."""
    coeffs = []
    for j in range(2, r + 1):
        k = shift + D ** (j - 2)
        coeffs.append(field.from_poly([0] * k + [1]))
    return LinearCut(tuple(coeffs))


def _ladder(field: Field) -> list[Field]:
    if not field.is_finite:
        return [field]
    out = [field]
    if isinstance(field, PrimeField):
        out.append(ExtensionField.of_degree(field.characteristic, 4))
    out.append(RationalFunctionField(field))
    return out


def nubar_gen(f: Poly, frame: Frame, rng: random.Random | int | None = None,
              max_attempts: int = ATTEMPTS_PER_FIELD, escalate: bool = True
              ) -> tuple[NuValue, GenericityCertificate, Poly, LinearCut]:
    """ν̄-lin of a certified generic cut.

    Returns the value, its certificate, ``f`` over the field where the cut
    was found, and the cut itself.  Finite fields escalate along
    ``F_p -> F_{p^4} -> F_p(t)`` unless ``escalate`` is false.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    fields = _ladder(f.field) if escalate else [f.field]
    tried: set = set()
    for fld in fields:
        g = f.lift(fld)
        for attempt in range(max_attempts):
            if isinstance(fld, RationalFunctionField) and fld is not f.field:
                D = 1 + max((p.total_degree() for _, _, p in genericity_polys(g, frame)), default=0)
                cut = _kronecker_cut(fld, frame.r, D, attempt)
            else:
                cut = LinearCut(tuple(fld.small_random(rng) for _ in range(frame.r - 1)))
            if (fld.spec, cut.key()) in tried:
                continue
            tried.add((fld.spec, cut.key()))
            cert = certify_generic(g, frame, cut)
            if cert.valid:
                return nubar_lin(g, frame, cut), cert, g, cut
    raise NeedsFieldExtensionError(
        f"no certified generic cut over {', '.join(x.spec for x in fields)} in {max_attempts} attempts each")


def refined_samuel_slope(f: Poly, names: Sequence[str] | None = None, N: int | None = None) -> SlopeReport:
    """δ(Δ(f,u)) on the normalized frame; extremal input goes to ``samuel_slope``."""
    names = tuple(names) if names is not None else tuple(f"x{i}" for i in range(f.nvars))
    m = f.ord()
    if f.is_zero() or m <= 1:
        raise PreconditionError("the refined slope needs multiplicity at least 2")
    if is_extremal(f).extremal:
        rep = samuel_slope(f, names, N)
        return SlopeReport(rep.m, rep.extremal, rep.slope, rep.method, rep.frame, rep.poly, rep.trace,
                           rep.directrix, ("extremal input: samuel slope",))
    g, frame, d = normalize_frame(f, names, N)
    val, trace = prepare_delta(g, frame)
    return SlopeReport(m, False, val, "refined-polyhedron", frame, g, trace, d)


def describe_cut(frame: Frame, cut: LinearCut, field: Field) -> list[str]:
    y1 = frame.names[frame.y_indices[0]]
    return [f"{frame.names[j]} -> {format_poly(Poly.var(field, 1, 0).scale(a), [y1])}"
            for j, a in zip(frame.y_indices[1:], cut.coeffs)]
