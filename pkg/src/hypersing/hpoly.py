"""Hironaka polyhedra, vertex initial forms, solvability and the
vertex-dissolving loop that computes ``δ(Δ(f,u))``.

For ``f`` of order ``m`` in a frame ``(u | y)`` the polyhedron is the convex
hull of the points ``α/(m-|β|)`` over terms ``u^α y^β`` with ``|β| < m``,
plus the positive orthant.  ``δ`` is the minimal coordinate sum.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .cone import RidgeData, directrix, ridge
from .cpx import support_min
from .errors import PreconditionError, UnsupportedFieldError
from .linalg import nullspace, solve
from .mpoly import Frame, Poly
from .scalars import Field, RationalFunctionField
from .values import AtLeast, Exact, Infinite, NuValue

log = logging.getLogger(__name__)

Point = tuple  # tuple[Fraction, ...]

WELL_PREPARED = "WellPreparedAtDelta"
PRECISION_EXHAUSTED = "PrecisionExhausted"
DEGENERATE = "Degenerate"

ENUMERATION_CAP = 1 << 16


# ---------------------------------------------------------------------------
# exact LP feasibility


def _feasible(A: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Is ``{x >= 0 : A x = b}`` non-empty?  Phase-one simplex, Bland's rule."""
    rows = len(A)
    cols = len(A[0]) if A else 0
    A = [list(r) for r in A]
    b = list(b)
    for i in range(rows):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # tableau with artificials cols..cols+rows-1
    T = [A[i] + [Fraction(int(i == j)) for j in range(rows)] + [b[i]] for i in range(rows)]
    basis = [cols + i for i in range(rows)]
    width = cols + rows
    cost = [Fraction(0)] * cols + [Fraction(1)] * rows + [Fraction(0)]
    # reduced costs for the artificial basis
    z = [cost[j] - sum(T[i][j] for i in range(rows)) for j in range(width)] + [-sum(b)]
    while True:
        enter = next((j for j in range(width) if z[j] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i in range(rows):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break  # unbounded: cannot happen in phase one
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(rows):
            if i != leave and T[i][enter] != 0:
                k = T[i][enter]
                T[i] = [x - k * y for x, y in zip(T[i], T[leave])]
        k = z[enter]
        z = [x - k * y for x, y in zip(z, T[leave])]
        basis[leave] = enter
    return -z[-1] == 0


def _dominated_by_hull(p: Point, others: Sequence[Point]) -> bool:
    """Is ``p`` in ``conv(others) + R_{>=0}^d``?"""
    if not others:
        return False
    d = len(p)
    k = len(others)
    # unknowns λ_1..λ_k and slacks s_1..s_d with  Σ λ_i q_i + s = p,  Σ λ_i = 1
    A = []
    for c in range(d):
        A.append([others[i][c] for i in range(k)] + [Fraction(int(c == j)) for j in range(d)])
    A.append([Fraction(1)] * k + [Fraction(0)] * d)
    return _feasible(A, list(p) + [Fraction(1)])


def extreme_points(points: Sequence[Point]) -> list[Point]:
    pts = sorted(set(points))
    # cheap filter: drop points componentwise above another point
    kept = [p for p in pts if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts)]
    if len(kept) <= 1 or len(kept[0]) == 1:
        return kept
    return [p for p in kept if not _dominated_by_hull(p, [q for q in kept if q != p])]


# ---------------------------------------------------------------------------
# polyhedron


@dataclass(frozen=True)
class Generator:
    point: Point
    exponent: tuple  # (α, β) exponent of the term producing it


@dataclass(frozen=True)
class HPolyhedron:
    dim: int
    m: int
    generators: tuple[Generator, ...]
    vertices: tuple[Point, ...]
    delta: NuValue

    @property
    def points(self) -> list[Point]:
        return sorted({g.point for g in self.generators})

    def delta_vertices(self) -> list[Point]:
        if self.delta.value is None:
            return []
        return sorted(v for v in self.vertices if sum(v) == self.delta.value)

    def to_json(self) -> dict:
        def pt(p):
            return [{"num": x.numerator, "den": x.denominator} for x in p]

        return {
            "dimension": self.dim,
            "multiplicity": self.m,
            "generators": [pt(p) for p in self.points],
            "vertices": [pt(v) for v in self.vertices],
            "delta": self.delta.to_json(),
        }


def y_order(f: Poly, frame: Frame):
    """Order of ``f`` modulo the ideal of the u-block."""
    return min((sum(e) for e in f.terms if all(e[i] == 0 for i in frame.u_indices)), default=float("inf"))


def polyhedron(f: Poly, frame: Frame) -> HPolyhedron:
    m = f.ord()
    if f.is_zero() or m < 1:
        raise PreconditionError("polyhedron needs f in the maximal ideal")
    if y_order(f, frame) != m:
        raise PreconditionError("order of f modulo the u-block differs from its multiplicity")
    us, ys = frame.u_indices, frame.y_indices
    gens = []
    for e in support_min(f):
        b = sum(e[j] for j in ys)
        if b < m:
            gens.append(Generator(tuple(Fraction(e[i], m - b) for i in us), e))
    gens.sort(key=lambda g: (g.point, g.exponent))
    if not gens:
        return HPolyhedron(len(us), m, (), (), Infinite)
    verts = tuple(extreme_points([g.point for g in gens]))
    delta = min(sum(g.point) for g in gens)
    return HPolyhedron(len(us), m, tuple(gens), verts, Exact(delta))


# ---------------------------------------------------------------------------
# vertex initial forms and solvability


@dataclass(frozen=True)
class VertexInitialForm:
    vertex: Point
    form: Poly  # In_m(f) + In_v(f)^+ in the frame's variables
    initial: Poly  # In_m(f)
    plus: Poly  # In_v(f)^+
    m: int


def initial_form_at_vertex(f: Poly, frame: Frame, v: Point, poly: HPolyhedron | None = None) -> VertexInitialForm:
    poly = poly or polyhedron(f, frame)
    v = tuple(Fraction(x) for x in v)
    if v not in poly.vertices:
        raise PreconditionError(f"{[str(x) for x in v]} is not a vertex")
    m = poly.m
    us, ys = frame.u_indices, frame.y_indices
    plus = {}
    for e, c in f.terms.items():
        b = sum(e[j] for j in ys)
        if b < m and all(Fraction(e[i], m - b) == v[k] for k, i in enumerate(us)):
            plus[e] = c
    F = f.initial_form()
    P = Poly(f.field, f.nvars, plus)
    return VertexInitialForm(v, F + P, F, P, m)


class VertexSolver:
    """Decides solvability of vertices for a fixed initial form ``F(Y)``.

    ``F(Y + c T) = G(Y, T)`` is attacked with the constant-coefficient ridge
    operators ``D`` (``D F = L^q``): applying ``D`` gives ``L(c)^q`` as the
    ``T^q`` coefficient of ``D G``.  Coordinates of ``c`` not pinned by these
    operators are enumerated over a finite field.  Every candidate is checked
    by full expansion.
    """

    def __init__(self, F: Poly, frame: Frame, ridge_data: RidgeData | None = None):
        self.F = F
        self.frame = frame
        self.field = F.field
        self.ys = frame.y_indices
        if ridge_data is None:
            ridge_data = ridge(F, self.ys)
        self.ridge = ridge_data
        n = frame.n
        self.n = n
        self.ext = n + 1  # ambient ring with T appended
        self.T = n
        self.F_ext = F.reindex(self.ext, {i: i for i in range(n)})

    def lifted(self, field: Field) -> "VertexSolver":
        """Same operators with scalars pushed into an extension field."""
        F = self.F.lift(field)
        ops = tuple(type(op)({a: field.embed(self.field, d) for a, d in op.coeffs.items()},
                             op.form.lift(field), op.e) for op in self.ridge.operators)
        rd = RidgeData(tuple((L.lift(field), e) for L, e in self.ridge.generators), self.ridge.char0, ops)
        return VertexSolver(F, self.frame, rd)

    def homogenize(self, ivf: VertexInitialForm) -> Poly | None:
        """``U^α Y^β -> T^(m-|β|) Y^β``; None when ``v`` is not integral."""
        if any(x.denominator != 1 for x in ivf.vertex):
            return None
        terms = {}
        for e, c in ivf.form.terms.items():
            b = sum(e[j] for j in self.ys)
            k = ivf.m - b
            ne = [0] * self.ext
            for j in self.ys:
                ne[j] = e[j]
            ne[self.T] = k
            terms[tuple(ne)] = c
        return Poly(self.field, self.ext, terms)

    def check(self, c: Sequence, G: Poly) -> bool:
        fld = self.field
        T = Poly.var(fld, self.ext, self.T)
        sub = {j: Poly.var(fld, self.ext, j) + T.scale(cj) for j, cj in zip(self.ys, c) if cj != fld.zero}
        return self.F_ext.substitute(sub) == G if sub else self.F_ext == G

    def solve(self, ivf: VertexInitialForm) -> tuple | None:
        G = self.homogenize(ivf)
        if G is None:
            return None
        fld = self.field
        r = len(self.ys)
        rows, rhs = [], []
        for op in self.ridge.operators:
            q = fld.characteristic ** op.e if fld.characteristic else 1
            DG = op.apply(G, self.ys)
            Lq = (op.form ** q).reindex(self.ext, {i: i for i in range(self.n)})
            rest = DG - Lq
            tq = tuple(q if i == self.T else 0 for i in range(self.ext))
            kappa = rest.terms.get(tq, fld.zero)
            if rest.terms and set(rest.terms) != {tq}:
                return None
            root = fld.frobenius_root(kappa, op.e) if op.e else kappa
            if root is None:
                return None
            rows.append([op.form.coeff(tuple(int(i == j) for i in range(self.n))).value for j in self.ys])
            rhs.append(root)
        base = solve(rows, rhs, fld) if rows else [fld.zero] * r
        if base is None:
            return None
        free = nullspace(rows, r, fld) if rows else [[fld.one if i == j else fld.zero for i in range(r)] for j in range(r)]
        for c in self._candidates(base, free):
            if self.check(c, G):
                return tuple(c)
        return None

    def _candidates(self, base: list, free: list[list]):
        fld = self.field
        if not free:
            yield base
            return
        if fld.is_finite:
            if fld.order ** len(free) > ENUMERATION_CAP:
                log.warning("solvability enumeration capped at %d candidates", ENUMERATION_CAP)
            count = 0
            for coeffs in product(list(fld.elements()), repeat=len(free)):
                c = list(base)
                for t, w in zip(coeffs, free):
                    if t != fld.zero:
                        c = [fld.add(a, fld.mul(t, b)) for a, b in zip(c, w)]
                yield c
                count += 1
                if count >= ENUMERATION_CAP:
                    return
            return
        if isinstance(fld, RationalFunctionField):
            # the unpinned part is searched over the base field only
            K = fld.base
            for coeffs in product(list(K.elements()), repeat=len(free)):
                c = list(base)
                for t, w in zip(coeffs, free):
                    if t != K.zero:
                        tt = fld.embed(K, t)
                        c = [fld.add(a, fld.mul(tt, b)) for a, b in zip(c, w)]
                yield c
            return
        raise UnsupportedFieldError("operators leave the translation undetermined over an infinite field")


def solve_vertex(ivf: VertexInitialForm, frame: Frame, solver: VertexSolver | None = None) -> tuple | None:
    """Coefficients ``c`` with ``F(Y + c U^v) = In_v(f)``, or None."""
    solver = solver or VertexSolver(ivf.initial, frame)
    return solver.solve(ivf)


# ---------------------------------------------------------------------------
# the preparation loop


@dataclass(frozen=True)
class PreparationStep:
    vertex: Point
    coeffs: tuple  # raw field values c_j; translation y_j -> y_j - c_j u^v
    delta_before: NuValue
    poly: Poly  # f after the translation

    def translation(self, frame: Frame) -> dict[int, Poly]:
        f = self.poly.field
        n = self.poly.nvars
        mono = Poly.monomial(f, _u_exponent(frame, self.vertex))
        return {j: Poly.var(f, n, j) - mono.scale(c) for j, c in zip(frame.y_indices, self.coeffs) if c != f.zero}


def _u_exponent(frame: Frame, v: Point) -> tuple:
    e = [0] * frame.n
    for k, i in enumerate(frame.u_indices):
        e[i] = int(v[k])
    return tuple(e)


@dataclass(frozen=True)
class PreparationTrace:
    steps: tuple[PreparationStep, ...]
    status: str
    final: Poly
    final_polyhedron: HPolyhedron | None = None
    deltas: tuple = dc_field(default=())

    def to_json(self, frame: Frame) -> dict:
        from .mpoly import format_poly

        names = frame.names
        steps = []
        for st in self.steps:
            subs = st.translation(frame)
            steps.append({
                "vertex": [{"num": x.numerator, "den": x.denominator} for x in st.vertex],
                "delta_before": st.delta_before.to_json(),
                "translation": {names[j]: format_poly(p, names) for j, p in sorted(subs.items())},
            })
        return {"status": self.status, "steps": steps, "final": format_poly(self.final, names)}


def check_normalized(f: Poly, frame: Frame) -> Poly:
    F = f.initial_form()
    if any(F.involves(i) for i in frame.u_indices):
        raise PreconditionError("initial form involves u-variables; normalize the frame first")
    if F.field.is_perfect:
        d = directrix(F)
        if d.r != frame.r:
            raise PreconditionError(f"directrix has codimension {d.r}, frame has {frame.r} y-variables")
    return F


def prepare_delta(f: Poly, frame: Frame, solver: VertexSolver | None = None,
                  max_iter: int | None = None) -> tuple[NuValue, PreparationTrace]:
    if f.is_zero():
        raise PreconditionError("f is zero")
    F = check_normalized(f, frame) if solver is None else f.initial_form()
    m = f.ord()
    solver = solver or VertexSolver(F, frame)
    N = frame.N
    limit = 4 * N if max_iter is None else max_iter
    steps: list[PreparationStep] = []
    deltas = []
    cur = f
    for _ in range(limit):
        poly = polyhedron(cur, frame)
        deltas.append(poly.delta)
        if poly.delta.is_infinite:
            return Infinite, PreparationTrace(tuple(steps), DEGENERATE, cur, poly, tuple(deltas))
        delta = poly.delta.value
        if delta * m > N:
            bound = AtLeast(Fraction(N, m), N)
            return bound, PreparationTrace(tuple(steps), PRECISION_EXHAUSTED, cur, poly, tuple(deltas))
        for v in poly.delta_vertices():
            ivf = initial_form_at_vertex(cur, frame, v, poly)
            c = solver.solve(ivf)
            if c is not None:
                step_poly = cur.substitute(_translation(cur, frame, v, c))
                steps.append(PreparationStep(v, c, poly.delta, step_poly))
                cur = step_poly
                break
        else:
            return Exact(delta), PreparationTrace(tuple(steps), WELL_PREPARED, cur, poly, tuple(deltas))
    poly = polyhedron(cur, frame)
    val = AtLeast(poly.delta.value, N) if poly.delta.value is not None else Infinite
    return val, PreparationTrace(tuple(steps), PRECISION_EXHAUSTED, cur, poly, tuple(deltas))


def _translation(f: Poly, frame: Frame, v: Point, c) -> dict[int, Poly]:
    fld = f.field
    mono = Poly.monomial(fld, _u_exponent(frame, v))
    return {j: Poly.var(fld, f.nvars, j) - mono.scale(cj) for j, cj in zip(frame.y_indices, c) if cj != fld.zero}


def replay(f: Poly, frame: Frame, trace: PreparationTrace) -> Poly:
    """Apply the trace's translations to ``f`` from scratch."""
    cur = f
    for st in trace.steps:
        cur = cur.substitute(_translation(cur, frame, st.vertex, st.coeffs))
    return cur


def extend_residue_field_check(f: Poly, frame: Frame) -> bool:
    """Recompute ``δ`` after lifting the coefficients into ``K(t)``.

    Returns True when the value is unchanged.  Over infinite fields the
    check is vacuous.
    """
    fld = f.field
    if not fld.is_finite:
        return True
    base_val, _ = prepare_delta(f, frame)
    big = RationalFunctionField(fld)
    F = f.initial_form()
    solver = VertexSolver(F, frame).lifted(big)
    lifted_val, _ = prepare_delta(f.lift(big), frame, solver=solver)
    return base_val == lifted_val
