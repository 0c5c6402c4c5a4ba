"""Tangent cone analysis: ridge, directrix and extremality.

The ridge ideal of a homogeneous ``F`` of degree ``m`` is generated by the
Hasse derivatives ``Δ_α F`` with ``|α| < m``.  Over a perfect field its
additive generators are ``q``-th powers ``L^q`` of linear forms (``q`` a
power of the characteristic, ``q = 1`` in characteristic 0), and the
linear forms ``L`` span the ideal of the directrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import NamedTuple, Sequence

from .errors import ConsistencyError, PreconditionError, UnsupportedFieldError
from .linalg import rref
from .mpoly import Exp, Frame, Poly
from .scalars import Field, Scalar


def monomials(nvars: int, d: int, idx: Sequence[int] | None = None) -> list[Exp]:
    """Exponents of total degree ``d`` supported on ``idx``."""
    idx = list(range(nvars)) if idx is None else list(idx)
    out = []
    for combo in combinations_with_replacement(idx, d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out))


def _qpowers(p: int, m: int) -> list[int]:
    if p == 0:
        return [1]
    qs, q = [], 1
    while q <= m:
        qs.append(q)
        q *= p
    return qs


def _check_field(field: Field):
    if not field.is_perfect:
        raise UnsupportedFieldError(f"ridge and directrix need a perfect field, got {field.spec}")


def _linear_form(field: Field, nvars: int, coeffs: dict[int, object]) -> Poly:
    terms = {}
    for i, c in coeffs.items():
        e = [0] * nvars
        e[i] = 1
        terms[tuple(e)] = c
    return Poly(field, nvars, terms)


@dataclass(frozen=True)
class RidgeOperator:
    """Constant-coefficient operator ``D = sum d_α Δ_α`` with ``D F = L^q``."""

    coeffs: dict  # exponent alpha -> raw coefficient
    form: Poly
    e: int  # q = p^e

    def apply(self, G: Poly, idx: Sequence[int]) -> Poly:
        f = G.field
        acc = Poly.zero(f, G.nvars)
        for alpha, d in self.coeffs.items():
            acc = acc + G.hasse_multi(alpha, idx).scale(d)
        return acc


@dataclass(frozen=True)
class RidgeData:
    generators: tuple[tuple[Poly, int], ...]  # (L, e) meaning L^(p^e)
    char0: bool
    operators: tuple[RidgeOperator, ...] = ()


def _pure_power_intersection(rows: list[list], cols: list[Exp], q: int, field: Field,
                             extra: int = 0) -> list[tuple[dict, list]]:
    """Vectors of span(rows) supported on pure ``q``-th powers.

    ``rows`` may carry ``extra`` trailing bookkeeping columns.  Returns pairs
    (exponent index -> coefficient on X_i^q, bookkeeping entries).
    """
    pure = [k for k, e in enumerate(cols) if max(e) == q and sum(e) == q]
    other = [k for k in range(len(cols)) if k not in pure]
    order = other + pure
    permuted = [[row[k] for k in order] + row[len(cols):] for row in rows]
    R, piv = rref(permuted, field)
    out = []
    no = len(other)
    for row, pc in zip(R, piv):
        if no <= pc < len(order):
            coeffs = {}
            for j, k in enumerate(pure):
                c = row[no + j]
                if c != field.zero:
                    coeffs[cols[k].index(q)] = c
            out.append((coeffs, row[len(order):]))
    return out


def ridge(F: Poly, idx: Sequence[int] | None = None, with_operators: bool = True) -> RidgeData:
    """Ridge of the cone ``F = 0`` in the variables ``idx`` (default: all)."""
    field = F.field
    _check_field(field)
    if F.is_zero() or not F.is_homogeneous():
        raise PreconditionError("ridge needs a nonzero homogeneous form")
    idx = list(range(F.nvars)) if idx is None else list(idx)
    if any(F.involves(i) for i in range(F.nvars) if i not in idx):
        raise PreconditionError("form involves variables outside the given block")
    n = F.nvars
    m = F.total_degree()
    p = field.characteristic
    gens: list[tuple[Poly, int]] = []
    ops: list[RidgeOperator] = []
    for e, q in enumerate(_qpowers(p, m)):
        cols = monomials(n, q, idx)
        pos = {c: k for k, c in enumerate(cols)}
        # degree-q slice of the ideal generated by the derivatives
        rows = []
        for order in range(m - q, m):
            mult = monomials(n, q - (m - order), idx)
            for alpha in monomials(n, order, idx):
                D = F.hasse_multi([alpha[i] for i in idx], idx)
                if D.is_zero():
                    continue
                for g in mult:
                    row = [field.zero] * len(cols)
                    for de, c in D.terms.items():
                        row[pos[tuple(a + b for a, b in zip(de, g))]] = c
                    rows.append(row)
        for coeffs, _ in _pure_power_intersection(rows, cols, q, field):
            L = _linear_form(field, n, {i: field.frobenius_root(c, e) for i, c in coeffs.items()})
            gens.append((L, e))
        if with_operators:
            alphas = monomials(n, m - q, idx)
            rows = []
            for k, alpha in enumerate(alphas):
                D = F.hasse_multi([alpha[i] for i in idx], idx)
                row = [field.zero] * len(cols)
                for de, c in D.terms.items():
                    row[pos[de]] = c
                row += [field.one if j == k else field.zero for j in range(len(alphas))]
                rows.append(row)
            for coeffs, book in _pure_power_intersection(rows, cols, q, field, len(alphas)):
                L = _linear_form(field, n, {i: field.frobenius_root(c, e) for i, c in coeffs.items()})
                dco = {tuple(a[i] for i in idx): d for a, d in zip(alphas, book) if d != field.zero}
                ops.append(RidgeOperator(dco, L, e))
    # keep an independent subset, preferring low exponents
    kept: list[tuple[Poly, int]] = []
    vecs: list[list] = []
    for L, e in gens:
        v = [L.coeff(_unit(n, i)).value for i in range(n)]
        if len(rref(vecs + [v], field)[1]) > len(vecs):
            vecs.append(v)
            kept.append((L, e))
    return RidgeData(tuple(kept), p == 0, tuple(ops))


def _unit(n: int, i: int) -> Exp:
    e = [0] * n
    e[i] = 1
    return tuple(e)


@dataclass(frozen=True)
class DirectrixData:
    """Directrix ``<L_1..L_r>`` and the linear change putting it on a y-block.

    ``forms`` are in reduced echelon form with pivot variables ``pivots``.
    ``to_new`` maps each old variable index to its expression in the new
    frame, whose u-block is the non-pivot variables and whose y-block is
    ``L_1..L_r``.
    """

    r: int
    forms: tuple[Poly, ...]
    pivots: tuple[int, ...]
    free: tuple[int, ...]
    to_new: dict  # old index -> Poly in new variables
    ridge: RidgeData

    def apply(self, f: Poly) -> Poly:
        return f.substitute(self.to_new)

    def new_names(self, names: Sequence[str]) -> tuple[tuple[str, ...], int]:
        us = [names[i] for i in self.free]
        ys = []
        for L, pv in zip(self.forms, self.pivots):
            ys.append(names[pv] if len(L) == 1 else names[pv] + "'")
        taken = set(us)
        out = []
        for y in ys:
            while y in taken:
                y += "'"
            taken.add(y)
            out.append(y)
        return tuple(us + out), len(us)


def directrix(F: Poly) -> DirectrixData:
    """Directrix of ``F = 0`` over the coefficient field."""
    field = F.field
    rd = ridge(F)
    n = F.nvars
    vecs = [[L.coeff(_unit(n, i)).value for i in range(n)] for L, _ in rd.generators]
    R, piv = rref(vecs, field) if vecs else ([], [])
    forms = tuple(_linear_form(field, n, {i: c for i, c in enumerate(row) if c != field.zero}) for row in R)
    free = tuple(i for i in range(n) if i not in piv)
    r = len(piv)
    # new variable order: free vars (u-block) then L_1..L_r
    new_index = {old: k for k, old in enumerate(free)}
    to_new = {}
    for old in free:
        to_new[old] = Poly.var(field, n, new_index[old])
    for k, (row, pv) in enumerate(zip(R, piv)):
        expr = Poly.var(field, n, len(free) + k)
        for j in free:
            if row[j] != field.zero:
                expr = expr - Poly.var(field, n, new_index[j]).scale(row[j])
        to_new[pv] = expr
    data = DirectrixData(r, forms, tuple(piv), free, to_new, rd)
    G = data.apply(F)
    if any(G.involves(i) for i in range(len(free))):
        raise ConsistencyError("initial form is not a polynomial in the directrix forms")
    return data


def directrix_char0_span(F: Poly) -> list[list]:
    """Echelon basis of the span of all order ``m-1`` derivatives (char 0)."""
    n = F.nvars
    m = F.total_degree()
    vecs = []
    for alpha in monomials(n, m - 1):
        D = F.hasse_multi(alpha)
        vecs.append([D.coeff(_unit(n, i)).value for i in range(n)])
    return rref(vecs, F.field)[0]


class Extremality(NamedTuple):
    extremal: bool
    c: Scalar | None
    form: Poly | None


def is_extremal(f: Poly) -> Extremality:
    m = f.ord()
    if m == float("inf") or m <= 1:
        raise PreconditionError("extremality needs multiplicity at least 2")
    F = f.initial_form()
    d = directrix(F)
    if d.r != 1:
        return Extremality(False, None, None)
    L = d.forms[0]
    pv = d.pivots[0]
    c = F.coeff(tuple(m if i == pv else 0 for i in range(f.nvars)))
    if F != (L ** m) * c:
        raise ConsistencyError("codimension-one directrix but not a power of a form")
    return Extremality(True, c, L)


class Normalized(NamedTuple):
    poly: Poly
    frame: Frame
    directrix: DirectrixData


def normalize_frame(f: Poly, names: Sequence[str], N: int | None = None) -> Normalized:
    """Change coordinates so the directrix becomes the y-block."""
    if f.ord() < 1 or f.is_zero():
        raise PreconditionError("normalization needs f in the maximal ideal")
    d = directrix(f.initial_form())
    g = d.apply(f)
    new_names, split = d.new_names(names)
    frame = Frame(new_names, split) if N is None else Frame(new_names, split, N)
    return Normalized(g, frame, d)
