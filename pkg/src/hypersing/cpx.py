"""Minimal support sets and CP-expansions ``f = sum_{a in S(f)} c_a x^a``.

Each ``c_a`` is a unit of the local ring at the origin.  The set ``S(f)`` of
componentwise-minimal exponents is canonical; the units depend on the
tie-break order used to distribute non-minimal terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import PreconditionError
from .linalg import rref
from .mpoly import INF, Exp, Frame, Poly, TruncSeries, divides

ORDERS: dict[str, Callable[[Exp], tuple]] = {
    "grlex": lambda e: (sum(e), e),
    "lex": lambda e: e,
    "grevlex": lambda e: (sum(e), tuple(-x for x in reversed(e))),
    "revgrlex": lambda e: (sum(e), tuple(reversed(e))),
}


@dataclass(frozen=True)
class SupportSet:
    exponents: tuple[Exp, ...]  # sorted by grlex
    frame: Frame | None = None

    def __iter__(self) -> Iterator[Exp]:
        return iter(self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    def __contains__(self, e) -> bool:
        return tuple(e) in self.exponents

    def as_set(self) -> frozenset:
        return frozenset(self.exponents)


@dataclass(frozen=True)
class CPExpansion:
    support: SupportSet
    units: dict  # exponent -> Poly with nonzero constant term
    order: str = "grlex"

    def reassemble(self) -> Poly:
        items = iter(self.units.items())
        e, c = next(items)
        total = c * Poly.monomial(c.field, e)
        for e, c in items:
            total = total + c * Poly.monomial(c.field, e)
        return total


def _antichain(exps) -> tuple[Exp, ...]:
    kept: list[Exp] = []
    for e in sorted(exps, key=ORDERS["grlex"]):
        if not any(divides(k, e) for k in kept):
            kept.append(e)
    return tuple(kept)


def support_min(f: Poly, frame: Frame | None = None) -> SupportSet:
    if f.is_zero():
        raise ValueError("S(0) is undefined")
    return SupportSet(_antichain(f.terms), frame)


def support_min_series(s: TruncSeries) -> SupportSet:
    """``S(f) ∩ M_d`` for a series certified up to degree ``d``."""
    return SupportSet(tuple(e for e in _antichain(s.poly.terms) if sum(e) <= s.degree))


def cp_expand(f: Poly, order: str = "grlex") -> CPExpansion:
    key = ORDERS[order]
    S = support_min(f)
    ranked = sorted(S, key=key)
    buckets: dict[Exp, dict] = {a: {} for a in ranked}
    for e, c in f.terms.items():
        a = next(a for a in ranked if divides(a, e))
        buckets[a][tuple(x - y for x, y in zip(e, a))] = c
    units = {a: Poly(f.field, f.nvars, t) for a, t in buckets.items()}
    return CPExpansion(S, units, order)


def has_u_expansion(f: Poly, frame: Frame) -> bool:
    ys = frame.y_indices
    return all(all(a[j] == 0 for j in ys) for a in support_min(f, frame))


def monomial_valuation(f: Poly, weights: Sequence[int]):
    if any(w < 1 for w in weights):
        raise ValueError("weights must be positive")
    if f.is_zero():
        return INF
    return min(sum(w * k for w, k in zip(weights, a)) for a in support_min(f))


# ---------------------------------------------------------------------------
# coordinate changes


def linear_part_matrix(params: Sequence[Poly]) -> list[list]:
    n = params[0].nvars
    fld = params[0].field
    rows = []
    for p in params:
        row = [fld.zero] * n
        for e, c in p.terms.items():
            if sum(e) == 1:
                row[e.index(1)] = c
        rows.append(row)
    return rows


def coordinate_inverse(params: Sequence[Poly], N: int) -> list[Poly]:
    """Series ``x_i(Y)`` with ``params(x(Y)) = Y`` modulo degree ``N + 1``.

    ``params`` must be a regular system of parameters: no constant terms and
    an invertible linear part.
    """
    n = len(params)
    fld = params[0].field
    if any(p.constant_term() != fld.zero for p in params):
        raise PreconditionError("parameters must vanish at the origin")
    A = linear_part_matrix(params)
    aug = [row + [fld.one if i == j else fld.zero for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug, fld)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise PreconditionError("linear parts are not independent")
    Ainv = [row[n:] for row in R]
    Y = [Poly.var(fld, n, i) for i in range(n)]
    nonlinear = [p.restrict(lambda e: sum(e) >= 2) for p in params]

    def apply_inv(vec: list[Poly]) -> list[Poly]:
        out = []
        for row in Ainv:
            acc = Poly.zero(fld, n)
            for c, v in zip(row, vec):
                if c != fld.zero:
                    acc = acc + v.scale(c)
            out.append(acc)
        return out

    x = apply_inv(Y)
    for _ in range(N):
        sub = {i: xi for i, xi in enumerate(x)}
        x = apply_inv([Y[i] - nonlinear[i].substitute(sub, N) for i in range(n)])
    return [xi.truncate(N) for xi in x]


def in_coordinates(f: Poly, params: Sequence[Poly], N: int) -> TruncSeries:
    """``f`` rewritten as a series in ``params``, certified to degree ``N``."""
    x = coordinate_inverse(params, N)
    g = f.substitute({i: xi for i, xi in enumerate(x)}, N)
    return TruncSeries(g, N)


def check_truncated_support_equality(f: Poly, y: Sequence[Poly], z: Sequence[Poly], N: int) -> bool:
    """Compare ``S_y(f) ∩ M_N`` with ``S_z(f) ∩ M_N`` when ``z - y`` is in degree > N."""
    if len(y) != len(z):
        raise ValueError("parameter systems differ in length")
    for yj, zj in zip(y, z):
        if (zj - yj).ord() < N + 1:
            raise PreconditionError(f"z - y must have order at least {N + 1}")
    sy = support_min_series(in_coordinates(f, y, N))
    sz = support_min_series(in_coordinates(f, z, N))
    return sy.as_set() == sz.as_set()
