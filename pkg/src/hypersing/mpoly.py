"""Sparse multivariate polynomials over the fields in :mod:`hypersing.scalars`.

A :class:`Poly` is a mapping from exponent tuples to raw field values with
no stored zeros.  Variable names are not part of a polynomial; they live on
a :class:`Frame`, which also records the ``(u | y)`` split and the working
truncation degree ``N``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Callable, Iterable, Mapping

from .errors import FieldMismatchError, NotAUnitError, PreconditionError
from .scalars import Field, Scalar

INF = math.inf
MAX_VARS = 16
DEFAULT_PRECISION = 64

Exp = tuple  # tuple[int, ...]


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Exp, b: Exp) -> bool:
    """Componentwise ``a <= b``."""
    return all(x <= y for x, y in zip(a, b))


def grlex_key(e: Exp):
    return (sum(e), e)


class Poly:
    """Immutable sparse polynomial.  Build with the class constructors."""

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: Field, nvars: int, terms: Mapping[Exp, object] | None = None):
        if nvars > MAX_VARS:
            raise ValueError(f"at most {MAX_VARS} variables supported")
        self.field = field
        self.nvars = nvars
        zero = field.zero
        self.terms = {e: c for e, c in (terms or {}).items() if c != zero}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, field: Field, nvars: int, terms: dict) -> "Poly":
        # trusted path: terms already canonical
        obj = object.__new__(cls)
        obj.field, obj.nvars, obj.terms, obj._hash = field, nvars, terms, None
        return obj

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "Poly":
        return cls._raw(field, nvars, {})

    @classmethod
    def const(cls, field: Field, nvars: int, c=1) -> "Poly":
        return cls(field, nvars, {(0,) * nvars: _coerce(field, c)})

    @classmethod
    def one(cls, field: Field, nvars: int) -> "Poly":
        return cls.const(field, nvars, 1)

    @classmethod
    def var(cls, field: Field, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(field, nvars, {tuple(e): field.one})

    @classmethod
    def monomial(cls, field: Field, exp: Iterable[int], c=1) -> "Poly":
        exp = tuple(exp)
        return cls(field, len(exp), {exp: _coerce(field, c)})

    @classmethod
    def from_terms(cls, field: Field, nvars: int, items: Iterable[tuple[Exp, object]]) -> "Poly":
        acc: dict = {}
        add = field.add
        for e, c in items:
            c = _coerce(field, c)
            acc[e] = add(acc[e], c) if e in acc else c
        return cls(field, nvars, acc)

    # -- basic protocol -----------------------------------------------------

    def _check(self, other: "Poly"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.spec} vs {other.field.spec}")
        if self.nvars != other.nvars:
            raise FieldMismatchError(f"{self.nvars} vs {other.nvars} variables")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Scalar)):
            return Poly.const(self.field, self.nvars, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Scalar)):
            other = Poly.const(self.field, self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Poly({self.field.spec}, {format_poly(self, names)})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = f.add(out[e], c)
                if s == f.zero:
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Poly._raw(f, self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        neg = self.field.neg
        return Poly._raw(self.field, self.nvars, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Scalar)):
            return self.scale(_coerce(self.field, other))
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.mul_trunc(other, None)

    __rmul__ = __mul__

    def mul_trunc(self, other: "Poly", N: int | None) -> "Poly":
        """Product keeping only terms of total degree <= N (all terms if N is None)."""
        self._check(other)
        f = self.field
        mul, add, zero = f.mul, f.add, f.zero
        out: dict = {}
        a_items = list(self.terms.items())
        b_items = list(other.terms.items())
        if N is not None:
            a_items = [(e, c, sum(e)) for e, c in a_items]
            b_items = [(e, c, sum(e)) for e, c in b_items]
            for ea, ca, da in a_items:
                if da > N:
                    continue
                for eb, cb, db in b_items:
                    if da + db > N:
                        continue
                    e = tuple(x + y for x, y in zip(ea, eb))
                    v = mul(ca, cb)
                    out[e] = add(out[e], v) if e in out else v
        else:
            for ea, ca in a_items:
                for eb, cb in b_items:
                    e = tuple(x + y for x, y in zip(ea, eb))
                    v = mul(ca, cb)
                    out[e] = add(out[e], v) if e in out else v
        return Poly._raw(f, self.nvars, {e: c for e, c in out.items() if c != zero})

    def scale(self, c) -> "Poly":
        f = self.field
        c = _coerce(f, c)
        if c == f.zero:
            return Poly.zero(f, self.nvars)
        return Poly._raw(f, self.nvars, {e: f.mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        return self.pow_trunc(k, None)

    def pow_trunc(self, k: int, N: int | None) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.one(self.field, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result.mul_trunc(base, N)
            k >>= 1
            if k:
                base = base.mul_trunc(base, N)
        return result

    # -- degrees and pieces -------------------------------------------------

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def ord(self):
        """Order at the origin; ``INF`` for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=INF)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw(self.field, self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def initial_form(self) -> "Poly":
        if not self.terms:
            raise ValueError("initial form of zero")
        return self.homogeneous_part(self.ord())

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def truncate(self, N: int) -> "Poly":
        return Poly._raw(self.field, self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= N})

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def ord_in(self, idx: Iterable[int]):
        """Order with respect to the variables ``idx`` (the others are units)."""
        idx = list(idx)
        return min((sum(e[i] for i in idx) for e in self.terms), default=INF)

    def involves(self, i: int) -> bool:
        return any(e[i] for e in self.terms)

    def variables(self) -> list[int]:
        return [i for i in range(self.nvars) if self.involves(i)]

    def coeff(self, exp: Iterable[int]) -> Scalar:
        return Scalar(self.field, self.terms.get(tuple(exp), self.field.zero))

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def coeffs_in(self, i: int) -> dict[int, "Poly"]:
        """Split as ``sum_k c_k * x_i^k``; each ``c_k`` has no ``x_i``."""
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: Poly._raw(self.field, self.nvars, t) for k, t in parts.items()}

    def restrict(self, keep: Callable[[Exp], bool]) -> "Poly":
        return Poly._raw(self.field, self.nvars, {e: c for e, c in self.terms.items() if keep(e)})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- derivatives --------------------------------------------------------

    def hasse(self, i: int, k: int) -> "Poly":
        """Coefficient of ``T^k`` in ``self(..., x_i + T, ...)``."""
        f = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i] >= k:
                b = f.from_int(comb(e[i], k))
                if b != f.zero:
                    out[e[:i] + (e[i] - k,) + e[i + 1:]] = f.mul(c, b)
        return Poly(f, self.nvars, out)

    def hasse_multi(self, alpha: Iterable[int], idx: Iterable[int] | None = None) -> "Poly":
        """Hasse derivative for the multi-index ``alpha`` over variables ``idx``."""
        idx = list(range(self.nvars)) if idx is None else list(idx)
        f = self.field
        alpha = tuple(alpha)
        out = {}
        for e, c in self.terms.items():
            b = 1
            ne = list(e)
            ok = True
            for a, i in zip(alpha, idx):
                if e[i] < a:
                    ok = False
                    break
                b *= comb(e[i], a)
                ne[i] = e[i] - a
            if ok:
                v = f.mul(c, f.from_int(b))
                if v != f.zero:
                    ne = tuple(ne)
                    out[ne] = f.add(out[ne], v) if ne in out else v
        return Poly(f, self.nvars, out)

    # -- composition --------------------------------------------------------

    def substitute(self, assignment: Mapping[int, "Poly"], N: int | None = None) -> "Poly":
        """Replace ``x_i`` by ``assignment[i]``; the target may have a different
        number of variables.  Terms above degree ``N`` are dropped when given."""
        if not assignment:
            return self
        target = next(iter(assignment.values()))
        nv = target.nvars
        f = self.field
        for g in assignment.values():
            if g.field != f:
                raise FieldMismatchError(f"{g.field.spec} vs {f.spec}")
            if g.nvars != nv:
                raise FieldMismatchError("substitution images disagree in arity")
        if nv != self.nvars:
            missing = [i for i in range(self.nvars) if i not in assignment and self.involves(i)]
            if missing:
                raise ValueError(f"variables {missing} need an image")
        images = {i: assignment.get(i, Poly.var(f, nv, i) if nv == self.nvars else None) for i in range(self.nvars)}
        cache: dict[tuple[int, int], Poly] = {}

        def power(i: int, k: int) -> Poly:
            key = (i, k)
            if key not in cache:
                if k == 0:
                    cache[key] = Poly.one(f, nv)
                elif k == 1:
                    cache[key] = images[i] if N is None else images[i].truncate(N)
                else:
                    h = k // 2
                    cache[key] = power(i, h).mul_trunc(power(i, k - h), N)
            return cache[key]

        # group by the untouched part so shared prefixes are multiplied once
        acc: dict = {}
        zero = f.zero
        for e, c in self.terms.items():
            term = Poly.const(f, nv, c)
            for i, k in enumerate(e):
                if k:
                    term = term.mul_trunc(power(i, k), N)
                    if not term.terms:
                        break
            for te, tc in term.terms.items():
                acc[te] = f.add(acc[te], tc) if te in acc else tc
        return Poly._raw(f, nv, {e: c for e, c in acc.items() if c != zero})

    def translate(self, i: int, s: "Poly") -> "Poly":
        """``x_i -> x_i + s``."""
        return self.substitute({i: Poly.var(self.field, self.nvars, i) + s})

    def evaluate(self, i: int, value) -> "Poly":
        return self.substitute({i: Poly.const(self.field, self.nvars, value)})

    def reindex(self, nvars: int, positions: Mapping[int, int]) -> "Poly":
        """Move variable ``i`` to slot ``positions[i]`` of an ``nvars``-variable ring."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, k in enumerate(e):
                if k:
                    if i not in positions:
                        raise ValueError(f"variable {i} has no target slot")
                    ne[positions[i]] += k
            out[tuple(ne)] = c
        return Poly(self.field, nvars, out)

    def map_coeffs(self, fn: Callable, field: Field) -> "Poly":
        return Poly(field, self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def lift(self, field: Field) -> "Poly":
        if field == self.field:
            return self
        return self.map_coeffs(lambda c: field.embed(self.field, c), field)

    # -- division -----------------------------------------------------------

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        f = self.field
        lead_e = max(other.terms)
        lead_inv = f.inv(other.terms[lead_e])
        rem = dict(self.terms)
        quo: dict = {}
        others = [(e, c) for e, c in other.terms.items() if e != lead_e]
        while rem:
            e = max(rem)
            c = rem.pop(e)
            if not divides(lead_e, e):
                raise ArithmeticError("division is not exact")
            qe = tuple(x - y for x, y in zip(e, lead_e))
            qc = f.mul(c, lead_inv)
            quo[qe] = qc
            for oe, oc in others:
                te = tuple(x + y for x, y in zip(qe, oe))
                v = f.neg(f.mul(qc, oc))
                if te in rem:
                    s = f.add(rem[te], v)
                    if s == f.zero:
                        del rem[te]
                    else:
                        rem[te] = s
                else:
                    rem[te] = v
        return Poly._raw(f, self.nvars, quo)


def _coerce(field: Field, c):
    if isinstance(c, Scalar):
        if c.field != field:
            return field.embed(c.field, c.value)
        return c.value
    if isinstance(c, int):
        return field.from_int(c)
    return c


def ord_origin(f: Poly):
    return f.ord()


def initial_form(f: Poly) -> Poly:
    return f.initial_form()


def hasse_derivative(f: Poly, direction: int, i: int) -> Poly:
    return f.hasse(direction, i)


def substitute(f: Poly, assignment: Mapping[int, Poly]) -> Poly:
    return f.substitute(assignment)


# ---------------------------------------------------------------------------
# resultants

def _bareiss_det(M: list[list[Poly]], field: Field, nvars: int) -> Poly:
    n = len(M)
    if n == 0:
        return Poly.one(field, nvars)
    M = [row[:] for row in M]
    sign = 1
    prev = Poly.one(field, nvars)
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(field, nvars)
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * pivot - M[i][k] * M[k][j]
                M[i][j] = num.exact_div(prev) if num else num
            M[i][k] = Poly.zero(field, nvars)
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f: Poly, g: Poly, var: int) -> list[list[Poly]]:
    a, b = f.degree_in(var), g.degree_in(var)
    fc, gc = f.coeffs_in(var), g.coeffs_in(var)
    zero = Poly.zero(f.field, f.nvars)
    size = a + b
    rows = []
    for i in range(b):
        row = [zero] * size
        for k in range(a + 1):
            row[i + a - k] = fc.get(k, zero)
        rows.append(row)
    for i in range(a):
        row = [zero] * size
        for k in range(b + 1):
            row[i + b - k] = gc.get(k, zero)
        rows.append(row)
    return rows


def resultant_in(f: Poly, g: Poly, var: int) -> Poly:
    """Sylvester resultant eliminating variable ``var``."""
    f._check(g)
    if f.degree_in(var) < 1 or g.degree_in(var) < 1:
        raise PreconditionError("resultant needs positive degree in the eliminated variable")
    return _bareiss_det(sylvester_matrix(f, g, var), f.field, f.nvars)


# ---------------------------------------------------------------------------
# frames and truncated series

def default_precision() -> int:
    raw = os.environ.get("HYPERSING_PRECISION")
    return int(raw) if raw else DEFAULT_PRECISION


@dataclass(frozen=True)
class Frame:
    """Variable names split into a u-block (first ``split``) and a y-block."""

    names: tuple[str, ...]
    split: int
    N: int = dc_field(default_factory=default_precision)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        if len(self.names) > MAX_VARS:
            raise ValueError(f"at most {MAX_VARS} variables supported")
        if not 0 <= self.split <= len(self.names):
            raise ValueError("split index out of range")
        if self.N < 1:
            raise ValueError("precision must be positive")

    @classmethod
    def parse(cls, text: str, N: int | None = None) -> "Frame":
        """``"u1,u2|y1,y2"``; without ``|`` all variables are y-variables."""
        if "|" in text:
            left, right = text.split("|", 1)
        else:
            left, right = "", text
        us = [s.strip() for s in left.split(",") if s.strip()]
        ys = [s.strip() for s in right.split(",") if s.strip()]
        kw = {} if N is None else {"N": N}
        return cls(tuple(us + ys), len(us), **kw)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def r(self) -> int:
        return self.n - self.split

    @property
    def u_indices(self) -> list[int]:
        return list(range(self.split))

    @property
    def y_indices(self) -> list[int]:
        return list(range(self.split, self.n))

    @property
    def u_names(self) -> tuple[str, ...]:
        return self.names[: self.split]

    @property
    def y_names(self) -> tuple[str, ...]:
        return self.names[self.split:]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def with_precision(self, N: int) -> "Frame":
        return Frame(self.names, self.split, N)

    def text(self) -> str:
        return ",".join(self.u_names) + "|" + ",".join(self.y_names)


@dataclass(frozen=True)
class TruncSeries:
    """A polynomial known to be exact in all degrees ``<= degree``."""

    poly: Poly
    degree: int

    def __post_init__(self):
        if self.poly.total_degree() > self.degree:
            raise ValueError("series carries terms beyond its certified degree")


def invert_unit(f: Poly, frame: Frame | int) -> TruncSeries:
    """Inverse of a unit modulo degree ``N + 1`` (Newton iteration)."""
    N = frame if isinstance(frame, int) else frame.N
    fld = f.field
    c0 = f.constant_term()
    if c0 == fld.zero:
        raise NotAUnitError("constant term is zero")
    g = Poly.const(fld, f.nvars, fld.inv(c0))
    prec = 0
    two = Poly.const(fld, f.nvars, 2)
    while prec < N:
        prec = min(2 * prec + 1, N)
        g = g.mul_trunc(two - f.mul_trunc(g, prec), prec)
    return TruncSeries(g.truncate(N), N)


# ---------------------------------------------------------------------------
# text output

def _coeff_text(field: Field, c) -> tuple[str, bool]:
    """Coefficient text without sign, and whether it is negative."""
    s = field.fmt(c)
    neg = s.startswith("-")
    if neg:
        s = s[1:]
    if ("+" in s or "-" in s) and not (s.startswith("(") and s.endswith(")") and s.count("(") == 1):
        s = f"({s})"
    return s, neg


def format_poly(f: Poly, names: Iterable[str]) -> str:
    names = list(names)
    if not f.terms:
        return "0"
    out = []
    for e, c in f.sorted_terms():
        ctext, neg = _coeff_text(f.field, c)
        mono = "*".join(names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k)
        if mono:
            body = mono if ctext == "1" else f"{ctext}*{mono}"
        else:
            body = ctext
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
