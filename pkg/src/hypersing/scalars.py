"""Exact coefficient fields: Q, F_p, F_{p^e} and F_p(t).

Each field object knows how to do arithmetic on *raw* values, which are
plain immutable Python objects:

* ``Rationals``            -> ``fractions.Fraction``
* ``PrimeField(p)``        -> ``int`` in ``range(p)``
* ``ExtensionField(p, g)`` -> tuple of ``e`` ints (coefficients of 1, w, ..., w^{e-1})
* ``RationalFunctionField(p)`` -> ``(num, den)`` pair of coefficient tuples,
  reduced, with ``den`` monic

Polynomials store raw values for speed.  The ``Scalar`` wrapper pairs a raw
value with its field and is what the public API hands out.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Any, Iterator

from .errors import FieldMismatchError, ParseError, UnsupportedFieldError

UPoly = tuple  # dense coefficients over F_p, low degree first, no trailing zeros


# ---------------------------------------------------------------------------
# primes and univariate polynomials over F_p

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _trim(a) -> UPoly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def up_add(a: UPoly, b: UPoly, p: int) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def up_neg(a: UPoly, p: int) -> UPoly:
    return tuple((-c) % p for c in a)


def up_sub(a: UPoly, b: UPoly, p: int) -> UPoly:
    return up_add(a, up_neg(b, p), p)


def up_mul(a: UPoly, b: UPoly, p: int) -> UPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(c % p for c in out)


def up_scale(a: UPoly, c: int, p: int) -> UPoly:
    return _trim((x * c) % p for x in a)


def up_divmod(a: UPoly, b: UPoly, p: int) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    rem = list(a)
    db = len(b) - 1
    quo = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k] % p
        if c:
            q = c * inv % p
            quo[k - db] = q
            for j, bj in enumerate(b):
                rem[k - db + j] = (rem[k - db + j] - q * bj) % p
    return _trim(quo), _trim(x % p for x in rem[:db])


def up_monic(a: UPoly, p: int) -> UPoly:
    if not a:
        return a
    return up_scale(a, pow(a[-1], -1, p), p)


def up_gcd(a: UPoly, b: UPoly, p: int) -> UPoly:
    while b:
        a, b = b, up_divmod(a, b, p)[1]
    return up_monic(a, p)


def up_inverse_mod(a: UPoly, m: UPoly, p: int) -> UPoly:
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    r0, r1 = m, up_divmod(a, m, p)[1]
    s0, s1 = (), (1,)
    while r1:
        q, r = up_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, up_sub(s0, up_mul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    return up_scale(s0, pow(r0[0], -1, p), p)


def up_powmod(a: UPoly, k: int, m: UPoly, p: int) -> UPoly:
    result: UPoly = (1,)
    base = up_divmod(a, m, p)[1]
    while k:
        if k & 1:
            result = up_divmod(up_mul(result, base, p), m, p)[1]
        base = up_divmod(up_mul(base, base, p), m, p)[1]
        k >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def up_is_irreducible(g: UPoly, p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    e = len(g) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    x = (0, 1)
    if up_powmod(x, p**e, g, p) != up_divmod(x, g, p)[1]:
        return False
    for q in _prime_factors(e):
        h = up_sub(up_powmod(x, p ** (e // q), g, p), x, p)
        if len(up_gcd(g, h, p)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, e: int) -> UPoly:
    """First monic irreducible of degree ``e`` in lexicographic order."""
    for low in product(range(p), repeat=e):
        g = tuple(low[::-1]) + (1,)
        if g[0] != 0 and up_is_irreducible(g, p):
            return g
    raise ValueError(f"no irreducible polynomial of degree {e} over F_{p}")


def _up_format(a: UPoly, var: str) -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts)


# ---------------------------------------------------------------------------
# fields

class Field:
    """Abstract coefficient field acting on raw values."""

    characteristic: int = 0
    generator_name: str | None = None

    # subclasses implement: zero, one, from_int, add, neg, mul, inv, fmt, random

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_one(self, a) -> bool:
        return a == self.one

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        result, base = self.one, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    @property
    def is_perfect(self) -> bool:
        return True

    @property
    def is_finite(self) -> bool:
        return False

    @property
    def order(self) -> int | None:
        return None

    def elements(self) -> Iterator[Any]:
        raise UnsupportedFieldError(f"{self.spec} is infinite")

    def frobenius_root(self, a, e: int):
        """Raw ``b`` with ``b^(p^e) = a``, or None when no root exists."""
        raise UnsupportedFieldError(f"no Frobenius over {self.spec}")

    def generator(self):
        raise UnsupportedFieldError(f"{self.spec} has no named generator")

    def embed(self, src: "Field", a):
        """Image of a raw value of ``src`` in this field."""
        if src == self:
            return a
        if isinstance(src, PrimeField) and src.characteristic == self.characteristic:
            return self.from_int(a)
        raise FieldMismatchError(f"cannot embed {src.spec} into {self.spec}")

    def __call__(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                return Scalar(self, self.embed(value.field, value.value))
            return value
        if isinstance(value, int):
            return Scalar(self, self.from_int(value))
        return Scalar(self, value)

    def __str__(self) -> str:
        return self.spec


@dataclass(frozen=True)
class Rationals(Field):
    characteristic = 0

    @property
    def spec(self) -> str:
        return "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def pow(self, a, k):
        return a**k

    def frobenius_root(self, a, e: int):
        if e == 0:
            return a
        raise UnsupportedFieldError("Q has characteristic 0")

    def fmt(self, a) -> str:
        return str(a)

    def random(self, rng: random.Random):
        num = rng.randint(-1000, 1000)
        den = rng.randint(1, 1000)
        return Fraction(num, den)

    def small_random(self, rng: random.Random):
        return Fraction(rng.randint(-5, 5))


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    @property
    def spec(self) -> str:
        return f"Fp:{self.p}"

    zero = 0
    one = 1

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return pow(a, -1, self.p)

    def pow(self, a, k):
        if k < 0:
            return pow(self.inv(a), -k, self.p)
        return pow(a, k, self.p)

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def order(self) -> int:
        return self.p

    def elements(self):
        return iter(range(self.p))

    def frobenius_root(self, a, e: int):
        return a

    def fmt(self, a) -> str:
        return str(a)

    def random(self, rng: random.Random):
        return rng.randrange(self.p)

    small_random = random


@dataclass(frozen=True)
class ExtensionField(Field):
    p: int
    modulus: UPoly  # monic, irreducible, degree e

    generator_name = "w"

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        g = _trim(c % self.p for c in self.modulus)
        if not g or g[-1] != 1:
            raise ValueError("modulus must be monic")
        if not up_is_irreducible(g, self.p):
            raise ValueError("modulus is not irreducible")
        object.__setattr__(self, "modulus", g)

    @classmethod
    def of_degree(cls, p: int, e: int) -> "ExtensionField":
        return cls(p, find_irreducible(p, e))

    @property
    def e(self) -> int:
        return len(self.modulus) - 1

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    @property
    def spec(self) -> str:
        return f"Fq:{self.p}^{self.e}"

    def _pad(self, a: UPoly):
        return tuple(a) + (0,) * (self.e - len(a))

    @property
    def zero(self):
        return (0,) * self.e

    @property
    def one(self):
        return self._pad((1,))

    def from_int(self, n: int):
        return self._pad((n % self.p,))

    def generator(self):
        return self._pad(up_divmod((0, 1), self.modulus, self.p)[1])

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = up_mul(_trim(a), _trim(b), self.p)
        return self._pad(up_divmod(prod, self.modulus, self.p)[1])

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError(f"division by zero in {self.spec}")
        return self._pad(up_inverse_mod(_trim(a), self.modulus, self.p))

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def order(self) -> int:
        return self.p**self.e

    def elements(self):
        return (tuple(c) for c in product(range(self.p), repeat=self.e))

    def frobenius_root(self, a, e: int):
        # Frobenius has order e on F_{p^e}; its inverse is a power of itself.
        k = (-e) % self.e
        return self.pow(a, self.p**k) if k else a

    def fmt(self, a) -> str:
        return _up_format(_trim(a), "w")

    def random(self, rng: random.Random):
        return tuple(rng.randrange(self.p) for _ in range(self.e))

    small_random = random


def _gtrim(a, zero) -> tuple:
    a = list(a)
    while a and a[-1] == zero:
        a.pop()
    return tuple(a)


@dataclass(frozen=True)
class RationalFunctionField(Field):
    """``K(t)`` over a finite field ``K``; ``Fpt:<p>`` means ``F_p(t)``."""

    base: Field

    generator_name = "t"

    def __post_init__(self):
        if not isinstance(self.base, (PrimeField, ExtensionField)):
            raise ValueError("K(t) needs a finite base field")

    @property
    def p(self) -> int:
        return self.base.characteristic

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.base.characteristic

    @property
    def spec(self) -> str:
        if isinstance(self.base, PrimeField):
            return f"Fpt:{self.p}"
        return f"Fqt:{self.p}^{self.base.e}"

    @property
    def zero(self):
        return ((), (self.base.one,))

    @property
    def one(self):
        return ((self.base.one,), (self.base.one,))

    @property
    def is_perfect(self) -> bool:
        return False

    # dense univariate helpers over the base field
    def _padd(self, a, b):
        K = self.base
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = K.add(out[i], c)
        return _gtrim(out, K.zero)

    def _pneg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def _pmul(self, a, b):
        K = self.base
        if not a or not b:
            return ()
        out = [K.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x != K.zero:
                for j, y in enumerate(b):
                    out[i + j] = K.add(out[i + j], K.mul(x, y))
        return _gtrim(out, K.zero)

    def _pscale(self, a, c):
        K = self.base
        return _gtrim((K.mul(x, c) for x in a), K.zero)

    def _pdivmod(self, a, b):
        K = self.base
        inv = K.inv(b[-1])
        rem = list(a)
        db = len(b) - 1
        quo = [K.zero] * max(len(a) - db, 0)
        for k in range(len(a) - 1, db - 1, -1):
            c = rem[k]
            if c != K.zero:
                q = K.mul(c, inv)
                quo[k - db] = q
                for j, bj in enumerate(b):
                    rem[k - db + j] = K.sub(rem[k - db + j], K.mul(q, bj))
        return _gtrim(quo, K.zero), _gtrim(rem[:db], K.zero)

    def _pgcd(self, a, b):
        while b:
            a, b = b, self._pdivmod(a, b)[1]
        return self._pscale(a, self.base.inv(a[-1])) if a else a

    def _reduce(self, num, den):
        K = self.base
        if not den:
            raise ZeroDivisionError(f"division by zero in {self.spec}")
        if not num:
            return self.zero
        g = self._pgcd(num, den)
        if len(g) > 1:
            num = self._pdivmod(num, g)[0]
            den = self._pdivmod(den, g)[0]
        lead = K.inv(den[-1])
        return self._pscale(num, lead), self._pscale(den, lead)

    def from_int(self, n: int):
        c = self.base.from_int(n)
        return ((c,), (self.base.one,)) if c != self.base.zero else self.zero

    def from_poly(self, coeffs) -> Any:
        K = self.base
        raw = [K.from_int(c) if isinstance(c, int) else c for c in coeffs]
        return self._reduce(_gtrim(raw, K.zero), (K.one,))

    def embed(self, src: Field, a):
        if src == self.base:
            return ((a,), (self.base.one,)) if a != self.base.zero else self.zero
        return super().embed(src, a)

    def generator(self):
        return ((self.base.zero, self.base.one), (self.base.one,))

    def add(self, a, b):
        (an, ad), (bn, bd) = a, b
        if ad == bd:
            return self._reduce(self._padd(an, bn), ad)
        return self._reduce(self._padd(self._pmul(an, bd), self._pmul(bn, ad)), self._pmul(ad, bd))

    def neg(self, a):
        return self._pneg(a[0]), a[1]

    def mul(self, a, b):
        return self._reduce(self._pmul(a[0], b[0]), self._pmul(a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError(f"division by zero in {self.spec}")
        return self._reduce(a[1], a[0])

    def frobenius_root(self, a, e: int):
        q = self.p**e
        K = self.base
        out = []
        for part in a:
            if any(c != K.zero for k, c in enumerate(part) if k % q):
                return None
            out.append(tuple(K.frobenius_root(c, e) for c in part[::q]))
        return tuple(out)

    def fmt(self, a) -> str:
        num, den = a
        text = self._pfmt(num)
        if den == (self.base.one,):
            return text
        return f"({text})/({self._pfmt(den)})"

    def _pfmt(self, a) -> str:
        K = self.base
        if not a:
            return "0"
        parts = []
        for k in range(len(a) - 1, -1, -1):
            c = a[k]
            if c == K.zero:
                continue
            ctext = K.fmt(c)
            if "+" in ctext:
                ctext = f"({ctext})"
            if k == 0:
                parts.append(ctext)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                parts.append(mono if c == K.one else f"{ctext}*{mono}")
        return "+".join(parts)

    def random(self, rng: random.Random):
        deg = rng.randint(0, 3)
        return self.from_poly([self.base.random(rng) for _ in range(deg + 1)])

    small_random = random


# ---------------------------------------------------------------------------
# specs

QQ = Rationals()

_SPEC_RE = [
    (re.compile(r"^(?:Q|QQ)$"), lambda m: QQ),
    (re.compile(r"^(?:Fp:|F|GF)(\d+)$"), lambda m: PrimeField(int(m.group(1)))),
    (re.compile(r"^Fq:(\d+)\^(\d+)$"), lambda m: _ext(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"^Fpt:(\d+)$"), lambda m: RationalFunctionField(PrimeField(int(m.group(1))))),
    (re.compile(r"^Fqt:(\d+)\^(\d+)$"), lambda m: RationalFunctionField(_ext(int(m.group(1)), int(m.group(2))))),
]


def _ext(p: int, e: int) -> Field:
    if e < 1:
        raise ValueError("extension degree must be at least 1")
    return ExtensionField.of_degree(p, e)


def parse_field(text: str) -> Field:
    """Parse ``Q``, ``Fp:<p>``, ``Fq:<p>^<e>`` or ``Fpt:<p>`` (``F<p>`` also accepted)."""
    s = text.strip()
    for rx, build in _SPEC_RE:
        m = rx.match(s)
        if m:
            try:
                return build(m)
            except ValueError as exc:
                raise ParseError(str(exc), None, None) from None
    raise ParseError(f"unknown field spec {text!r}", None, None)


# ---------------------------------------------------------------------------
# Scalar wrapper

class Scalar:
    """Immutable field element carrying its field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other) -> Any:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field.spec} vs {other.field.spec}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else Scalar(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else Scalar(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else Scalar(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else Scalar(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else Scalar(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else Scalar(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return Scalar(self.field, self.field.pow(self.value, k))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field.spec} vs {other.field.spec}")
            return self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.fmt(self.value)

    def __repr__(self):
        return f"Scalar({self.field.spec}, {self.field.fmt(self.value)})"


def pth_root(a: Scalar, e: int) -> Scalar:
    """The unique ``b`` with ``b^(p^e) = a`` in a finite field."""
    if e < 0:
        raise ValueError("e must be non-negative")
    if not isinstance(a.field, (PrimeField, ExtensionField)):
        raise UnsupportedFieldError(f"p-th roots need a perfect field of positive characteristic, got {a.field.spec}")
    return Scalar(a.field, a.field.frobenius_root(a.value, e))


def sample(field: Field, seed: int | random.Random) -> Scalar:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return Scalar(field, field.random(rng))
