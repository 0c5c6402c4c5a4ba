"""Certified values: ``Exact(q)``, ``AtLeast(q)`` or ``Infinite``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

EXACT = "Exact"
AT_LEAST = "AtLeast"
INFINITE = "Infinite"


@dataclass(frozen=True)
class NuValue:
    kind: str
    value: Fraction | None = None
    certified: int | None = None  # degree behind an AtLeast bound

    def __post_init__(self):
        if self.kind not in (EXACT, AT_LEAST, INFINITE):
            raise ValueError(f"bad kind {self.kind}")
        if (self.kind == INFINITE) != (self.value is None):
            raise ValueError("Infinite carries no value; other kinds need one")
        if self.value is not None:
            object.__setattr__(self, "value", Fraction(self.value))

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT

    @property
    def is_infinite(self) -> bool:
        return self.kind == INFINITE

    def scaled(self, k) -> "NuValue":
        """Multiply the value by a positive rational ``k``."""
        if self.value is None:
            return self
        return NuValue(self.kind, self.value * Fraction(k), self.certified)

    def lower(self):
        """A lower bound usable in comparisons (``inf`` for Infinite)."""
        return float("inf") if self.value is None else self.value

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.value is not None:
            out["num"] = self.value.numerator
            out["den"] = self.value.denominator
        if self.certified is not None:
            out["certified_degree"] = self.certified
        return out

    @classmethod
    def from_json(cls, d: dict) -> "NuValue":
        if d["kind"] == INFINITE:
            return cls(INFINITE)
        return cls(d["kind"], Fraction(d["num"], d["den"]), d.get("certified_degree"))

    def __str__(self) -> str:
        if self.kind == INFINITE:
            return "Infinite"
        if self.kind == EXACT:
            return f"Exact({self.value})"
        return f"AtLeast({self.value})"


def Exact(q) -> NuValue:
    return NuValue(EXACT, Fraction(q))


def AtLeast(q, certified: int | None = None) -> NuValue:
    return NuValue(AT_LEAST, Fraction(q), certified)


Infinite = NuValue(INFINITE)


def nu_min(values: Iterable[NuValue]) -> NuValue:
    """Minimum of certified values.

    An exact value wins only when it does not exceed every lower bound;
    otherwise the answer is the smallest lower bound.
    """
    values = list(values)
    exact = [v.value for v in values if v.kind == EXACT]
    bounds = [v for v in values if v.kind == AT_LEAST]
    best_exact = min(exact) if exact else None
    if bounds:
        b = min(bounds, key=lambda v: v.value)
        if best_exact is not None and best_exact <= b.value:
            return Exact(best_exact)
        return b
    if best_exact is not None:
        return Exact(best_exact)
    return Infinite
