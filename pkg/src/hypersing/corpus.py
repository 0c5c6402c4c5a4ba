"""Built-in corpus of hypersurfaces with known slopes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .mpoly import Frame, Poly
from .parse import parse_poly
from .scalars import Field, parse_field
from .values import Exact, Infinite, NuValue


@dataclass(frozen=True)
class CorpusItem:
    name: str
    field: str
    frame: str  # "u-names|y-names" in a frame where the directrix is the y-block
    poly: str
    extremal: bool
    slope: NuValue  # Samuel slope for extremal items, refined slope otherwise
    squarefree: bool = True

    def build(self, N: int | None = None) -> tuple[Poly, Frame, Field]:
        fld = parse_field(self.field)
        frame = Frame.parse(self.frame) if N is None else Frame.parse(self.frame, N)
        return parse_poly(self.poly, frame.names, fld), frame, fld


CORPUS: tuple[CorpusItem, ...] = (
    CorpusItem("intro-char2", "Fp:2", "y|x", "x^2+y^4+y^5", True, Exact(Fraction(5, 2))),
    CorpusItem("intro-char0", "Q", "y|x", "x^2+y^4+y^5", True, Exact(2)),
    CorpusItem("intro-F4", "Fq:2^2", "y|x", "x^2+w*y^4+y^5", True, Exact(Fraction(5, 2))),
    CorpusItem("cusp", "Q", "u|z", "z^2-u^3", True, Exact(Fraction(3, 2))),
    CorpusItem("e6", "Q", "u|z", "z^3+3*z*u^5+u^7", True, Exact(Fraction(7, 3))),
    CorpusItem("square-shift", "Q", "u|z", "(z+u^2)^2+u^5", True, Exact(Fraction(5, 2))),
    CorpusItem("contact-z2", "Q", "u|z", "z^2+2*u^2*z+u^5", True, Exact(2)),
    CorpusItem("two-steps-F2", "Fp:2", "u1,u2|y", "(y+u1*u2+u1^2)^2+u1^7", True, Exact(Fraction(7, 2))),
    CorpusItem("cube-F3", "Fp:3", "u1,u2|y", "y^3+u1^4+u2^5", True, Exact(Fraction(4, 3))),
    CorpusItem("quartic-F3", "Fp:3", "u|y", "y^4+u^7*y+u^9", True, Exact(Fraction(9, 4))),
    CorpusItem("sextic-F5", "Fp:5", "u1,u2|y", "y^3+u1^2*u2^2*y+u1^5+u2^7", True, Exact(Fraction(5, 3))),
    CorpusItem("section8", "Q", "u|y1,y2,y3", "y1^4+y1^2*(y2+u^2)^2+y3^4+y3*u^7+u^12", False,
               Exact(Fraction(7, 3))),
    CorpusItem("section8-z", "Q", "u|z1,z2,z3", "z1^4+z1^2*z2^2+z3^4+z3*u^7+u^12", False,
               Exact(Fraction(7, 3))),
    CorpusItem("sum-of-squares", "Q", "u|y1,y2", "y1^2+y2^2+u^6", False, Exact(3)),
    CorpusItem("node-F2", "Fp:2", "u|y1,y2", "y1*y2+u^3*y1+u^5", False, Exact(Fraction(5, 2))),
    CorpusItem("conic-F2", "Fp:2", "u|y1,y2", "y1^2+y1*y2+y2^2+u^4", False, Exact(2)),
    CorpusItem("node-F3", "Fp:3", "u1,u2|y1,y2", "y1*y2+(y1-u1^2)*u2^3+u1^5", False, Exact(Fraction(5, 2))),
    CorpusItem("power-cube", "Q", "u|y", "(y-u^2)^3", True, Infinite, squarefree=False),
    CorpusItem("power-F3", "Fp:3", "u|y", "(y+u^3)^2", True, Infinite, squarefree=False),
    CorpusItem("power-F2", "Fp:2", "y|x", "(x+y^2+y^3)^2", True, Infinite, squarefree=False),
    CorpusItem("power-quartic-F2", "Fp:2", "u1,u2|y", "(y+u1*u2)^4", True, Infinite, squarefree=False),
)


def by_name(name: str) -> CorpusItem:
    for item in CORPUS:
        if item.name == name:
            return item
    raise KeyError(name)
