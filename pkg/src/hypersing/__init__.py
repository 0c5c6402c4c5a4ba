"""Exact computation of the Samuel slope of hypersurface singularities."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    ConsistencyError,
    FieldMismatchError,
    HypersingError,
    InvalidCutError,
    NeedsFieldExtensionError,
    NotAUnitError,
    ParseError,
    PreconditionError,
    Refusal,
    UnsupportedFieldError,
)
from .mpoly import Frame, Poly, TruncSeries
from .parse import parse_poly
from .scalars import Scalar, parse_field
from .values import AtLeast, Exact, Infinite, NuValue

__all__ = [
    "AtLeast",
    "ConsistencyError",
    "Exact",
    "FieldMismatchError",
    "Frame",
    "HypersingError",
    "Infinite",
    "InvalidCutError",
    "NeedsFieldExtensionError",
    "NotAUnitError",
    "NuValue",
    "ParseError",
    "Poly",
    "PreconditionError",
    "Refusal",
    "Scalar",
    "TruncSeries",
    "UnsupportedFieldError",
    "parse_field",
    "parse_poly",
]
