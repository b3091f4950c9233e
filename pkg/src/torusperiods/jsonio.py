"""JSON renditions of exact values.

Field values are written as the exact coefficient map plus a decimal
interval, e.g. ``{"radicands": [2, 3], "coeffs": {"6": "1"},
"interval": ["2.449...", "2.449..."]}``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping, Sequence

from .exact_scalar import ComplexFieldElement, FieldContext, FieldElement


def scalar_to_json(x, digits: int = 30) -> Any:
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, FieldElement):
        out = x.to_json()
        out["interval"] = x.decimal_interval(digits)
        return out
    if isinstance(x, ComplexFieldElement):
        return {"re": scalar_to_json(x.re, digits), "im": scalar_to_json(x.im, digits)}
    raise TypeError(f"no JSON rendition for {type(x).__name__}")


def vector_to_json(v: Sequence, digits: int = 30) -> list:
    return [scalar_to_json(x, digits) for x in v]


def field_from_json(obj: Any, ctx: FieldContext) -> FieldElement:
    """Parse a field value: a coefficient-map object, an int, or a 'p/q' string."""
    if isinstance(obj, FieldElement):
        return obj
    if isinstance(obj, Mapping):
        if "coeffs" in obj:
            return FieldElement.from_json(obj, ctx)
        return ctx.element({int(k): Fraction(v) for k, v in obj.items()})
    if isinstance(obj, (int, str)):
        return ctx.rational(Fraction(obj))
    raise ValueError(f"cannot parse field value {obj!r}")


def complex_from_json(obj: Any, ctx: FieldContext) -> ComplexFieldElement:
    if isinstance(obj, Mapping) and ("re" in obj or "im" in obj):
        return ComplexFieldElement(field_from_json(obj.get("re", 0), ctx),
                                   field_from_json(obj.get("im", 0), ctx))
    return ComplexFieldElement(field_from_json(obj, ctx), ctx.zero())


def interval_strings(x, digits: int = 30) -> list[str]:
    if isinstance(x, FieldElement):
        return x.decimal_interval(digits)
    s = str(Fraction(x))
    return [s, s]
