"""Exact cost arithmetic.

Finite costs are `fractions.Fraction` (ints are accepted and stay ints in
hot loops); the only non-rational value ever used is `INF`, which absorbs
addition and dominates comparison exactly as IEEE infinity does.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import InputError

Cost = Union[int, Fraction, float]

INF: float = float("inf")


def is_finite(c: Cost) -> bool:
    return c != INF


def parse_cost(value) -> Fraction:
    """Convert an int, a decimal string such as "2.5", or a fraction string
    such as "5/2" to an exact rational.  Floats are rejected: binary floats
    do not round-trip exactly."""
    if isinstance(value, bool):
        raise InputError(f"not a cost: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a cost: {value!r}") from exc
    raise InputError(f"not a cost: {value!r} (floats are not accepted)")


def cost_to_json(c: Cost):
    """Render a cost for JSON output: ints as ints, other rationals as
    "p/q" strings, infinity as "inf"."""
    if c == INF:
        return "inf"
    f = Fraction(c)
    if f.denominator == 1:
        return int(f)
    return f"{f.numerator}/{f.denominator}"
