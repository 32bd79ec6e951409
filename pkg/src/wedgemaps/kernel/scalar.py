"""Exact scalars: Python ints, and Fractions only when a value is not integral."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction]


def exact(x) -> Scalar:
    """Coerce ``x`` to an exact scalar, demoting integral Fractions to int.

    Floats are rejected: nothing in this package rounds.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return exact(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return exact(Fraction(x.strip()))
    raise TypeError(f"not an exact rational: {x!r}")


def div(a: Scalar, b: Scalar) -> Scalar:
    if b == 0:
        raise ZeroDivisionError("exact division by zero")
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return exact(Fraction(a) / b)
