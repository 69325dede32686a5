"""Conversions between exact scalars, Python numbers and mpmath."""

from __future__ import annotations

import numbers
from fractions import Fraction

import mpmath

from .measure_core import MeasureParam


def to_mp(x):
    """Convert a scalar to mpf/mpc at the current mpmath precision."""
    if isinstance(x, MeasureParam):
        x = x.value
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return +x
    if isinstance(x, bool):
        raise TypeError("expected a number")
    if isinstance(x, numbers.Rational):
        return mpmath.mpf(int(x.numerator)) / int(x.denominator)
    if isinstance(x, float):
        return mpmath.mpf(x)
    if isinstance(x, complex):
        return mpmath.mpc(x)
    # Gaussian rationals from sympy expose .x / .y as rationals.
    if hasattr(x, "x") and hasattr(x, "y"):
        re, im = to_mp(Fraction(str(x.x))), to_mp(Fraction(str(x.y)))
        return mpmath.mpc(re, im)
    return mpmath.mpmathify(x)


def to_py(x) -> complex:
    return complex(x)
