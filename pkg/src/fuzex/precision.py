"""High-precision helpers for the parameter formulas.

Probabilities in this package can be as small as 2^-128, so the formulas
are evaluated with mpmath at 256 bits of precision. Base-2 logarithms of
exact powers of two are returned exactly so that floors never slip.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

PRECISION_BITS = 256

_ctx = mpmath.mp.clone()
_ctx.prec = PRECISION_BITS


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(str(x))


def to_mpf(x):
    if isinstance(x, Fraction):
        return _ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, str) and "/" in x:
        return to_mpf(Fraction(x))
    return _ctx.mpf(x)


def _power_of_two_exponent(q: Fraction) -> int | None:
    num, den = q.numerator, q.denominator
    if num <= 0:
        return None
    if num & (num - 1) == 0 and den & (den - 1) == 0:
        return num.bit_length() - den.bit_length()
    return None


def log2_exact(x):
    """``log2(x)`` as an mpf; exact when ``x`` is a power of two."""
    q = to_fraction(x)
    if q <= 0:
        raise ValueError("log2 of a non-positive number")
    e = _power_of_two_exponent(q)
    if e is not None:
        return _ctx.mpf(e)
    return _ctx.log(to_mpf(q), 2)


def floor_exact(value) -> int:
    return int(_ctx.floor(value))


def ceil_exact(value) -> int:
    return int(_ctx.ceil(value))


def mp():
    """The shared high-precision context."""
    return _ctx
