"""Exact rational helpers for threshold comparisons involving log2."""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from numbers import Rational

_FAST_MARGIN = 1e-9


def as_fraction(x) -> Fraction:
    """Exact value of ``x``; floats are read through their shortest decimal repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"not a finite number: {x}")
        return Fraction(repr(x))
    if isinstance(x, (str, Decimal)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def cmp_log2(x, n: int) -> int:
    """Sign of ``x - log2(n)`` for rational ``x`` and integer ``n >= 1``."""
    if n < 1:
        raise ValueError("log2 needs n >= 1")
    x = as_fraction(x)
    diff = float(x) - math.log2(n)
    if abs(diff) > _FAST_MARGIN:
        return 1 if diff > 0 else -1
    p, q = x.numerator, x.denominator
    if p < 0:
        return -1
    lhs, rhs = 1 << p, n ** q
    return (lhs > rhs) - (lhs < rhs)


def lt_two_log2(a: int, n: int) -> bool:
    """``a < 2*log2(n)`` for integers, decided as ``2**a < n**2``."""
    if a < 0:
        return True
    return (1 << a) < n * n
