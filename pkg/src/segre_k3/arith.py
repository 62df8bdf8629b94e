"""Exact rational scalars and extended binomial coefficients.

``fractions.Fraction`` is the scalar type throughout the package: it is
always kept in lowest terms with a positive denominator, and ``str()``
already produces the ``"p/q"`` (or ``"p"``) wire format.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

Rational = Fraction

__all__ = ["Rational", "binom_int", "binom_rat", "fmt", "parse_rational", "as_rational"]


def binom_int(a: int, b: int) -> int:
    """Binomial coefficient extended to all integer pairs.

    ``binom_int(0, 0) == 1``; zero when ``b < 0`` or ``0 <= a < b``; the
    falling-factorial product ``a(a-1)...(a-b+1)/b!`` when ``a < 0 <= b``.
    """
    if b < 0:
        return 0
    if a >= 0:
        return comb(a, b)
    # a < 0: (-1)^b * C(-a+b-1, b)
    return (-1) ** b * comb(-a + b - 1, b)


def binom_rat(q: Fraction | int, b: int) -> Fraction:
    """``q(q-1)...(q-b+1)/b!`` for ``b >= 0`` and 0 for ``b < 0``."""
    if b < 0:
        return Fraction(0)
    q = Fraction(q)
    num = Fraction(1)
    for j in range(b):
        num *= q - j
    return num / factorial(b)


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)


def fmt(q: Fraction | int) -> str:
    return str(Fraction(q))


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Decimal and exponent notations are rejected."""
    s = text.strip()
    if not s or any(c in s for c in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)
