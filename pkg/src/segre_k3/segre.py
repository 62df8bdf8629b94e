"""Closed formulas for Segre integrals on Hilbert schemes of K3 surfaces and
the exact linear systems that pin them down.

Notation: ``ell`` is half the degree, ``H.H = 2*ell``; ``alpha_i`` is the
integral of ``c_{n-i} * s_{n+i}`` of the tautological bundle over the
Hilbert scheme of ``n`` points.  On a K3 surface every such integral is a
polynomial in ``H.H`` alone, so the sign of ``H`` does not matter.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .arith import binom_int, binom_rat
from .linalg import RationalMatrix, det_exact, nullspace
from .poly import PolynomialInL

__all__ = [
    "DomainError",
    "segre_top",
    "alpha_top_poly",
    "alpha_next",
    "alpha_next_poly",
    "alpha_curve",
    "alpha_curve_poly",
    "alpha_vector",
    "recursion_matrix",
    "lehn_matrix",
    "lehn_matrix_literal",
    "det_exact",
    "nullspace",
    "reconstruct_alpha_top",
    "vanishing_window",
]


class DomainError(ValueError):
    pass


def segre_top(ell: int, n: int) -> int:
    """Top Segre integral ``2^n * binom(ell - 2n + 2, n)``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return 2**n * binom_int(ell - 2 * n + 2, n)


def vanishing_window(n: int) -> range:
    """Integers ``ell`` with ``2n-2 <= ell <= 3n-3``."""
    return range(2 * n - 2, 3 * n - 2)


def _binom_poly(shift: int, k: int) -> PolynomialInL:
    """``binom(ell + shift, k)`` as a polynomial in ``ell``."""
    l = PolynomialInL.l()
    p = PolynomialInL.constant(Fraction(1, factorial(k)))
    for j in range(k):
        p = p * (l + (shift - j))
    return p


def alpha_top_poly(n: int) -> PolynomialInL:
    if n < 0:
        raise DomainError("n must be non-negative")
    return _binom_poly(2 - 2 * n, n) * 2**n


def alpha_next(ell: int, n: int) -> Fraction:
    """``int c_1 s_{2n-1} = -2^n binom(ell-2n+2, n-1) (ell - (3n-3)/2)``; needs n >= 2."""
    if n < 2:
        raise DomainError("alpha_next is defined for n >= 2")
    return -(2**n) * binom_int(ell - 2 * n + 2, n - 1) * (ell - Fraction(3 * n - 3, 2))


def alpha_next_poly(n: int) -> PolynomialInL:
    if n < 2:
        raise DomainError("alpha_next is defined for n >= 2")
    l = PolynomialInL.l()
    return _binom_poly(2 - 2 * n, n - 1) * (l - Fraction(3 * n - 3, 2)) * (-(2**n))


def alpha_curve(ell, n: int) -> Fraction:
    """``int c_n s_n = (-4)^n binom(ell/2, n)``; the curve computation."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return (-4) ** n * binom_rat(Fraction(ell) / 2, n)


def alpha_curve_poly(n: int) -> PolynomialInL:
    if n < 0:
        raise DomainError("n must be non-negative")
    half_l = PolynomialInL([0, Fraction(1, 2)])
    p = PolynomialInL.constant(Fraction((-4) ** n, factorial(n)))
    for j in range(n):
        p = p * (half_l - j)
    return p


def alpha_vector(n: int) -> list[PolynomialInL] | None:
    """All of ``alpha_0..alpha_n`` in closed form, when known (n <= 2)."""
    if n == 0:
        return [PolynomialInL.constant(1)]
    if n == 1:
        return [alpha_curve_poly(1), alpha_top_poly(1)]
    if n == 2:
        return [alpha_curve_poly(2), alpha_next_poly(2), alpha_top_poly(2)]
    return None


def recursion_matrix(ell: int, n: int) -> RationalMatrix:
    """Coefficient matrix of the localization relations on ``alpha_0..alpha_n``.

    Row ``k-1`` (``k = 1..n``) holds ``binom(ell+2-i-2n, ell+2-i-2k)`` in
    column ``i``; the last row is all ones, from ``c * s = 1``.
    """
    if n < 1:
        raise DomainError("n must be positive")
    rows = [
        [binom_int(ell + 2 - i - 2 * n, ell + 2 - i - 2 * k) for i in range(n + 1)]
        for k in range(1, n + 1)
    ]
    rows.append([1] * (n + 1))
    return RationalMatrix(rows, n + 1)


def lehn_matrix_literal(n: int) -> RationalMatrix:
    """``a_ij = (-1)^(j+1) binom(2i-1, j)`` for ``0 <= i, j < n``, entry by entry."""
    if n < 1:
        raise DomainError("n must be positive")
    return RationalMatrix(
        [[(-1) ** (j + 1) * binom_int(2 * i - 1, j) for j in range(n)] for i in range(n)], n
    )


def lehn_matrix(n: int) -> RationalMatrix:
    """Coefficient matrix of the reduced system in ``beta_1..beta_n``.

    Row 0 is all ones (the sum relation); row ``k >= 1`` holds
    ``binom(-j, 2k-j)`` for ``j = 1..n``.  This is :func:`lehn_matrix_literal`
    with its first row negated, since ``binom(-1, j) = (-1)^j``.
    """
    if n < 1:
        raise DomainError("n must be positive")
    rows = [[1] * n]
    for k in range(1, n):
        rows.append([binom_int(-j, 2 * k - j) for j in range(1, n + 1)])
    return RationalMatrix(rows, n)


def reconstruct_alpha_top(n: int) -> PolynomialInL:
    """Rebuild ``alpha_n`` from its roots ``2n-2..3n-3`` and leading term ``2^n/n!``."""
    if n < 1:
        raise DomainError("n must be positive")
    return PolynomialInL.from_roots(vanishing_window(n), Fraction(2**n, factorial(n)))
