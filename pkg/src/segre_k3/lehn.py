"""Lehn's generating series for top Segre integrals and its K-trivial closed forms.

Series variables: ``z`` is the generating variable of the Segre integrals,
``w`` is Lehn's substitution variable, ``t`` parametrises ``z = t(1+t)^2/2``,
and ``x = 2z``, ``y = 2(w - w^2)`` are the rescaled pair in which the
binomial identity ``sum x^n binom(l-2n+2, n) = (1-2y)^(l+3) / (1-3y)^(l+2)``
is stated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .arith import as_rational, binom_int, binom_rat
from .segre import DomainError, segre_top
from .series import TruncatedSeries, compose, exp_series, log_series, pow_rat, revert

__all__ = [
    "NotKTrivial",
    "SurfaceInvariants",
    "LehnConstants",
    "IdentityReport",
    "k3",
    "abelian",
    "bielliptic",
    "enriques",
    "elliptic",
    "lehn_constants",
    "z_of_w",
    "w_of_z",
    "x_of_y",
    "y_of_x",
    "y_of_w",
    "t_of_z",
    "x_from_z",
    "lehn_series",
    "lehn_series_in_w",
    "a1_series",
    "a4_series",
    "ktrivial_series",
    "segre_series",
    "abelian_closed",
    "enriques_check",
    "elliptic_base",
    "elliptic_series",
    "ident_lhs",
    "ident_rhs",
    "ident_check",
    "pascal_check",
    "compare_series",
    "chern_segre_leading",
    "bivariate_coeff",
]


class NotKTrivial(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceInvariants:
    """Intersection numbers of a polarised surface ``(S, H)``."""

    K2: int
    HK: int
    H2: int
    chiO: int
    name: str = field(default="surface", compare=False)

    @property
    def c2(self) -> int:
        # Noether's formula
        return 12 * self.chiO - self.K2

    @property
    def k_trivial(self) -> bool:
        """True when ``K.K = H.K = 0``, so only ``A_1`` and ``A_4`` enter."""
        return self.K2 == 0 and self.HK == 0


@dataclass(frozen=True)
class LehnConstants:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))


def k3(ell: int) -> SurfaceInvariants:
    return SurfaceInvariants(0, 0, 2 * ell, 2, "k3")


def abelian(ell: int) -> SurfaceInvariants:
    return SurfaceInvariants(0, 0, 2 * ell, 0, "abelian")


def bielliptic(ell: int) -> SurfaceInvariants:
    return SurfaceInvariants(0, 0, 2 * ell, 0, "bielliptic")


def enriques(ell: int) -> SurfaceInvariants:
    # the 2-torsion canonical class is numerically trivial
    return SurfaceInvariants(0, 0, 2 * ell, 1, "enriques")


def elliptic(chi: int) -> SurfaceInvariants:
    """Minimal elliptic surface polarised by a multiple of the fibre class."""
    return SurfaceInvariants(0, 0, 0, chi, "elliptic")


def lehn_constants(s: SurfaceInvariants) -> LehnConstants:
    a = s.HK - 2 * s.K2
    b = s.H2 - 2 * s.HK + s.K2 + 3 * s.chiO
    c = Fraction(s.H2 - s.HK, 2) + s.chiO
    return LehnConstants(a, b, c)


# -- substitutions ---------------------------------------------------------


def _w(order: int) -> TruncatedSeries:
    return TruncatedSeries.var(order)


def z_of_w(order: int) -> TruncatedSeries:
    """``z = w(1-w)(1-2w)^4 / (1-6w+6w^2)^3``."""
    w = _w(order)
    return w * (1 - w) * (1 - 2 * w) ** 4 / (1 - 6 * w + 6 * w * w) ** 3


@lru_cache(maxsize=None)
def w_of_z(order: int) -> TruncatedSeries:
    return revert(z_of_w(order))


def x_of_y(order: int) -> TruncatedSeries:
    """``x = y(1-2y)^2 / (1-3y)^3``."""
    y = _w(order)
    return y * (1 - 2 * y) ** 2 / (1 - 3 * y) ** 3


@lru_cache(maxsize=None)
def y_of_x(order: int) -> TruncatedSeries:
    return revert(x_of_y(order))


def y_of_w(order: int) -> TruncatedSeries:
    """``y = 2(w - w^2)``."""
    w = _w(order)
    return 2 * (w - w * w)


def x_from_z(f: TruncatedSeries) -> TruncatedSeries:
    """Rewrite a series in ``z`` as a series in ``x = 2z``."""
    return f.rescale(Fraction(1, 2))


def z_from_x(f: TruncatedSeries) -> TruncatedSeries:
    """Rewrite a series in ``x`` as a series in ``z`` (``x = 2z``)."""
    return f.rescale(2)


@lru_cache(maxsize=None)
def t_of_z(order: int) -> TruncatedSeries:
    """Inverse of ``z = t(1+t)^2 / 2``."""
    t = _w(order)
    return revert(t * (1 + t) ** 2 / 2)


# -- Lehn's series -----------------------------------------------------------


def lehn_series_in_w(k: LehnConstants, order: int) -> TruncatedSeries:
    """``(1-w)^a (1-2w)^b / (1-6w+6w^2)^c`` as a series in ``w``."""
    w = _w(order)
    return (
        pow_rat(1 - w, k.a)
        * pow_rat(1 - 2 * w, k.b)
        * pow_rat(1 - 6 * w + 6 * w * w, -k.c)
    )


def lehn_series(k: LehnConstants, order: int) -> TruncatedSeries:
    """Lehn's conjectured generating series ``sum_n N_n z^n``."""
    if order < 1:
        raise ValueError("order must be positive")
    return compose(lehn_series_in_w(k, order), w_of_z(order))


@lru_cache(maxsize=None)
def a1_series(order: int) -> TruncatedSeries:
    """``A_1(z)`` with ``A_1(t(1+t)^2/2) = log(1+t)/2``."""
    t = _w(order)
    return compose(log_series(1 + t) / 2, t_of_z(order))


@lru_cache(maxsize=None)
def a4_series(order: int) -> TruncatedSeries:
    """``A_4(z)`` with ``A_4(t(1+t)^2/2) = log(1+t)/8 - log(1+3t)/24``."""
    t = _w(order)
    inner = log_series(1 + t) / 8 - log_series(1 + 3 * t) / 24
    return compose(inner, t_of_z(order))


def ktrivial_series(s: SurfaceInvariants, order: int) -> TruncatedSeries:
    """``exp(H^2 A_1 + c_2 A_4)``, the generating series when ``K.K = H.K = 0``."""
    if not s.k_trivial:
        raise NotKTrivial(f"K.K = {s.K2}, H.K = {s.HK}; A_2 and A_3 are not known")
    return exp_series(a1_series(order) * s.H2 + a4_series(order) * s.c2)


def segre_series(ell: int, order: int) -> TruncatedSeries:
    """``sum_n 2^n binom(ell-2n+2, n) z^n`` for a K3 surface of degree ``2 ell``."""
    return TruncatedSeries([segre_top(ell, n) for n in range(order)], order)


def abelian_closed(ell: int, order: int) -> TruncatedSeries:
    """``1 + sum_{n>=1} 2^n (ell/n) binom(ell-2n-1, n-1) z^n``."""
    coeffs = [Fraction(1)]
    for n in range(1, order):
        coeffs.append(2**n * Fraction(ell, n) * binom_rat(ell - 2 * n - 1, n - 1))
    return TruncatedSeries(coeffs, order)


def elliptic_base(order: int) -> TruncatedSeries:
    """``sum_n x^n binom(2-2n, n)`` in the variable ``x``."""
    return TruncatedSeries([binom_int(2 - 2 * n, n) for n in range(order)], order)


def elliptic_series(chi: int, order: int) -> TruncatedSeries:
    """Segre generating series in ``z`` of an elliptic surface with ``H = m f``."""
    if chi < 0:
        raise DomainError("chi(O) must be non-negative")
    return z_from_x(pow_rat(elliptic_base(order), Fraction(chi, 2)))


# -- reports -----------------------------------------------------------------


@dataclass
class IdentityReport:
    identity: str
    parameters: dict
    order: int
    match: bool
    first_mismatch: int | None = None
    left: Fraction | None = None
    right: Fraction | None = None

    def __bool__(self) -> bool:
        return self.match

    def to_json_obj(self) -> dict:
        return {
            "identity": self.identity,
            "parameters": {k: str(v) if isinstance(v, Fraction) else v for k, v in self.parameters.items()},
            "order": self.order,
            "match": self.match,
            "first_mismatch": self.first_mismatch,
            "left": None if self.left is None else str(self.left),
            "right": None if self.right is None else str(self.right),
        }


def compare_series(name: str, params: dict, lhs: TruncatedSeries, rhs: TruncatedSeries) -> IdentityReport:
    order = min(lhs.order, rhs.order)
    for n in range(order):
        if lhs[n] != rhs[n]:
            return IdentityReport(name, params, order, False, n, lhs[n], rhs[n])
    return IdentityReport(name, params, order, True)


def enriques_check(ell: int, order: int) -> IdentityReport:
    """Square of the Enriques series against the K3 series of degree ``4 ell``."""
    lhs = ktrivial_series(enriques(ell), order)
    rhs = TruncatedSeries([2**n * binom_int(2 * ell - 2 * n + 2, n) for n in range(order)], order)
    return compare_series("enriques", {"ell": ell}, lhs * lhs, rhs)


def ident_lhs(ell, order: int) -> TruncatedSeries:
    """``f_ell(x) = sum_n x^n binom(ell-2n+2, n)``; rational ``ell`` allowed."""
    if isinstance(ell, int):
        return TruncatedSeries([binom_int(ell - 2 * n + 2, n) for n in range(order)], order)
    ell = as_rational(ell)
    return TruncatedSeries([binom_rat(ell - 2 * n + 2, n) for n in range(order)], order)


def ident_rhs(ell, order: int) -> TruncatedSeries:
    """``(1-2y)^(ell+3) / (1-3y)^(ell+2)`` at ``y = y(x)``."""
    ell = as_rational(ell)
    y = _w(order)
    in_y = pow_rat(1 - 2 * y, ell + 3) * pow_rat(1 - 3 * y, -(ell + 2))
    return compose(in_y, y_of_x(order))


def ident_check(ell, order: int) -> IdentityReport:
    return compare_series("ident", {"ell": ell}, ident_lhs(ell, order), ident_rhs(ell, order))


def pascal_check(ell: int, order: int) -> IdentityReport:
    """``f_{ell+1} = f_ell + x f_{ell-2}``."""
    lhs = ident_lhs(ell + 1, order)
    rhs = ident_lhs(ell, order) + ident_lhs(ell - 2, order).shift(1)
    return compare_series("pascal", {"ell": ell}, lhs, rhs)


# -- two-term asymptotics of the Chern-Segre integrals ------------------------

Bivariate = dict  # {(i, j): Fraction} for the monomial x^i y^j


def _bmul(p: Bivariate, q: Bivariate) -> Bivariate:
    out: Bivariate = {}
    for (i, j), a in p.items():
        for (k, m), b in q.items():
            key = (i + k, j + m)
            out[key] = out.get(key, Fraction(0)) + a * b
    return {k: v for k, v in out.items() if v}


def _bpow(p: Bivariate, e: int) -> Bivariate:
    out: Bivariate = {(0, 0): Fraction(1)}
    for _ in range(e):
        out = _bmul(out, p)
    return out


def bivariate_coeff(p: Bivariate, i: int, j: int) -> Fraction:
    return p.get((i, j), Fraction(0))


def chern_segre_leading(n: int) -> tuple[Bivariate, Bivariate]:
    """Coefficients of ``(2l)^n`` and ``(2l)^(n-1)`` in ``int c_x(H^[n]) s_y(H^[n])``.

    Returns ``y^n (y-x)^n / n!`` and ``y^n (y-x)^(n-1) (2x-5y) / (n-2)!`` as
    dictionaries keyed by the exponent pair ``(i, j)`` of ``x^i y^j``.
    """
    if n < 2:
        raise DomainError("chern_segre_leading needs n >= 2")
    yn = {(0, n): Fraction(1)}
    y_minus_x = {(0, 1): Fraction(1), (1, 0): Fraction(-1)}
    lead = _bmul(yn, _bpow(y_minus_x, n))
    lead = {k: v / factorial(n) for k, v in lead.items()}
    sub = _bmul(_bmul(yn, _bpow(y_minus_x, n - 1)), {(1, 0): Fraction(2), (0, 1): Fraction(-5)})
    sub = {k: v / factorial(n - 2) for k, v in sub.items()}
    return lead, sub
