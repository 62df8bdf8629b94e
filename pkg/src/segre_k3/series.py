"""Truncated formal power series over the rationals.

A :class:`TruncatedSeries` of order ``N`` stands for a power series known
modulo ``x**N``.  Binary operations between series of different orders
truncate to the smaller order.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import as_rational, binom_rat, parse_rational

__all__ = [
    "SeriesError",
    "ZeroConstantTerm",
    "NonUnitConstantTerm",
    "BadConstantTerm",
    "NonzeroInnerConstant",
    "NotInvertible",
    "TruncatedSeries",
    "mul",
    "inverse",
    "pow_rat",
    "exp_series",
    "log_series",
    "compose",
    "revert",
    "revert_lagrange",
]


class SeriesError(ValueError):
    pass


class ZeroConstantTerm(SeriesError):
    pass


class NonUnitConstantTerm(SeriesError):
    pass


class BadConstantTerm(SeriesError):
    pass


class NonzeroInnerConstant(SeriesError):
    pass


class NotInvertible(SeriesError):
    pass


class TruncatedSeries:
    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable, order: int | None = None):
        c = [as_rational(v) for v in coefficients]
        if order is None:
            order = len(c)
        if order < 1:
            raise ValueError("order must be positive")
        if len(c) < order:
            c.extend([Fraction(0)] * (order - len(c)))
        self._c = tuple(c[:order])

    # construction helpers

    @classmethod
    def _raw(cls, coeffs: list[Fraction]) -> TruncatedSeries:
        s = object.__new__(cls)
        s._c = tuple(coeffs)
        return s

    @classmethod
    def constant(cls, value, order: int) -> TruncatedSeries:
        return cls([value], order)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls([1], order)

    @classmethod
    def var(cls, order: int) -> TruncatedSeries:
        """The series ``x`` itself."""
        return cls([0, 1], order)

    @classmethod
    def from_polynomial(cls, coeffs: Sequence, order: int) -> TruncatedSeries:
        return cls(list(coeffs)[:order], order)

    # basic protocol

    @property
    def order(self) -> int:
        return len(self._c)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._c

    def __getitem__(self, n: int) -> Fraction:
        return self._c[n]

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        terms = []
        for n, a in enumerate(self._c):
            if a == 0:
                continue
            if n == 0:
                terms.append(str(a))
            elif n == 1:
                terms.append(f"({a})*x")
            else:
                terms.append(f"({a})*x^{n}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(x^{self.order})"

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries._raw(list(self._c[:order]))

    def valuation(self) -> int | None:
        for n, a in enumerate(self._c):
            if a != 0:
                return n
        return None

    # ring operations

    def _coerce(self, other) -> TruncatedSeries | None:
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.constant(other, self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return TruncatedSeries._raw([self._c[i] + o._c[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw([-a for a in self._c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, TruncatedSeries):
            return mul(self, inverse(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return inverse(self).scale(other)
        return NotImplemented

    def __pow__(self, q):
        if isinstance(q, int) and q >= 0:
            result, base = TruncatedSeries.one(self.order), self
            while q:
                if q & 1:
                    result = result * base
                base = base * base
                q >>= 1
            return result
        return pow_rat(self, q)

    def scale(self, c) -> TruncatedSeries:
        c = as_rational(c)
        return TruncatedSeries._raw([c * a for a in self._c])

    def rescale(self, c) -> TruncatedSeries:
        """``f(c*x)``: the n-th coefficient is multiplied by ``c**n``."""
        c = as_rational(c)
        out, p = [], Fraction(1)
        for a in self._c:
            out.append(a * p)
            p *= c
        return TruncatedSeries._raw(out)

    def shift(self, k: int) -> TruncatedSeries:
        """Multiply by ``x**k`` keeping the order."""
        if k < 0:
            raise ValueError("negative shift")
        c = [Fraction(0)] * k + list(self._c)
        return TruncatedSeries._raw(c[: self.order])

    def derivative(self) -> TruncatedSeries:
        """Formal derivative; the order drops by one."""
        if self.order == 1:
            return TruncatedSeries._raw([Fraction(0)])
        return TruncatedSeries._raw([n * self._c[n] for n in range(1, self.order)])

    def integral(self, constant=0) -> TruncatedSeries:
        """Formal antiderivative; the order rises by one."""
        return TruncatedSeries._raw(
            [as_rational(constant)] + [a / (n + 1) for n, a in enumerate(self._c)]
        )

    # function-style aliases

    def inverse(self) -> TruncatedSeries:
        return inverse(self)

    def exp(self) -> TruncatedSeries:
        return exp_series(self)

    def log(self) -> TruncatedSeries:
        return log_series(self)

    def compose(self, inner: TruncatedSeries) -> TruncatedSeries:
        return compose(self, inner)

    def revert(self) -> TruncatedSeries:
        return revert(self)

    # serialisation

    def to_json_obj(self) -> dict:
        return {"coefficients": [str(a) for a in self._c], "order": self.order}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> TruncatedSeries:
        coeffs = [parse_rational(s) for s in obj["coefficients"]]
        order = int(obj["order"])
        if len(coeffs) != order:
            raise ValueError("coefficient count does not match order")
        return cls(coeffs, order)

    @classmethod
    def from_json(cls, text: str) -> TruncatedSeries:
        return cls.from_json_obj(json.loads(text))


def mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    n = min(f.order, g.order)
    a, b = f.coefficients, g.coefficients
    # skip the zero head of each factor; compositions are full of them
    va = next((i for i in range(n) if a[i]), n)
    vb = next((i for i in range(n) if b[i]), n)
    out = [Fraction(0)] * n
    for i in range(va, n - vb):
        ai = a[i]
        if not ai:
            continue
        for j in range(vb, n - i):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return TruncatedSeries._raw(out)


def inverse(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse; requires a nonzero constant term."""
    a = f.coefficients
    if a[0] == 0:
        raise ZeroConstantTerm("series with zero constant term has no inverse")
    n = f.order
    inv0 = 1 / a[0]
    g = [inv0]
    for k in range(1, n):
        s = sum((a[j] * g[k - j] for j in range(1, k + 1) if a[j]), Fraction(0))
        g.append(-s * inv0)
    return TruncatedSeries._raw(g)


def pow_rat(f: TruncatedSeries, q) -> TruncatedSeries:
    """``f**q`` for rational ``q``; ``f`` must have constant term 1.

    Uses the recurrence obtained from ``f * (f**q)' = q * f' * f**q``.
    """
    q = as_rational(q)
    a = f.coefficients
    if a[0] != 1:
        raise NonUnitConstantTerm(f"constant term must be 1, got {a[0]}")
    n = f.order
    g = [Fraction(1)]
    for m in range(1, n):
        s = Fraction(0)
        for k in range(1, m + 1):
            if a[k]:
                s += (q * k - (m - k)) * a[k] * g[m - k]
        g.append(s / m)
    return TruncatedSeries._raw(g)


def pow_binomial(f: TruncatedSeries, q) -> TruncatedSeries:
    """``f**q`` as the binomial sum of ``binom(q, k) * (f - 1)**k``.

    Slower than :func:`pow_rat`; kept as an independent cross-check.
    """
    q = as_rational(q)
    if f[0] != 1:
        raise NonUnitConstantTerm(f"constant term must be 1, got {f[0]}")
    h = f - 1
    total = TruncatedSeries.one(f.order)
    power = TruncatedSeries.one(f.order)
    for k in range(1, f.order):
        power = power * h
        total = total + power.scale(binom_rat(q, k))
    return total


def exp_series(f: TruncatedSeries) -> TruncatedSeries:
    a = f.coefficients
    if a[0] != 0:
        raise BadConstantTerm("exp needs a zero constant term")
    n = f.order
    g = [Fraction(1)]
    for m in range(1, n):
        s = sum((k * a[k] * g[m - k] for k in range(1, m + 1) if a[k]), Fraction(0))
        g.append(s / m)
    return TruncatedSeries._raw(g)


def log_series(f: TruncatedSeries) -> TruncatedSeries:
    if f[0] != 1:
        raise BadConstantTerm("log needs constant term 1")
    if f.order == 1:
        return TruncatedSeries._raw([Fraction(0)])
    return (f.derivative() * inverse(f.truncate(f.order - 1))).integral()


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """``f(g(x))`` by Horner's rule; ``g`` must have zero constant term."""
    if g[0] != 0:
        raise NonzeroInnerConstant("inner series must have zero constant term")
    n = min(f.order, g.order)
    g = g.truncate(n)
    acc = TruncatedSeries.constant(f[n - 1], n)
    for k in range(n - 2, -1, -1):
        acc = acc * g
        acc = TruncatedSeries._raw([acc[0] + f[k]] + list(acc.coefficients[1:]))
    return acc


def _check_revertible(f: TruncatedSeries) -> None:
    if f[0] != 0:
        raise NotInvertible("reversion needs a zero constant term")
    if f.order < 2 or f[1] == 0:
        raise NotInvertible("reversion needs a nonzero linear coefficient")


def revert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse ``g`` with ``f(g(x)) = x`` modulo ``x**order``.

    Newton iteration ``g <- g - (f(g) - x) / f'(g)``, doubling the precision
    each step.
    """
    _check_revertible(f)
    n = f.order
    df = f.derivative()
    g = TruncatedSeries._raw([Fraction(0), 1 / f[1]])
    prec = 2
    while prec < n:
        prec = min(2 * prec, n)
        gp = _fit(g, prec)
        residual = compose(f.truncate(prec), gp) - TruncatedSeries.var(prec)
        slope = compose(_fit(df, prec), gp)
        g = gp - residual * inverse(slope)
    return g


def _fit(f: TruncatedSeries, order: int) -> TruncatedSeries:
    # zero-padding is safe here: the missing top coefficient of f' only
    # meets the residual, whose valuation pushes it past the order
    if f.order >= order:
        return f.truncate(order)
    return TruncatedSeries._raw(list(f.coefficients) + [Fraction(0)] * (order - f.order))


def revert_lagrange(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse from the Lagrange inversion formula.

    ``[x^n] g = (1/n) [t^(n-1)] (t / f(t))**n``.  Quadratic in the number of
    powers taken; used as the independent oracle for :func:`revert`.
    """
    _check_revertible(f)
    n = f.order
    # t / f(t) = 1 / (f / t)
    h = inverse(TruncatedSeries._raw(list(f.coefficients[1:])))
    out = [Fraction(0)]
    power = TruncatedSeries.one(h.order)
    for m in range(1, n):
        power = power * h
        out.append(power[m - 1] / m)
    return TruncatedSeries._raw(out)
