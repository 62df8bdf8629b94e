"""Dense univariate polynomials over the rationals, in the variable ``l``."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable

from .arith import as_rational, parse_rational

__all__ = ["PolynomialInL"]


class PolynomialInL:
    """Polynomial with rational coefficients, stored in ascending powers.

    Trailing zero coefficients are stripped, so ``degree`` of the zero
    polynomial is ``-1`` and the leading coefficient is otherwise nonzero.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable = ()):
        c = [as_rational(v) for v in coefficients]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def constant(cls, value) -> PolynomialInL:
        return cls([value])

    @classmethod
    def l(cls) -> PolynomialInL:
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> PolynomialInL:
        p = cls([leading])
        for r in roots:
            p = p * cls([-as_rational(r), 1])
        return p

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def __call__(self, value) -> Fraction:
        v = as_rational(value)
        acc = Fraction(0)
        for a in reversed(self._c):
            acc = acc * v + a
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, PolynomialInL):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == PolynomialInL([other])._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def _coerce(self, other):
        if isinstance(other, PolynomialInL):
            return other
        if isinstance(other, (int, Fraction)):
            return PolynomialInL([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self._c), len(o._c))
        return PolynomialInL(self.coeff(k) + o.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return PolynomialInL(-a for a in self._c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._c or not o._c:
            return PolynomialInL()
        out = [Fraction(0)] * (len(self._c) + len(o._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(o._c):
                    out[i + j] += a * b
        return PolynomialInL(out)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for k, a in enumerate(self._c):
            if a == 0:
                continue
            if k == 0:
                terms.append(str(a))
            elif k == 1:
                terms.append(f"({a})*l")
            else:
                terms.append(f"({a})*l^{k}")
        return " + ".join(terms)

    def to_json_obj(self) -> list[str]:
        return [str(a) for a in self._c]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: list[str]) -> PolynomialInL:
        return cls(parse_rational(s) for s in obj)

    @classmethod
    def from_json(cls, text: str) -> PolynomialInL:
        return cls.from_json_obj(json.loads(text))
