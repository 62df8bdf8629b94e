"""Dense exact matrices with fraction-free (Bareiss) elimination."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .arith import as_rational

__all__ = ["RationalMatrix", "nullspace", "det_exact"]


class RationalMatrix:
    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        grid = tuple(tuple(as_rational(v) for v in row) for row in entries)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if any(len(r) != cols for r in grid):
            raise ValueError("ragged matrix")
        self.rows = len(grid)
        self.cols = cols
        self._e = grid

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls([[0] * cols for _ in range(rows)], cols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._e[i]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._e]

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalMatrix):
            return self.cols == other.cols and self._e == other._e
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.cols, self._e))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in r) for r in self._e)
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        v = [as_rational(a) for a in v]
        return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self._e]

    def det(self) -> Fraction:
        return det_exact(self)

    def nullspace(self) -> list[list[Fraction]]:
        return nullspace(self)

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return len(_bareiss(_integer_rows(self)[0])[1])

    def rref(self) -> tuple[RationalMatrix, list[int]]:
        """Reduced row echelon form and the pivot columns."""
        if self.rows == 0:
            return self, []
        ech, pivots, _ = _bareiss(_integer_rows(self)[0])
        rows = [[Fraction(a) for a in ech[k]] for k in range(len(pivots))]
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            p = rows[k][pc]
            rows[k] = [a / p for a in rows[k]]
            for i in range(k):
                f = rows[i][pc]
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[k])]
        rows.extend([Fraction(0)] * self.cols for _ in range(self.rows - len(pivots)))
        return RationalMatrix(rows, self.cols), pivots

    def to_json_obj(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self._e]


def _integer_rows(m: RationalMatrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; returns the rows and the product of scales."""
    out, scale = [], Fraction(1)
    for r in m._e:
        d = lcm(*(a.denominator for a in r)) if r else 1
        out.append([int(a * d) for a in r])
        scale *= d
    return out, scale


def _bareiss(m: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free row echelon form over the integers.

    Returns the echelon rows, the pivot columns and the sign of the row
    permutation.  Every division is exact: intermediate entries are minors
    of the input.
    """
    m = [list(r) for r in m]
    rows = len(m)
    cols = len(m[0]) if m else 0
    prev, r, sign = 1, 0, 1
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            sign = -sign
        piv = m[r][c]
        for i in range(r + 1, rows):
            mic = m[i][c]
            ri = m[i]
            rr = m[r]
            for j in range(c + 1, cols):
                q, rem = divmod(piv * ri[j] - mic * rr[j], prev)
                assert rem == 0, "non-exact Bareiss division"
                ri[j] = q
            ri[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots, sign


def det_exact(m: RationalMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    ints, scale = _integer_rows(m)
    ech, pivots, sign = _bareiss(ints)
    if len(pivots) < n:
        return Fraction(0)
    return Fraction(sign * ech[n - 1][n - 1]) / scale


def nullspace(m: RationalMatrix) -> list[list[Fraction]]:
    """Basis of ``{v : m v = 0}``; one vector per free column, ascending."""
    if m.rows == 0:
        return [[Fraction(int(i == f)) for i in range(m.cols)] for f in range(m.cols)]
    ech, pivots, _ = _bareiss(_integer_rows(m)[0])
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            s = sum((ech[k][j] * v[j] for j in range(pc + 1, m.cols) if ech[k][j]), Fraction(0))
            v[pc] = -s / ech[k][pc]
        basis.append(v)
    return basis
