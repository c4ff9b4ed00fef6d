"""Exact linear algebra over Q.

Rank uses fraction-free (Bareiss) elimination on integer-scaled rows; the
solver factors a matrix once with Gauss-Jordan over ``Fraction`` so that
many right-hand sides can be solved cheaply.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from hspecht.polyalg import Exponent, Polynomial

Matrix = list[list[Fraction]]


def _integer_rows(rows: Sequence[Sequence[Fraction | int]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = lcm(*(Fraction(v).denominator for v in row)) if row else 1
        out.append([int(Fraction(v) * den) for v in row])
    return out


def rank(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank by Bareiss elimination; all intermediate values are integers."""
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        for i in range(r + 1, nrows):
            a = m[i][col]
            m[i] = [(p * m[i][j] - a * m[r][j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(rows: Sequence[Sequence[Fraction | int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                a = m[i][col]
                m[i] = [x - a * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return m, pivots


class RankDefect(ArithmeticError):
    """Raised when a system that should have full column rank does not."""


class ExactSolver:
    """Solve ``A x = b`` exactly for a fixed matrix ``A`` of full column rank.

    ``A`` is m x k.  Gauss-Jordan on ``[A^T | I_k]`` gives ``R = M A^T`` in
    reduced echelon form.  For consistent ``b`` the pivot entries of ``b``
    determine ``c`` with ``b = R^T c``, and then ``x = M^T c``.
    """

    def __init__(self, A: Sequence[Sequence[Fraction | int]]):
        self.nrows = len(A)
        self.ncols = len(A[0]) if A else 0
        k = self.ncols
        aug = [[Fraction(A[i][j]) for i in range(self.nrows)] + [Fraction(int(j == t)) for t in range(k)]
               for j in range(k)]
        red, pivots = rref(aug) if aug else ([], [])
        self.pivots = [p for p in pivots if p < self.nrows]
        self.rank = len(self.pivots)
        if self.rank != k:
            raise RankDefect(f"rank {self.rank} < {k} columns")
        self._R = [[(i, v) for i, v in enumerate(row[:self.nrows]) if v] for row in red]
        self._M = [[(t, v) for t, v in enumerate(row[self.nrows:]) if v] for row in red]

    def solve(self, b: Sequence[Fraction | int]) -> list[Fraction] | None:
        """Unique solution, or ``None`` if ``b`` is outside the column space."""
        if len(b) != self.nrows:
            raise ValueError("right-hand side has wrong length")
        residual = {i: Fraction(v) for i, v in enumerate(b) if v}
        c = [residual.get(p, Fraction(0)) for p in self.pivots]
        for cj, row in zip(c, self._R):
            if cj:
                for i, v in row:
                    r = residual.get(i, 0) - cj * v
                    if r:
                        residual[i] = r
                    else:
                        residual.pop(i, None)
        if residual:
            return None
        x = [Fraction(0)] * self.ncols
        for cj, row in zip(c, self._M):
            if cj:
                for t, v in row:
                    x[t] += cj * v
        return x


def coordinate_matrix(polys: Sequence[Polynomial],
                      monomials: Sequence[Exponent] | None = None) -> tuple[Matrix, list[Exponent]]:
    """Rows = polynomials, columns = monomials (sorted if not given)."""
    if monomials is None:
        monomials = sorted({e for p in polys for e in p.terms}, reverse=True)
    return [[p.coeff(e) for e in monomials] for p in polys], list(monomials)


def poly_rank(polys: Sequence[Polynomial]) -> int:
    if not polys:
        return 0
    rows, _ = coordinate_matrix(polys)
    return rank(rows) if rows and rows[0] else 0


class PolynomialBasis:
    """Express polynomials in the span of a fixed independent family."""

    def __init__(self, polys: Sequence[Polynomial], extra_monomials: Sequence[Exponent] = ()):
        self.polys = list(polys)
        monos = sorted({e for p in polys for e in p.terms} | set(extra_monomials), reverse=True)
        self.monomials = monos
        self._index = {e: i for i, e in enumerate(monos)}
        columns = [[p.coeff(e) for p in polys] for e in monos]  # monomial x basis-vector
        self.solver = ExactSolver(columns)

    def coordinates(self, f: Polynomial) -> list[Fraction] | None:
        """Coordinates of ``f`` in the basis, or ``None`` if ``f`` is outside the span."""
        b = [Fraction(0)] * len(self.monomials)
        for e, c in f.terms.items():
            i = self._index.get(e)
            if i is None:
                return None
            b[i] = c
        return self.solver.solve(b)
