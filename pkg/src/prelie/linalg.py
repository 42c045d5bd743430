"""Exact linear algebra over the rationals for small dense systems.

Plain fraction Gaussian elimination; sizes here stay in the hundreds, so
clarity beats speed and every result is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer (or rational) matrix."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    out = 0
    for col in range(len(m[0])):
        pivot = next((r for r in range(out, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[out], m[pivot] = m[pivot], m[out]
        inv = 1 / m[out][col]
        for r in range(out + 1, len(m)):
            factor = m[r][col] * inv
            if factor:
                m[r] = [a - factor * b for a, b in zip(m[r], m[out])]
        out += 1
    return out


def solve_unique(rows: Sequence[Sequence[int]],
                 rhs: Sequence[int]) -> list[Fraction]:
    """Solve A x = b for the unique solution.

    Requires full column rank and a consistent system; raises RuntimeError
    otherwise.  The matrix may have more rows than columns.
    """
    if len(rows) != len(rhs):
        raise RuntimeError("matrix and right-hand side sizes differ")
    m = [[Fraction(x) for x in row] + [Fraction(rhs[r])]
         for r, row in enumerate(rows)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    row_at = 0
    for col in range(ncols):
        pivot = next((r for r in range(row_at, len(m)) if m[r][col]), None)
        if pivot is None:
            raise RuntimeError("matrix does not have full column rank")
        m[row_at], m[pivot] = m[pivot], m[row_at]
        inv = 1 / m[row_at][col]
        for r in range(len(m)):
            if r != row_at and m[r][col]:
                factor = m[r][col] * inv
                m[r] = [a - factor * b for a, b in zip(m[r], m[row_at])]
        pivots.append((row_at, col))
        row_at += 1
    for r in range(row_at, len(m)):
        if m[r][-1]:
            raise RuntimeError("inconsistent linear system")
    solution = [Fraction(0)] * ncols
    for r, col in pivots:
        solution[col] = m[r][-1] / m[r][col]
    return solution
