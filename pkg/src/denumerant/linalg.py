"""Exact integer/rational linear algebra on small dense matrices.

Matrices are row-major tuples of tuples. Rational entries are
``fractions.Fraction``; integer matrices use plain ``int``. Cone code works
with column generators, so ``columns``/``from_columns`` convert between the
two views.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple
Matrix = tuple  # tuple[tuple[Fraction | int, ...], ...]


class DimensionError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


class DegenerateInputError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if not m or not m[0]:
        raise DimensionError("matrix must have positive dimensions")
    width = len(m[0])
    if any(len(r) != width for r in m):
        raise DimensionError("ragged matrix")
    return m


def as_int_matrix(rows: Iterable[Iterable]) -> Matrix:
    out = []
    for row in rows:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"non-integer entry {x}")
            r.append(x.numerator)
        out.append(tuple(r))
    return tuple(out)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), len(m[0])


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def columns(m: Matrix) -> list[tuple]:
    return list(zip(*m))


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*cols))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence) -> tuple:
    if len(a[0]) != len(v):
        raise DimensionError(f"cannot multiply {shape(a)} by vector of length {len(v)}")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def _integer_scaled(m: Matrix) -> tuple[list[list[int]], int]:
    """Scale a rational matrix to an integer one; returns (rows, scale)."""
    den = 1
    for row in m:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    rows = [[int(Fraction(x) * den) for x in row] for row in m]
    return rows, den


def det(m: Matrix) -> Fraction:
    """Exact determinant by Bareiss fraction-free elimination."""
    n, k = shape(m)
    if n != k:
        raise DimensionError(f"determinant of non-square {n}x{k} matrix")
    a, scale = _integer_scaled(m)
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            for r in range(c + 1, n):
                if a[r][c] != 0:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        p = a[c][c]
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                a[r][j] = (a[r][j] * p - a[r][c] * a[c][j]) // prev
        prev = p
    return Fraction(sign * a[n - 1][n - 1], scale**n)


def invert(m: Matrix) -> Matrix:
    """Exact inverse via fraction-free Gauss-Jordan on ``[M | I]``.

    The elimination leaves ``[delta*I | delta*M^-1]`` with integer entries
    throughout, so a single division at the end produces the inverse.
    """
    n, k = shape(m)
    if n != k:
        raise DimensionError(f"inverse of non-square {n}x{k} matrix")
    a, scale = _integer_scaled(m)
    aug = [row + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    prev = 1
    for c in range(n):
        if aug[c][c] == 0:
            for r in range(c + 1, n):
                if aug[r][c] != 0:
                    aug[c], aug[r] = aug[r], aug[c]
                    break
            else:
                raise SingularMatrixError("matrix is singular")
        p = aug[c][c]
        pivot_row = aug[c]
        for r in range(n):
            if r == c:
                continue
            row = aug[r]
            f = row[c]
            for j in range(2 * n):
                row[j] = (row[j] * p - f * pivot_row[j]) // prev
        prev = p
    delta = aug[0][0]
    # inverse of the scaled matrix is (1/scale) M^-1, so undo the scaling
    return tuple(tuple(Fraction(aug[i][n + j] * scale, delta) for j in range(n)) for i in range(n))


def is_integral(m: Matrix) -> bool:
    return all(Fraction(x).denominator == 1 for row in m for x in row)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Smallest integer vector that is a positive multiple of ``v``."""
    v = [Fraction(x) for x in v]
    if not v or all(x == 0 for x in v):
        raise DegenerateInputError("zero vector has no primitive direction")
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def unimodular_completion(w: Sequence[int]) -> Matrix:
    """Integer matrix with determinant +-1 whose first row is ``w``.

    Column-style extended Euclid reduces ``w`` to ``e_1`` by unimodular
    column operations ``V``; the completion is ``V^-1``, assembled directly
    by applying the inverse operations as row operations.
    """
    w = [int(x) for x in w]
    n = len(w)
    g = 0
    for x in w:
        g = gcd(g, x)
    if g != 1:
        raise PreconditionError(f"vector {tuple(w)} is not primitive")
    x = list(w)
    u = [list(r) for r in identity(n)]
    for j in range(1, n):
        while x[j] != 0:
            if abs(x[0]) == 1:
                # col_j -= (x_j * x_0) col_0  <=>  row_0 += (x_j * x_0) row_j
                q = x[j] * x[0]
                x[j] = 0
                u[0] = [a + q * b for a, b in zip(u[0], u[j])]
                break
            q = x[0] // x[j]
            # col_0 -= q col_j  <=>  row_j += q row_0
            x[0] -= q * x[j]
            u[j] = [a + q * b for a, b in zip(u[j], u[0])]
            x[0], x[j] = x[j], x[0]
            u[0], u[j] = u[j], u[0]
    if x[0] == -1:
        u[0] = [-a for a in u[0]]
    return tuple(tuple(r) for r in u)
