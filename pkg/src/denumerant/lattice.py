"""LLL reduction over the rationals and infinity-norm shortest vectors.

A lattice is given by a matrix whose *columns* form a basis. Everything is
exact: Gram-Schmidt data are kept as ``Fraction`` values.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import floor
from typing import Sequence

from .linalg import (
    DimensionError,
    Matrix,
    as_matrix,
    columns,
    dot,
    from_columns,
    invert,
    shape,
)

DEFAULT_DELTA = Fraction(3, 4)


class RankError(ValueError):
    pass


def _round(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


def _gram_schmidt(b: list[list[Fraction]]):
    n = len(b)
    bstar: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = list(b[i])
        for j in range(i):
            mu[i][j] = dot(b[i], bstar[j]) / norms[j]
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(dot(v, v))
        if norms[i] == 0:
            raise RankError("basis vectors are linearly dependent")
    return bstar, norms, mu


def lll_reduce(basis: Matrix, delta: Fraction = DEFAULT_DELTA) -> Matrix:
    """LLL-reduce the columns of ``basis`` (exact arithmetic)."""
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    b = [list(c) for c in columns(as_matrix(basis))]
    n = len(b)
    bstar, norms, mu = _gram_schmidt(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = _round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for i in range(j):
                    mu[k][i] -= q * mu[j][i]
                mu[k][j] -= q
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            # swapping invalidates only rows k-1, k; recomputing is cheap at these sizes
            bstar, norms, mu = _gram_schmidt(b)
            k = max(k - 1, 1)
    return from_columns(b)


def is_lll_reduced(basis: Matrix, delta: Fraction = DEFAULT_DELTA) -> bool:
    b = [list(c) for c in columns(as_matrix(basis))]
    _, norms, mu = _gram_schmidt(b)
    for i in range(len(b)):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, len(b)):
        if norms[k] < (Fraction(delta) - mu[k][k - 1] ** 2) * norms[k - 1]:
            return False
    return True


def inf_norm(v: Sequence) -> Fraction:
    return max(abs(Fraction(x)) for x in v)


def vector_key(v: Sequence):
    """Deterministic ranking: infinity norm, then 1-norm, then entries."""
    v = tuple(Fraction(x) for x in v)
    return (inf_norm(v), sum(abs(x) for x in v), v)


def _enumerate_box(basis: Matrix, radius: Fraction):
    """Every nonzero lattice vector with infinity norm <= ``radius``.

    For v = B c we have c_i = (B^-1 v)_i, hence
    |c_i| <= ||row_i(B^-1)||_1 * ||v||_inf, which bounds the search box.
    """
    n, d = shape(basis)
    if n != d:
        raise DimensionError("exact enumeration needs a square basis")
    binv = invert(basis)
    bounds = [floor(sum(abs(x) for x in row) * radius) for row in binv]
    cols = columns(basis)
    for coeffs in itertools.product(*(range(-m, m + 1) for m in bounds)):
        if not any(coeffs):
            continue
        v = tuple(sum(c * col[i] for c, col in zip(coeffs, cols)) for i in range(n))
        if inf_norm(v) <= radius:
            yield v


def enumerate_short(basis: Matrix, radius: Fraction) -> list[tuple]:
    return list(_enumerate_box(as_matrix(basis), Fraction(radius)))


def smallest_vector(basis: Matrix, exact: bool = False, delta: Fraction = DEFAULT_DELTA) -> tuple:
    """Nonzero lattice vector of small infinity norm.

    Fast mode returns the best column of the LLL-reduced basis. Exact mode
    additionally enumerates all lattice vectors no longer than that
    candidate and returns the true minimum.
    """
    reduced = lll_reduce(basis, delta)
    best = min(columns(reduced), key=vector_key)
    if not exact:
        return best
    for v in _enumerate_box(reduced, inf_norm(best)):
        if vector_key(v) < vector_key(best):
            best = v
    return best
