"""Simplicial cones: normalization, duality, Barvinok decomposition.

Cones are given by generator matrices whose columns are the rays. The
knapsack ("denumerant") cone is embedded into a full-dimensional cone by a
unimodular change of coordinates, decomposed there, and lifted back.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd, lcm
from typing import Iterable, Sequence

from .lattice import RankError, inf_norm, smallest_vector
from .linalg import (
    DegenerateInputError,
    DimensionError,
    Matrix,
    PreconditionError,
    as_int_matrix,
    as_matrix,
    columns,
    det,
    from_columns,
    invert,
    matmul,
    matvec,
    primitive,
    shape,
    transpose,
    unimodular_completion,
)

PARALLELEPIPED_GUARD = 10**5


class PoleError(ZeroDivisionError):
    pass


class ResourceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SignedUniCone:
    """One signed unimodular piece; ``vertex_coords`` are per unit of T."""

    sign: int
    generators: Matrix
    vertex_coords: tuple[Fraction, ...]

    @property
    def rays(self) -> list[tuple[int, ...]]:
        return columns(self.generators)


@dataclass(frozen=True)
class DenumerantEmbedding:
    f: int
    alist: tuple[int, ...]
    H: Matrix
    U: Matrix
    Hp: Matrix

    @property
    def d(self) -> int:
        return len(self.alist)


def normalize(gens: Matrix) -> Matrix:
    cols = columns(as_matrix(gens))
    if any(all(x == 0 for x in c) for c in cols):
        raise DegenerateInputError("zero generator")
    return from_columns([primitive(c) for c in cols])


def _square(gens: Matrix) -> None:
    n, k = shape(gens)
    if n != k:
        raise DimensionError(f"cone with {k} generators in dimension {n} is not full-dimensional")


def index(gens: Matrix) -> int:
    _square(gens)
    return abs(int(det(normalize(gens))))


def dual(gens: Matrix) -> Matrix:
    """Primitive generators of the dual cone: columns of (A^-1)^T."""
    _square(gens)
    a = as_matrix(gens)
    if det(a) == 0:
        raise RankError("generators are linearly dependent")
    return normalize(transpose(invert(a)))


def _replace_column(m: Matrix, i: int, col: Sequence) -> Matrix:
    cols = columns(m)
    cols[i] = tuple(col)
    return from_columns(cols)


def _sign(x) -> int:
    return 1 if x > 0 else -1


def barvinok_vector(b: Matrix, exact: bool = False) -> tuple[Fraction, ...]:
    """Short vector of L(B^-1) used to split the cone C(B).

    The LLL candidate is accepted when it lies in the Minkowski box,
    ``||beta||_inf <= ind^(-1/d)``; otherwise fall back to enumeration.
    """
    d = len(b)
    ind = abs(det(b))
    lattice = invert(b)
    beta = smallest_vector(lattice, exact=exact)
    if not exact and inf_norm(beta) ** d * ind > 1:
        beta = smallest_vector(lattice, exact=True)
    return tuple(Fraction(x) for x in beta)


def barvinok_decompose(gens: Matrix, exact: bool = False) -> list[tuple[int, Matrix]]:
    """Signed unimodular decomposition of a full-dimensional simplicial cone.

    Works on the dual cone, dropping lower-dimensional pieces (``k_i == 0``),
    and dualizes the unimodular results back. Returns ``(sign, A_i)`` pairs
    with integer unimodular ``A_i``.
    """
    _square(gens)
    a = normalize(gens)
    if det(a) == 0:
        raise RankError("generators are linearly dependent")
    if abs(det(a)) == 1:
        return [(1, a)]
    uni: list[tuple[int, Matrix]] = []
    nonuni: list[tuple[int, Matrix]] = [(1, dual(a))]
    while nonuni:
        eps, b = nonuni.pop()
        beta = barvinok_vector(b, exact=exact)
        if all(k <= 0 for k in beta):
            beta = tuple(-k for k in beta)
        gamma = primitive(matvec(b, beta))
        ks = matvec(invert(b), gamma)
        det_b = det(b)
        for i, k in enumerate(ks):
            if k == 0:
                continue
            bi = _replace_column(b, i, gamma)
            sign = _sign(k) * eps
            if abs(k * det_b) == 1:
                uni.append((sign, as_int_matrix(transpose(invert(bi)))))
            else:
                nonuni.append((sign, bi))
    return uni


def _monomial(y: Sequence[Fraction], exponent: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for yi, e in zip(y, exponent):
        out *= Fraction(yi) ** int(e)
    return out


def _denominator(y, rays) -> Fraction:
    out = Fraction(1)
    for r in rays:
        factor = 1 - _monomial(y, r)
        if factor == 0:
            raise PoleError(f"evaluation point is a pole along ray {r}")
        out *= factor
    return out


def parallelepiped_points(gens: Matrix, vertex: Sequence | None = None,
                          guard: int = PARALLELEPIPED_GUARD) -> list[tuple[int, ...]]:
    """Integer points of ``vertex + Pi`` for the normalized cone.

    The points are coset representatives of Z^d / A Z^d, so they are found
    by closing {reduce(0)} under ``p -> reduce(p + e_i)``, where ``reduce``
    moves a point into the half-open parallelepiped.
    """
    a = normalize(gens)
    n = len(a)
    ind = index(a)
    if ind > guard:
        raise ResourceError(f"index {ind} exceeds enumeration guard {guard}")
    v = tuple(Fraction(x) for x in vertex) if vertex is not None else (Fraction(0),) * n
    # integer bookkeeping: w = adj (den p - den v) equals M k with M = |det| den
    den = lcm(*(x.denominator for x in v))
    vnum = [int(x * den) for x in v]
    ainv = invert(a)
    adj = [[int(x * ind) for x in row] for row in ainv]
    cols = columns(a)
    big = ind * den

    def reduce(p, w):
        fl = [wj // big for wj in w]
        p = tuple(pi - sum(fj * c[i] for fj, c in zip(fl, cols) if fj) for i, pi in enumerate(p))
        return p, tuple(wj - big * fj for wj, fj in zip(w, fl))

    w0 = tuple(-sum(r * x for r, x in zip(row, vnum)) for row in adj)
    start = reduce((0,) * n, w0)
    seen = {start[0]}
    frontier = [start]
    steps = [tuple(den * adj[j][i] for j in range(n)) for i in range(n)]
    while frontier:
        p, w = frontier.pop()
        for i in range(n):
            q, wq = reduce(tuple(x + (j == i) for j, x in enumerate(p)),
                           tuple(x + s for x, s in zip(w, steps[i])))
            if q not in seen:
                seen.add(q)
                frontier.append((q, wq))
    return sorted(seen)


def gf_unimodular(gens: Matrix, vertex: Sequence, y: Sequence) -> Fraction:
    """Generating function of ``vertex + C(gens)`` for a unimodular cone."""
    a = as_matrix(gens)
    ell = matvec(invert(a), tuple(Fraction(x) for x in vertex))
    rays = columns(a)
    apex = [sum(ceil(l) * r[i] for l, r in zip(ell, rays)) for i in range(len(a))]
    return _monomial(y, apex) / _denominator(y, rays)


def gf_decomposition(pieces: Iterable[tuple[int, Matrix]], vertex: Sequence, y: Sequence) -> Fraction:
    return sum((sign * gf_unimodular(g, vertex, y) for sign, g in pieces), Fraction(0))


def gf_stanley(gens: Matrix, vertex: Sequence, y: Sequence,
               guard: int = PARALLELEPIPED_GUARD) -> Fraction:
    """Oracle: sum over the fundamental parallelepiped over the ray product."""
    a = normalize(gens)
    num = _monomial_sum(y, parallelepiped_points(a, vertex, guard))
    return num / _denominator(y, columns(a))


def _monomial_sum(y: Sequence, points: Sequence[Sequence[int]]) -> Fraction:
    """Sum of ``y^p`` over ``points`` with a single final division."""
    if not points:
        return Fraction(0)
    y = [Fraction(v) for v in y]
    if any(v == 0 for v in y):
        return sum((_monomial(y, p) for p in points), Fraction(0))
    lo = [min(p[i] for p in points) for i in range(len(y))]
    hi = [max(p[i] for p in points) - lo[i] for i in range(len(y))]
    # y_i^e = n_i^e / d_i^e; scale every term by prod d_i^hi_i
    num_pow = [[1] * (h + 1) for h in hi]
    den_pow = [[1] * (h + 1) for h in hi]
    for i, v in enumerate(y):
        for e in range(1, hi[i] + 1):
            num_pow[i][e] = num_pow[i][e - 1] * v.numerator
            den_pow[i][e] = den_pow[i][e - 1] * v.denominator
    total = 0
    for p in points:
        term = 1
        for i in range(len(y)):
            e = p[i] - lo[i]
            term *= num_pow[i][e] * den_pow[i][hi[i] - e]
        total += term
    scale = _monomial(y, lo)
    for i in range(len(y)):
        scale /= den_pow[i][hi[i]]
    return total * scale


def denumerant_embed(f: int, alist: Sequence[int]) -> DenumerantEmbedding:
    """Map the knapsack cone C(H) in Z^(d+1) onto a full-dimensional C(H')."""
    alist = tuple(int(x) for x in alist)
    if f <= 0 or any(x <= 0 for x in alist):
        raise PreconditionError("f and the sequence must be positive")
    if not alist:
        raise PreconditionError("empty sequence; f = 1 needs no embedding")
    g = f
    for x in alist:
        g = gcd(g, x)
    if g != 1:
        raise PreconditionError(f"gcd(f, alist) = {g} != 1")
    d = len(alist)
    h = tuple(
        tuple(-x for x in alist) if r == 0 else tuple(f if c == r - 1 else 0 for c in range(d))
        for r in range(d + 1)
    )
    u = unimodular_completion((f,) + alist)
    uh = matmul(u, h)
    assert all(x == 0 for x in uh[0])
    return DenumerantEmbedding(f, alist, h, u, tuple(uh[1:]))


def embedding_shift(emb: DenumerantEmbedding) -> tuple[int, ...]:
    """Integer part ``U^-1 (1, 0, ..., 0)`` of the vertex, per unit of T."""
    uinv = invert(emb.U)
    return tuple(int(row[0]) for row in uinv)


def lift_decomposition(emb: DenumerantEmbedding, pieces: Iterable[tuple[int, Matrix]]) -> list[SignedUniCone]:
    d = emb.d
    uinv = invert(emb.U)
    vprime = tuple(Fraction(emb.U[i][0], emb.f) for i in range(1, d + 1))
    out = []
    for sign, b in pieces:
        if shape(b) != (d, d):
            raise DimensionError(f"piece of shape {shape(b)} does not match dimension {d}")
        padded = ((0,) * d,) + tuple(b)
        gens = as_int_matrix(matmul(uinv, padded))
        ks = matvec(invert(as_matrix(b)), vprime)
        out.append(SignedUniCone(sign, gens, tuple(ks)))
    return out


def lifted_gf_eval(emb: DenumerantEmbedding, cones: Iterable[SignedUniCone], t: int,
                   y: Sequence) -> Fraction:
    """Generating function of ``(t/f, 0, ..., 0) + C(H)`` from lifted pieces."""
    shift = embedding_shift(emb)
    total = Fraction(0)
    for cone in cones:
        rays = cone.rays
        apex = [t * shift[i] + sum(ceil(k * t) * r[i] for k, r in zip(cone.vertex_coords, rays))
                for i in range(len(shift))]
        total += cone.sign * _monomial(y, apex) / _denominator(y, rays)
    return total


def decompose_denumerant_cone(f: int, alist: Sequence[int], exact: bool = False) -> list[SignedUniCone]:
    emb = denumerant_embed(f, alist)
    return lift_decomposition(emb, barvinok_decompose(emb.Hp, exact=exact))


def cones_to_json(cones: Iterable[SignedUniCone]) -> str:
    return json.dumps([
        {
            "sign": c.sign,
            "generators": [list(row) for row in c.generators],
            "vertex_coords": [str(k) for k in c.vertex_coords],
        }
        for c in cones
    ], indent=2)
