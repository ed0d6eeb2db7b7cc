"""Denumerant quasi-polynomials: divisor lattice, Moebius weights, assembly.

``E(a; t) = sum_m t^m E_m(a; t)`` with

    E_m(a; T) = sum_(f in frak_m) mu_m(f) E_m(a; f, T),

and each ``E_m(a; f, T)`` is read off the s-Laurent expansion of one sum of
exponential-rational terms built from the decomposition of a knapsack cone.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Iterable, Sequence

from . import cone, ctseries
from .ctseries import GTerm
from .linalg import PreconditionError
from .stepquasi import ZERO, QuasiPolynomial, StepPoly

log = logging.getLogger(__name__)


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class FLattice:
    """All subset gcds ``S`` of ``a`` and ``a(f) = {a_i : f | a_i}``."""

    S: tuple[int, ...]
    assoc: dict

    def frak(self, m: int) -> set[int]:
        return {f for f in self.S if len(self.assoc[f]) >= m + 1}


def _check_sequence(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if not a:
        raise InputError("empty sequence")
    if any(x <= 0 for x in a):
        raise InputError(f"entries must be positive: {a}")
    return a


def seq_gcd(a: Iterable[int]) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def fset(a: Sequence[int]) -> FLattice:
    """Closure of the distinct entries under gcd, with the divisible entries.

    Follows the incremental construction: when the i-th distinct value
    meets each earlier gcd ``f``, ``gcd(a_i, f)`` either joins ``S`` with
    ``a(f) + {a_i}`` or gains ``a_i``. Membership is tracked as sets so a
    gcd reached from several ``f`` in one round is merged, not duplicated.
    """
    a = _check_sequence(a)
    mult = Counter(a)
    values = sorted(mult)
    members: dict[int, set[int]] = {values[0]: {values[0]}}
    for ai in values[1:]:
        for f in list(members):
            tf = gcd(ai, f)
            if tf in members:
                members[tf] |= members[f] | {ai} if tf != f else {ai}
            else:
                members[tf] = members[f] | {ai}
        members.setdefault(ai, set()).add(ai)
    assoc = {f: tuple(sorted(x for v in members[f] for x in [v] * mult[v])) for f in members}
    return FLattice(tuple(sorted(members)), assoc)


def frak_f(fl: FLattice, m: int) -> set[int]:
    return fl.frak(m)


def moebius(frak: Iterable[int]) -> dict[int, int]:
    """Nonzero weights from mu(f) = 1 - sum_(f | f', f' != f) mu(f')."""
    frak = sorted(set(frak), reverse=True)
    if not frak:
        raise InputError("empty divisor set")
    mu: dict[int, int] = {}
    for f in frak:
        mu[f] = 1 - sum(v for g, v in mu.items() if g % f == 0)
    return {f: v for f, v in mu.items() if v != 0}


def gterms_for(a: Sequence[int], f: int, exact: bool = False,
               seed: int = ctseries.SLACK_SEED) -> list[GTerm]:
    """Terms ``G_i`` with ``F(a, f, T; s) = f * sum_i G_i(s)``."""
    af = [x for x in a if x % f == 0]
    if f == 1:
        return [GTerm(StepPoly.const(1), ZERO, tuple(sorted(Fraction(x) for x in a)))]
    alist = [x for x in a if x % f]
    emb = cone.denumerant_embed(f, alist)
    pieces = cone.lift_decomposition(emb, cone.barvinok_decompose(emb.Hp, exact=exact))
    rows = [(ctseries.q_weight(emb, alpha), alpha) for p in pieces for alpha in p.rays]
    c = ctseries.choose_slack(rows, dim=emb.d + 1, seed=seed)
    qterms = []
    for p in pieces:
        qterms.extend(ctseries.ct_x(ctseries.substitute(p, emb, c)))
    gterms = ctseries.build_G(qterms, af)
    log.debug("f=%d: %d cones, %d q-terms, %d G-terms", f, len(pieces), len(qterms), len(gterms))
    return gterms


def compute_Emf(a: Sequence[int], f: int, mset: Iterable[int], exact: bool = False,
                seed: int = ctseries.SLACK_SEED) -> dict[int, StepPoly]:
    """``E_m(a; f, T)`` for all ``m`` in ``mset`` from one shared term list."""
    a = _check_sequence(a)
    if seq_gcd(a) != 1:
        raise PreconditionError(f"gcd{a} != 1")
    mset = sorted(set(mset))
    if not mset:
        raise InputError("empty coefficient set")
    coeffs = ctseries.s_coeffs_batched(gterms_for(a, f, exact, seed), mset)
    return {m: coeffs[m].scale(Fraction((-1) ** (m + 1) * f, factorial(m))) for m in mset}


def ct_knapsack(a: Sequence[int], mset: Iterable[int] | None = None, exact: bool = False,
                seed: int = ctseries.SLACK_SEED) -> QuasiPolynomial:
    """Quasi-polynomial coefficients ``E_m(a; T)`` for ``m`` in ``mset``."""
    a = _check_sequence(a)
    if seq_gcd(a) != 1:
        raise PreconditionError(f"gcd{a} != 1")
    n = len(a) - 1
    mset = sorted(set(range(n + 1) if mset is None else mset))
    if any(m < 0 for m in mset):
        raise InputError("coefficient indices must be nonnegative")
    fl = fset(a)
    weights = {m: moebius(fl.frak(m)) for m in mset if m <= n}
    needed: dict[int, list[int]] = {}
    for m, mu in weights.items():
        for f in mu:
            needed.setdefault(f, []).append(m)
    coeffs = {m: ZERO for m in mset}
    for f in sorted(needed):
        per_f = compute_Emf(a, f, needed[f], exact=exact, seed=seed)
        for m, val in per_f.items():
            coeffs[m] = coeffs[m] + val.scale(weights[m][f])
    return QuasiPolynomial(a, n, coeffs)


def oracle_counts(a: Sequence[int], tmax: int) -> list[int]:
    """Coin-counting table: entry t is the number of solutions of a.x = t."""
    ways = [0] * (tmax + 1)
    ways[0] = 1
    for c in a:
        for t in range(c, tmax + 1):
            ways[t] += ways[t - c]
    return ways


def oracle_count(a: Sequence[int], t: int) -> int:
    if t < 0:
        raise InputError("t must be nonnegative")
    return oracle_counts(a, t)[t]
