"""Slack substitution, constant terms in x, and s-coefficients.

Each lifted unimodular cone contributes a term

    eps * q^m0 e^(b0 x) / prod_B0 (1 - e^(b x))
        / prod (1 - q^m e^(b x)) / prod (1 - q^m)

whose constant term in ``x`` is a finite sum of ``q``-monomials over
products of binomials ``(1 - q^m)``. Substituting ``q = e^s`` gives terms
``c e^(b0 s) / prod (1 - e^(b_j s))`` whose Laurent coefficients in ``s`` are
read off from the even series ``e^(sum b/2 s) prod b s / (1 - e^(b s))``.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from .cone import DenumerantEmbedding, SignedUniCone
from .stepquasi import ONE, ZERO, StepPoly, atom_canon

SLACK_SEED = 20240101


class SlackError(ValueError):
    pass


@dataclass(frozen=True)
class HatGTerm:
    sign: int
    m0: StepPoly
    b0: StepPoly
    B0: tuple[Fraction, ...]
    mixed: tuple[tuple[int, Fraction], ...]  # factors (1 - q^m e^(b x))
    pureq: tuple[int, ...]


@dataclass(frozen=True)
class QRatTerm:
    """``coeff * b0^b0pow * q^qexp / prod (1 - q^m)^mult``."""

    coeff: StepPoly
    b0: StepPoly
    b0pow: int
    qexp: StepPoly
    denom: tuple[tuple[int, int], ...]

    def evaluate(self, t: int, q: Fraction) -> Fraction:
        val = self.coeff.evaluate(t) * self.b0.evaluate(t) ** self.b0pow
        val *= Fraction(q) ** int(self.qexp.evaluate(t))
        for m, k in self.denom:
            val /= (1 - Fraction(q) ** m) ** k
        return val


@dataclass(frozen=True)
class GTerm:
    """``coeff * e^(exponent s) / prod_j (1 - e^(rates_j s))``."""

    coeff: StepPoly
    exponent: StepPoly
    rates: tuple[Fraction, ...]


# --- slack vector ---------------------------------------------------------

def choose_slack(rows: Iterable[tuple[int, Sequence[int]]], dim: int | None = None,
                 seed: int = SLACK_SEED) -> tuple[int, ...]:
    """Integer ``c`` with ``c . alpha != 0`` for every weight-0 ``alpha``.

    ``rows`` holds ``(w(alpha), alpha)`` pairs. Tries ``c = 0``, then the
    moment curve ``(1, t, t^2, ...)``, then random vectors of growing range.
    """
    rows = list(rows)
    if dim is None:
        if not rows:
            raise ValueError("dimension unknown without rows")
        dim = len(rows[0][1])
    zero_weight = [tuple(alpha) for w, alpha in rows if w == 0]
    if any(all(x == 0 for x in a) for a in zero_weight):
        raise SlackError("zero exponent vector")
    if not zero_weight:
        return (0,) * dim

    def ok(c):
        return all(sum(ci * ai for ci, ai in zip(c, a)) != 0 for a in zero_weight)

    # a nonzero vector has at most dim-1 roots on the moment curve
    for t in range(2, 2 + dim * len(zero_weight) + 2):
        c = tuple(t**i for i in range(dim))
        if ok(c):
            return c
    rng = random.Random(seed)
    bound = 2
    while True:
        for _ in range(64):
            c = tuple(rng.randint(-bound, bound) for _ in range(dim))
            if ok(c):
                return c
        bound *= 2


# --- substitution ---------------------------------------------------------

def q_weight(emb: DenumerantEmbedding, alpha: Sequence[int]) -> int:
    return sum(a * x for a, x in zip(emb.alist, alpha[1:]))


def substitute(piece: SignedUniCone, emb: DenumerantEmbedding, c: Sequence[int]) -> HatGTerm:
    """Apply ``y_0 = e^(c_0 x)``, ``y_l = e^(c_l x) q^(a_l)`` to one cone."""
    m0 = ZERO
    b0 = ZERO
    B0, mixed, pureq = [], [], []
    for k, alpha in zip(piece.vertex_coords, piece.rays):
        w = q_weight(emb, alpha)
        x = sum(ci * ai for ci, ai in zip(c, alpha))
        if w == 0 and x == 0:
            raise SlackError(f"slack vector {tuple(c)} vanishes on {alpha}")
        atom = atom_canon(-k)
        if not atom.is_zero():
            m0 = m0 + atom.scale(w)
            b0 = b0 + atom.scale(x)
        if w == 0:
            B0.append(Fraction(x))
        elif x != 0:
            mixed.append((w, Fraction(x)))
        else:
            pureq.append(w)
    return HatGTerm(piece.sign, m0, b0, tuple(B0), tuple(mixed), tuple(pureq))


# --- constant term in x ---------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli numbers with B_1 = -1/2 (x/(e^x - 1) convention)."""
    if n == 0:
        return Fraction(1)
    return -sum(Fraction(factorial(n + 1), factorial(k) * factorial(n + 1 - k)) * bernoulli(k)
                for k in range(n)) / (n + 1)


@lru_cache(maxsize=None)
def eulerian(n: int) -> tuple[int, ...]:
    """Coefficients of A_n(Q), where sum_j j^n Q^j = Q A_n(Q) / (1-Q)^(n+1)."""
    if n <= 1:
        return (1,)
    prev = eulerian(n - 1)
    out = [0] * n
    for k in range(n):
        a = (k + 1) * prev[k] if k < len(prev) else 0
        b = (n - k) * prev[k - 1] if 0 < k <= len(prev) else 0
        out[k] = a + b
    return tuple(out)


# A rational function in q is a dict {denominator key: {exponent: coeff}},
# where the key is a sorted tuple of (m, power) for factors (1 - q^m)^power.

def _rf_mul(x: dict, y: dict) -> dict:
    out: dict = {}
    for dx, px in x.items():
        for dy, py in y.items():
            powers = Counter(dict(dx))
            powers.update(dict(dy))
            key = tuple(sorted(powers.items()))
            poly = out.setdefault(key, {})
            for ex, cx in px.items():
                for ey, cy in py.items():
                    poly[ex + ey] = poly.get(ex + ey, 0) + cx * cy
    return out


def _rf_add_into(acc: dict, x: dict, scale: Fraction = Fraction(1)) -> None:
    for key, poly in x.items():
        tgt = acc.setdefault(key, {})
        for e, c in poly.items():
            tgt[e] = tgt.get(e, 0) + scale * c


def _mixed_series(m: int, b: Fraction, order: int) -> list[dict]:
    """x-coefficients of 1/(1 - q^m e^(b x)) up to ``order``."""
    out = [{((m, 1),): {0: Fraction(1)}}]
    for n in range(1, order + 1):
        scale = b**n / factorial(n)
        poly = {m * (j + 1): scale * c for j, c in enumerate(eulerian(n))}
        out.append({((m, n + 1),): poly})
    return out


def _series_mul(x: list[dict], y: list[dict], order: int) -> list[dict]:
    out = [dict() for _ in range(order + 1)]
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j in range(order + 1 - i):
            if y[j]:
                _rf_add_into(out[i + j], _rf_mul(xi, y[j]))
    return out


def ct_x(h: HatGTerm) -> list[QRatTerm]:
    """Constant term in ``x`` of ``h`` as a list of q-rational terms."""
    n0 = len(h.B0)
    prefactor = Fraction(h.sign * (-1) ** n0)
    for b in h.B0:
        prefactor /= b
    # prod_B0 (b x)/(e^(b x) - 1), truncated at x^n0
    bern = [Fraction(0)] * (n0 + 1)
    bern[0] = Fraction(1)
    for b in h.B0:
        factor = [bernoulli(n) * b**n / factorial(n) for n in range(n0 + 1)]
        bern = [sum(bern[i] * factor[k - i] for i in range(k + 1)) for k in range(n0 + 1)]
    series = [{(): {0: c}} if c else {} for c in bern]
    for m, b in h.mixed:
        series = _series_mul(series, _mixed_series(m, b, n0), n0)
    pure = Counter(h.pureq)
    terms = []
    for n in range(n0 + 1):
        coeff_rf = series[n0 - n]
        for key, poly in coeff_rf.items():
            denom = Counter(dict(key))
            denom.update(pure)
            denom_key = tuple(sorted(denom.items()))
            for e, c in sorted(poly.items()):
                if not c:
                    continue
                terms.append(QRatTerm(
                    coeff=StepPoly.const(prefactor * c / factorial(n)),
                    b0=h.b0,
                    b0pow=n,
                    qexp=h.m0 + e,
                    denom=denom_key,
                ))
    return terms


# --- back to s ------------------------------------------------------------

def build_G(terms: Iterable[QRatTerm], af: Sequence[int]) -> list[GTerm]:
    """Substitute ``q = e^s`` and multiply by ``1/prod_(f | a_i) (1 - e^(a_i s))``.

    Terms sharing exponent and rates are merged.
    """
    extra = tuple(Fraction(x) for x in af)
    merged: dict = {}
    order: list = []
    for t in terms:
        rates = []
        for m, k in t.denom:
            rates.extend([Fraction(m)] * k)
        key = (t.qexp, tuple(sorted(rates + list(extra))))
        coeff = t.coeff * (t.b0 ** t.b0pow) if t.b0pow else t.coeff
        if key not in merged:
            merged[key] = coeff
            order.append(key)
        else:
            merged[key] = merged[key] + coeff
    return [GTerm(merged[k], k[0], k[1]) for k in order if not merged[k].is_zero()]


def _reciprocal(series: Sequence[Fraction], n: int) -> list[Fraction]:
    inv = [Fraction(0)] * (n + 1)
    inv[0] = 1 / Fraction(series[0])
    for k in range(1, n + 1):
        acc = sum(series[i] * inv[k - i] for i in range(1, min(k, len(series) - 1) + 1))
        inv[k] = -acc * inv[0]
    return inv


def _mul(x: Sequence[Fraction], y: Sequence[Fraction], n: int) -> list[Fraction]:
    return [sum(x[i] * y[k - i] for i in range(k + 1)) for k in range(n + 1)]


@lru_cache(maxsize=None)
def _half_sinh_series(n: int) -> tuple[Fraction, ...]:
    """Coefficients of (z/2)/sinh(z/2), an even series."""
    sinh_over = [Fraction(0)] * (n + 1)
    for k in range(0, n + 1, 2):
        sinh_over[k] = Fraction(1, 2**k * factorial(k + 1))
    return tuple(_reciprocal(sinh_over, n))


@lru_cache(maxsize=None)
def _todd_cached(rates: tuple[Fraction, ...], n: int) -> tuple[Fraction, ...]:
    base = _half_sinh_series(n)
    out = [Fraction(0)] * (n + 1)
    out[0] = Fraction(1)
    for b, mult in Counter(abs(r) for r in rates).items():
        # e^(b s/2) * b s/(1 - e^(b s)) = -(b s/2)/sinh(b s/2)
        factor = [-base[k] * b**k for k in range(n + 1)]
        for _ in range(mult):
            out = _mul(out, factor, n)
    return tuple(out)


def todd_coeffs(rates: Iterable, n: int) -> list[Fraction]:
    """M_0..M_n of e^(sum b/2 s) prod_j b_j s/(1 - e^(b_j s))."""
    rates = tuple(sorted(Fraction(r) for r in rates))
    if any(r == 0 for r in rates):
        raise ValueError("rates must be nonzero")
    if n < 0:
        return []
    return list(_todd_cached(rates, n))


def _rate_product(rates: Sequence[Fraction]) -> Fraction:
    out = Fraction(1)
    for r in rates:
        out *= r
    return out


def shifted_weights(g: GTerm, shift: Fraction, n: int, todd: Sequence[Fraction]) -> list[Fraction]:
    """``h_j`` with ``sum_k (L+shift)^k/k! M_(n-k) = sum_j h_j L^j / j!``."""
    return [sum(shift**i / factorial(i) * todd[n - j - i] for i in range(n - j + 1))
            for j in range(n + 1)]


def s_coeff(g: GTerm, m: int) -> StepPoly:
    """[s^(-1-m)] G(s) as a step polynomial."""
    u = len(g.rates)
    if u < m + 1:
        return ZERO
    n = u - 1 - m
    todd = todd_coeffs(g.rates, n)
    b0p = g.exponent - sum(g.rates) / 2
    total = ZERO
    power = ONE
    for k in range(n + 1):
        total = total + power.scale(todd[n - k] / factorial(k))
        power = power * b0p
    return (g.coeff * total).scale(1 / _rate_product(g.rates))


def s_coeffs_batched(gterms: Iterable[GTerm], mset: Iterable[int]) -> dict[int, StepPoly]:
    """``sum_i [s^(-1-m)] G_i`` for every ``m`` in ``mset`` at once.

    One Todd expansion per distinct rate multiset, at order ``u - 1 - min m``;
    powers of the symbolic part of each exponent are expanded once per
    distinct exponent.
    """
    mset = sorted(set(mset))
    if not mset:
        return {}
    mmin = mset[0]
    # acc[m][linear part] = list of StepPoly weights for L^j / j!
    acc: dict[int, dict[StepPoly, list]] = {m: defaultdict(list) for m in mset}
    for g in gterms:
        u = len(g.rates)
        if u < mmin + 1:
            continue
        todd = todd_coeffs(g.rates, u - 1 - mmin)
        const, linear = g.exponent.split_constant()
        shift = const - sum(g.rates) / 2
        scale = 1 / _rate_product(g.rates)
        for m in mset:
            if u < m + 1:
                continue
            n = u - 1 - m
            h = shifted_weights(g, shift, n, todd)
            slot = acc[m][linear]
            while len(slot) < n + 1:
                slot.append(ZERO)
            for j in range(n + 1):
                if h[j]:
                    slot[j] = slot[j] + g.coeff.scale(h[j] * scale)
    out = {}
    for m in mset:
        total = ZERO
        for linear, weights in acc[m].items():
            power = ONE
            for j, w in enumerate(weights):
                if not w.is_zero():
                    total = total + (w * power).scale(Fraction(1, factorial(j)))
                if j + 1 < len(weights):
                    power = power * linear
        out[m] = total
    return out
