"""Step polynomials in fractional-part atoms and quasi-polynomials.

An atom ``{r t}`` with ``0 < r < 1`` stands for the fractional part of
``r*t`` at integer ``t``; since only integer ``t`` is meaningful, ``r`` is
kept modulo 1 and ``r = 0`` collapses to the zero atom.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, lcm
from typing import Iterable, Mapping

Monomial = tuple  # sorted tuple of (r: Fraction, power: int)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    powers = dict(a)
    for r, p in b:
        powers[r] = powers.get(r, 0) + p
    return tuple(sorted(powers.items()))


def frac_part(x: Fraction) -> Fraction:
    return x - floor(x)


class StepPoly:
    """Polynomial with rational coefficients in atoms ``{r t}``.

    Immutable; the internal mapping is canonical (no zero coefficients,
    atoms reduced to ``0 < r < 1``), so equality is structural.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def const(cls, c) -> "StepPoly":
        return cls({(): Fraction(c)})

    @classmethod
    def atom(cls, r) -> "StepPoly":
        return atom_canon(r)

    @classmethod
    def linear(cls, coeffs: Mapping[Fraction, Fraction], constant=0) -> "StepPoly":
        """``constant + sum c_r {r t}`` with ``r`` taken mod 1."""
        terms: dict = {}
        if constant:
            terms[()] = Fraction(constant)
        for r, c in coeffs.items():
            r = frac_part(Fraction(r))
            if r and c:
                key = ((r, 1),)
                terms[key] = terms.get(key, 0) + Fraction(c)
        return cls(terms)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def split_constant(self) -> tuple[Fraction, "StepPoly"]:
        rest = {m: c for m, c in self._terms.items() if m != ()}
        return self.constant_term(), StepPoly(rest)

    def atoms(self) -> set[Fraction]:
        return {r for m in self._terms for r, _ in m}

    def degree(self) -> int:
        return max((sum(p for _, p in m) for m in self._terms), default=0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = StepPoly.const(other)
        if not isinstance(other, StepPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, StepPoly):
            other = StepPoly.const(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return StepPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return StepPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, StepPoly) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "StepPoly":
        c = Fraction(c)
        if not c:
            return ZERO
        return StepPoly({m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, StepPoly):
            return self.scale(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return StepPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self.scale(1 / Fraction(c))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a step polynomial")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def evaluate(self, t: int) -> Fraction:
        vals: dict = {}
        total = Fraction(0)
        for mono, c in self._terms.items():
            v = c
            for r, p in mono:
                if r not in vals:
                    vals[r] = frac_part(r * t)
                v *= vals[r] ** p
            total += v
        return total

    __call__ = evaluate

    def period(self) -> int:
        return lcm(1, *(r.denominator for r in self.atoms()))

    def sorted_items(self):
        def key(item):
            mono, _ = item
            return (sum(p for _, p in mono), tuple((-p, r) for r, p in mono))
        return sorted(self._terms.items(), key=key)

    def to_text(self, var: str = "t") -> str:
        return render_text(self, var)

    def to_json(self) -> list[dict]:
        return [
            {"coeff": str(c), "atoms": [{"r": str(r), "pow": p} for r, p in mono]}
            for mono, c in self.sorted_items()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "StepPoly":
        total = ZERO
        for entry in data:
            mono = ONE.scale(Fraction(entry["coeff"]))
            for a in entry["atoms"]:
                mono = mono * atom_canon(Fraction(a["r"])) ** int(a["pow"])
            total = total + mono
        return total

    def __repr__(self):
        return f"StepPoly({self.to_text('T')})"


ZERO = StepPoly()
ONE = StepPoly.const(1)


def atom_canon(k) -> StepPoly:
    """``{k t}`` as a step polynomial; zero when ``k`` is an integer."""
    r = frac_part(Fraction(k))
    if r == 0:
        return ZERO
    return StepPoly({((r, 1),): Fraction(1)})


def _atom_text(r: Fraction, var: str) -> str:
    num = "" if r.numerator == 1 else str(r.numerator)
    return f"{{{num}{var}/{r.denominator}}}"


def render_text(p: StepPoly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for mono, c in p.sorted_items():
        atoms = "*".join(_atom_text(r, var) + (f"^{k}" if k > 1 else "") for r, k in mono)
        mag = abs(c)
        if atoms:
            body = atoms if mag == 1 else f"{mag}*{atoms}"
        else:
            body = str(mag)
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"\s*([+-])?\s*([^+\-]+)")
_ATOM = re.compile(r"\{(\d*)([A-Za-z])/(\d+)\}(?:\^(\d+))?$")


def parse_text(text: str) -> StepPoly:
    """Inverse of :func:`render_text`."""
    text = text.strip()
    if text == "0":
        return ZERO
    total = ZERO
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or not m.group(2).strip():
            raise ValueError(f"cannot parse step polynomial at {text[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        term = ONE.scale(sign)
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            am = _ATOM.match(factor)
            if am:
                r = Fraction(int(am.group(1) or 1), int(am.group(3)))
                term = term * atom_canon(r) ** int(am.group(4) or 1)
            else:
                term = term.scale(Fraction(factor))
        total = total + term
    return total


@dataclass
class QuasiPolynomial:
    """``E(a; t) = sum_m t^m E_m(t)`` for the requested set of ``m``."""

    a: tuple[int, ...]
    N: int
    coeffs: dict[int, StepPoly] = field(default_factory=dict)

    def evaluate(self, t: int) -> Fraction:
        return sum((Fraction(t) ** m * p.evaluate(t) for m, p in self.coeffs.items()), Fraction(0))

    __call__ = evaluate

    def period(self, m: int) -> int:
        return self.coeffs[m].period()

    def to_dict(self) -> dict:
        return {
            "a": list(self.a),
            "N": self.N,
            "coefficients": {str(m): self.coeffs[m].to_json() for m in sorted(self.coeffs)},
            "lcm": lcm(*self.a),
            "periods": {str(m): self.coeffs[m].period() for m in sorted(self.coeffs)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str | Mapping) -> "QuasiPolynomial":
        data = json.loads(text) if isinstance(text, str) else text
        coeffs = {int(m): StepPoly.from_json(mono) for m, mono in data["coefficients"].items()}
        return cls(tuple(data["a"]), int(data["N"]), coeffs)

    def to_text(self) -> str:
        lines = [f"a = ({', '.join(map(str, self.a))}), N = {self.N}"]
        for m in sorted(self.coeffs, reverse=True):
            lines.append(f"E_{m}(t) = {self.coeffs[m].to_text()}")
        terms = []
        for m in sorted(self.coeffs, reverse=True):
            p = self.coeffs[m]
            if p.is_zero():
                continue
            power = "" if m == 0 else (" t" if m == 1 else f" t^{m}")
            body = p.to_text()
            terms.append(f"({body}){power}" if power and len(p.terms) > 1 else f"{body}{power}")
        lines.append("E(t) = " + (" + ".join(terms) if terms else "0"))
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "QuasiPolynomial":
        header = re.search(r"a = \(([^)]*)\), N = (\d+)", text)
        if not header:
            raise ValueError("missing header line")
        a = tuple(int(x) for x in header.group(1).split(","))
        coeffs = {}
        for m, body in re.findall(r"^E_(\d+)\(t\) = (.*)$", text, flags=re.M):
            coeffs[int(m)] = parse_text(body)
        return cls(a, int(header.group(2)), coeffs)
