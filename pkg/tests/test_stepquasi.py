from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from denumerant.stepquasi import ONE, ZERO, QuasiPolynomial, StepPoly, atom_canon, parse_text, render_text

F = Fraction


def A(r):
    return atom_canon(F(r))


rationals = st.builds(F, st.integers(-12, 12), st.integers(1, 8))
atoms = st.builds(F, st.integers(1, 11), st.sampled_from([2, 3, 4, 6, 12]))


@st.composite
def steppolys(draw):
    out = ZERO
    for _ in range(draw(st.integers(0, 4))):
        mono = ONE
        for _ in range(draw(st.integers(0, 2))):
            mono = mono * A(draw(atoms))
        out = out + mono.scale(draw(rationals))
    return out


def test_atom_canon_examples():
    assert A(F(-1, 3)) == A(F(2, 3))
    assert A(F(-1, 3)).atoms() == {F(2, 3)}
    assert A(5) == ZERO
    assert A(F(7, 6)).atoms() == {F(1, 6)}


@given(rationals, st.integers(-20, 20))
def test_atom_canon_shift(k, n):
    assert A(k) == A(k + n)


def test_arithmetic_examples():
    half = A(F(1, 2))
    assert (half + 1) ** 2 == half ** 2 + half.scale(2) + 1
    assert (half * ZERO).is_zero()
    x = A(F(2, 3)).scale(6) - 9
    got = (x ** 2 / 2 - F(15, 4)).scale(F(3, 324))
    assert got == A(F(2, 3)) ** 2 / 6 - A(F(2, 3)) / 2 + F(49, 144)
    with pytest.raises(ValueError):
        half ** -1


def test_evaluation_examples():
    # {16/3} = 16/3 - 5
    assert A(F(2, 3)).evaluate(8) == F(1, 3)
    assert A(F(1, 3)).evaluate(8) == F(2, 3)
    assert StepPoly.const(F(49, 144))(123) == F(49, 144)
    e1 = F(49, 144) - A(F(2, 3)) / 2 + A(F(2, 3)) ** 2 / 6
    # 49/144 - (1/2)(1/3) + (1/6)(1/9)
    assert e1.evaluate(8) == F(83, 432)


def test_periods():
    assert StepPoly.const(5).period() == 1
    assert ZERO.period() == 1
    assert (F(1, 24) - A(F(2, 3)) / 36).period() == 3
    assert (A(F(1, 2)) * A(F(2, 3))).period() == 6


def test_quasi_eval():
    # floor(t/2) + 1 = t/2 + 1 - {t/2}
    e = QuasiPolynomial((1, 2), 1, {1: StepPoly.const(F(1, 2)), 0: ONE - A(F(1, 2))})
    assert [e(t) for t in range(6)] == [1, 1, 2, 2, 3, 3]


@given(steppolys(), steppolys(), steppolys())
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO


@given(steppolys(), steppolys(), st.integers(0, 50))
def test_evaluation_is_homomorphism(p, q, t):
    assert (p * q)(t) == p(t) * q(t)
    assert (p + q)(t) == p(t) + q(t)


@settings(max_examples=50)
@given(steppolys(), st.lists(st.integers(0, 10**6), min_size=100, max_size=100))
def test_period_invariance(p, ts):
    n = p.period()
    assert all(p(t) == p(t + n) for t in ts)


@given(steppolys())
def test_text_roundtrip(p):
    assert parse_text(render_text(p)) == p


@given(steppolys())
def test_json_roundtrip(p):
    assert StepPoly.from_json(p.to_json()) == p


def test_render_style():
    p = F(13, 36) - A(F(1, 2)) ** 2 / 6 + A(F(2, 3)) ** 2 / 6 - A(F(2, 3)) / 2
    text = render_text(p)
    assert "{t/2}^2" in text and "{2t/3}" in text
    assert parse_text(text) == p
    assert p.to_json()[0].keys() == {"coeff", "atoms"}


def test_quasipolynomial_roundtrips():
    q = QuasiPolynomial((2, 3), 1, {1: StepPoly.const(F(1, 6)), 0: ONE - A(F(1, 2)) / 2 + A(F(2, 3)) ** 2})
    assert QuasiPolynomial.from_json(q.to_json()).coeffs == q.coeffs
    back = QuasiPolynomial.from_text(q.to_text())
    assert back.a == q.a and back.N == q.N and back.coeffs == q.coeffs
