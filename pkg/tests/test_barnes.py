from __future__ import annotations

from fractions import Fraction

from dessin_toda.algebra import FGEN, FIELD
from dessin_toda.barnes import (
    barnes_log_asymp,
    bernoulli,
    constant_dilaton_defect,
    constant_term_agreement,
    corrected_constant_term,
    correction_factor_log,
    deftau3_initial_check,
)

X, A = FGEN["x"], FGEN["a"]


def test_bernoulli():
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_barnes_tail():
    e = barnes_log_asymp("x", 2)
    assert e[2]["1"] == Fraction(-1, 240) / X**2
    assert e[4]["1"] == Fraction(1, 1008) / X**4


def test_constant_term_blocks():
    c = corrected_constant_term(1)
    lead = c[-2]
    assert lead["log x"] == X**2 / 2
    assert lead["log(x+a)"] == (X + A) ** 2 / 2
    assert lead["log a"] == -A**2 / 2
    assert lead["1"] == -Fraction(3, 2) * X * (X + A)
    zero = c[0]
    assert zero["log x"] == zero["log(x+a)"] == FIELD(Fraction(-1, 12))
    assert zero["log a"] == FIELD(Fraction(1, 12))
    assert zero["zeta'(-1)"] == 1
    two = c[2]
    assert two["1"] == Fraction(-1, 240) * (1 / X**2 + 1 / (X + A) ** 2 - 1 / A**2)


def test_shift_identity():
    assert deftau3_initial_check(4).ok


def test_constant_term_agreement():
    assert constant_term_agreement(4).ok
    assert not constant_term_agreement(2, "printed").ok


def test_log_eps_cancels():
    f = correction_factor_log(4)
    for k in range(-2, 9):
        assert f[k]["log eps"] == 0
        assert f[k]["log 2pi"] == 0


def test_dilaton_defect():
    assert constant_dilaton_defect(3) == X * (X + A) / FGEN["eps"] ** 2
