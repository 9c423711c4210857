from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dessin_toda.algebra import (
    FIELD,
    Mat2,
    LaurentTail,
    SeriesSpace,
    as_polynomial,
    cyclic_orders,
    n,
    ratfun,
    render,
    substitute,
    w,
)

SP = SeriesSpace.power_sums(4)
P1, P2 = SP.var("p1"), SP.var("p2")


def test_exp_of_zero_is_one():
    assert SP.series({}).exp() == SP.const(Fraction(1))


def test_exp_p1_cutoff_two():
    sp = SeriesSpace.power_sums(2)
    p1 = sp.var("p1")
    assert p1.exp() == sp.const(Fraction(1)) + p1 + p1 * p1 * Fraction(1, 2)


def test_exp_needs_zero_constant():
    with pytest.raises(ValueError):
        (SP.const(Fraction(1)) + P1).exp()


def test_log_needs_unit_constant():
    with pytest.raises(ValueError):
        P1.log()


def test_sqrt_perfect_square():
    one = SP.const(Fraction(1))
    assert (one + P1 * 2 + P1 * P1).sqrt() == one + P1


def test_derivative():
    assert (P1 * P2).derive("p2") == P1


def test_truncation_at_cutoff():
    assert (P2 * P2 * P2).is_zero()
    assert not (P2 * P2).is_zero()


def test_inverse_of_non_unit_raises():
    with pytest.raises(ZeroDivisionError):
        P1.inverse()


def test_bad_space():
    with pytest.raises(ValueError):
        SeriesSpace(["p1"], [0], 3)
    with pytest.raises(ValueError):
        SeriesSpace(["p1", "p2"], [1], 3)


coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def series(draw, constant=None):
    terms = {}
    for e in SP.exponents():
        if sum(e) == 0:
            continue
        c = draw(coeff)
        if c:
            terms[e] = c
    s = SP.series(terms)
    if constant is not None:
        s = s + SP.const(Fraction(constant))
    return s


@settings(max_examples=25, deadline=None)
@given(series())
def test_exp_log_inverse(s):
    assert s.exp().log() == s


@settings(max_examples=25, deadline=None)
@given(series(constant=1))
def test_log_exp_inverse(s):
    assert s.log().exp() == s


@settings(max_examples=25, deadline=None)
@given(series(constant=1), series(constant=1))
def test_log_of_product(s, t):
    assert (s * t).log() == s.log() + t.log()


@settings(max_examples=25, deadline=None)
@given(series(constant=1))
def test_sqrt_squares_back(s):
    r = s.sqrt()
    assert r * r == s


@settings(max_examples=25, deadline=None)
@given(series(constant=2))
def test_inverse(s):
    assert s * s.inverse() == SP.const(Fraction(1))


def test_rational_functions_are_reduced():
    f = ratfun(n * n - w * w, n - w)
    assert as_polynomial(f) == n + w
    with pytest.raises(ValueError):
        as_polynomial(ratfun(1, n))


def test_substitute_simultaneous():
    assert substitute(n * w, {n: w, w: n}) == n * w
    assert substitute(n + 2 * w, {w: n + 1}) == 3 * n + 2


def test_render_canonical():
    assert render(Fraction(3, 6)) == "1/2"
    assert render(n * w) == "n*w"


def test_laurent_tail_product():
    h = LaurentTail([1, 1])
    assert (h * h)[1] == 2
    assert (h * h)[0] == 1


def test_mat2_trace_det():
    m = Mat2(((FIELD(n), FIELD(1)), (FIELD(w), FIELD(0))))
    assert m.trace() == FIELD(n)
    assert m.det() == -FIELD(w)


def test_cyclic_orders_count():
    assert [len(list(cyclic_orders(m))) for m in range(2, 6)] == [1, 2, 6, 24]
    with pytest.raises(ValueError):
        list(cyclic_orders(1))
