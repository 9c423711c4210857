from __future__ import annotations

from fractions import Fraction

import pytest

from dessin_toda.algebra import FIELD, a, n, substitute, w
from dessin_toda.lue import (
    cdoc_coefficients,
    conjugating_scale,
    conjugation_check,
    ggr_A,
    ggr_B,
    ggr_resolvent,
    lue_correlator,
    lue_correlator_dessin,
    lue_correlator_resolvent,
    m_matrix,
    pochhammer,
    printed_conjugating_scale,
)


def test_pochhammer():
    assert pochhammer(n, 0) == 1
    assert pochhammer(n, 3) == n * (n + 1) * (n + 2)
    assert pochhammer(n, 3, rising=False) == n * (n - 1) * (n - 2)


def test_ggr_zero():
    assert ggr_A(0) == n
    assert ggr_B(0) == 1


def test_m_matrix_entries():
    M = m_matrix(2)
    assert M.coeffs[2][0, 0] == n * w
    assert M.coeffs[2][0, 1] == -n * w * (n + w + 1)


def test_conjugation():
    res = conjugation_check(8)
    assert res.ok
    assert conjugation_check(3).ok


def test_conjugation_scale():
    assert conjugating_scale() == FIELD(-1) / (n * (n + a))


def test_conjugation_controls():
    falling = conjugation_check(8, rising=False)
    assert not falling.ok and falling.order == 3
    printed = conjugation_check(8, scale=printed_conjugating_scale())
    assert not printed.ok and printed.order == 1 and printed.entry == (0, 1)  # zero-based (1,2) entry


def test_lue_examples():
    assert lue_correlator((1,)) == n * (n + a)
    assert lue_correlator((2,)) == n * (n + a) * (2 * n + a)
    assert lue_correlator((1, 1)) == n * (n + a)


def test_wishart_third_moment():
    # E tr W^3 for square Wishart: n^2 (5 n^2 + 1)
    assert substitute(lue_correlator((3,)), {a: 0}) == n**2 * (5 * n**2 + 1)


@pytest.mark.parametrize("mu", [(1,), (3,), (2, 1), (2, 2), (3, 1, 1), (4, 2)])
def test_two_routes(mu):
    assert lue_correlator_dessin(mu) == lue_correlator_resolvent(mu)


@pytest.mark.parametrize("mu", [(2,), (3, 1), (2, 2, 1)])
def test_wishart_symmetry(mu):
    c = lue_correlator(mu)
    assert substitute(c, {n: n + a, a: -a}) == c


def test_cdoc_small():
    assert cdoc_coefficients((2,)) == {(0, 1): Fraction(1), (0, 2): Fraction(1)}


def test_resolvent_trace_one():
    R = ggr_resolvent(6)
    assert R.coeffs[0].trace() == 1
    for k in range(1, 7):
        assert R.coeffs[k].trace() == 0
