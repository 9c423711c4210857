from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dessin_toda.algebra import a, substitute, u, v, x
from dessin_toda.oracles import (
    connected_from_Z,
    cut_and_join_Z,
    cut_and_join_Z_laguerre,
    dilaton_check,
    homogeneity_residual,
    random_series,
    schur_Z,
    virasoro_apply,
    virasoro_commutator_check,
)

D = 6


def test_cut_and_join_low_weights():
    Z = cut_and_join_Z(3)
    assert Z.constant_term() == 1
    assert Z.weight_part(1) == Z.space.var("p1", u * v)


def test_cut_and_join_equals_schur():
    assert cut_and_join_Z(D) == schur_Z(D)


def test_laguerre_is_substitution():
    Zl = cut_and_join_Z_laguerre(D)
    Z = cut_and_join_Z(D).map_coefficients(lambda c: substitute(c, {u: x, v: x + a}))
    assert Zl == Z
    assert Zl.weight_part(1) == Zl.space.var("p1", x * (x + a))


def test_schur_first_term():
    assert schur_Z(1).weight_part(1) == schur_Z(1).space.var("p1", u * v)


@pytest.mark.parametrize("which", ["dessin", "lue1"])
@pytest.mark.parametrize("b", range(4))
def test_virasoro_annihilation(which, b):
    Z = cut_and_join_Z(D) if which == "dessin" else cut_and_join_Z_laguerre(D)
    image, trusted = virasoro_apply(which, b, Z)
    assert trusted >= D - b - 1
    assert image.is_zero()


def test_virasoro_detects_perturbation():
    Z = cut_and_join_Z(D)
    bad = Z + Z.space.monomial((0, 1, 0, 0, 0, 0), Fraction(1))
    image, _ = virasoro_apply("dessin", 0, bad)
    assert not image.is_zero()


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["dessin", "lue1"]))
def test_commutator_on_random_series(seed, which):
    assert virasoro_commutator_check(which, 1, 2, D=7, seed=seed)
    assert virasoro_commutator_check(which, 0, 1, D=7, seed=seed)


def test_random_series_reproducible():
    assert random_series(5, 3) == random_series(5, 3)


def test_homogeneity():
    F = connected_from_Z(cut_and_join_Z(D, with_eps=True))
    assert homogeneity_residual(F).is_zero()


def test_homogeneity_detects_perturbation():
    F = connected_from_Z(cut_and_join_Z(D, with_eps=True))
    bad = F + F.space.var("p2")
    assert not homogeneity_residual(bad).is_zero()


def test_dilaton():
    assert dilaton_check(5)
