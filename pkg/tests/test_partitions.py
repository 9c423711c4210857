from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from dessin_toda.partitions import (
    Permutation,
    character,
    compose,
    cycle_type,
    hooks_contents,
    is_transitive,
    partition,
    partitions_of,
    permutations_of_type,
    schur_in_power_sums,
    z_factor,
)


def test_partition_counts():
    assert partitions_of(0) == [()]
    assert len(partitions_of(4)) == 5
    assert len(partitions_of(10)) == 42


def test_partition_canonical():
    assert partition((1, 3, 2)) == (3, 2, 1)
    with pytest.raises(ValueError):
        partition((2, 0))


def test_hooks_contents():
    assert hooks_contents((1,)) == [(1, 0)]
    hc = hooks_contents((2, 1))
    assert sorted(h for h, _ in hc) == [1, 1, 3]
    assert sorted(c for _, c in hc) == [-1, 0, 1]


def _syt(shape):
    # standard Young tableaux by removing corners
    shape = tuple(p for p in shape if p)
    if not shape:
        return 1
    total = 0
    for i, p in enumerate(shape):
        if i + 1 == len(shape) or shape[i + 1] < p:
            total += _syt(shape[:i] + (p - 1,) + shape[i + 1:])
    return total


@pytest.mark.parametrize("mu", [(2, 2), (3, 1), (3, 2, 1), (4, 2), (2, 2, 1, 1)])
def test_hook_length_formula(mu):
    prod = 1
    for h, _ in hooks_contents(mu):
        prod *= h
    assert factorial(sum(mu)) // prod == _syt(mu)


def test_hook_product_22():
    prod = 1
    for h, _ in hooks_contents((2, 2)):
        prod *= h
    assert prod == 12


def test_schur_small():
    assert schur_in_power_sums((1,)) == {(1,): 1}
    assert schur_in_power_sums((2,)) == {(1, 1): Fraction(1, 2), (2,): Fraction(1, 2)}
    assert schur_in_power_sums((1, 1)) == {(1, 1): Fraction(1, 2), (2,): Fraction(-1, 2)}


@pytest.mark.parametrize("d", range(1, 7))
def test_character_orthogonality(d):
    parts = partitions_of(d)
    for lam in parts:
        for mu in parts:
            s = sum(Fraction(character(lam, nu) * character(mu, nu), z_factor(nu)) for nu in parts)
            assert s == (1 if lam == mu else 0)


@pytest.mark.parametrize("d", range(1, 7))
def test_character_dimension(d):
    for lam in partitions_of(d):
        assert character(lam, (1,) * d) == _syt(lam)


def test_cycle_type_and_transitivity():
    assert cycle_type(Permutation((1, 0, 2))) == (2, 1)
    assert is_transitive([(0,)], 1)
    assert not is_transitive([(1, 0, 2)], 3)
    assert is_transitive([(1, 2, 0)], 3)


@pytest.mark.parametrize("mu", [(1, 1, 1), (2, 1), (3,), (2, 2), (3, 1), (2, 1, 1)])
def test_permutations_of_type(mu):
    d = sum(mu)
    found = list(permutations_of_type(mu))
    assert len(found) == len(set(found)) == factorial(d) // z_factor(mu)
    assert all(cycle_type(p) == partition(mu) for p in found)


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(5)), st.permutations(range(5)))
def test_compose_preserves_conjugacy(p, q):
    p, q = Permutation(p), Permutation(q)
    qinv = Permutation(tuple(q.index(i) for i in range(5)))
    assert cycle_type(compose(qinv, p, q)) == cycle_type(p)
