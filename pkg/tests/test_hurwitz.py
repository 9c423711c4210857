from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import pytest

from dessin_toda.hurwitz import (
    MAX_DEGREE,
    HurwitzQuery,
    admissible_bridges,
    hurwitz_cdoc_coefficients,
    monotone_table,
    strictly_monotone_hurwitz,
    verify_dessin_hurwitz,
)
from dessin_toda.lue import cdoc_coefficients
from dessin_toda.partitions import (
    Permutation,
    compose,
    cycle_type,
    is_transitive,
    partition,
    permutations_of_type,
)


def q(g, mu, nu):
    return HurwitzQuery(g, partition(mu), partition(nu))


def test_examples():
    assert strictly_monotone_hurwitz(q(0, (1,), (1,))) == 1
    assert strictly_monotone_hurwitz(q(0, (2,), (2,))) == 1
    assert strictly_monotone_hurwitz(q(0, (1, 1), (2,))) == 1


def test_monotonicity_forces_zero():
    # two transpositions in degree 2 cannot have increasing larger entries
    assert strictly_monotone_hurwitz(q(0, (1, 1), (1, 1))) == 0
    assert _naive(0, (1, 1), (1, 1)) == 0


def test_degree_cap():
    with pytest.raises(ValueError):
        strictly_monotone_hurwitz(q(0, (1,) * (MAX_DEGREE + 1), (MAX_DEGREE + 1,)))


def _naive(g, mu, nu):
    # independent slow count: all transposition tuples, filtered afterwards
    d = sum(mu)
    r = 2 * g - 2 + len(mu) + len(nu)
    if r < 0:
        return 0
    transpositions = list(combinations(range(d), 2))
    total = 0
    for alpha in permutations_of_type(mu):
        for taus in product(transpositions, repeat=r):
            if any(taus[i][1] >= taus[i + 1][1] for i in range(r - 1)):
                continue
            perm = alpha
            gens = [alpha]
            for s, t in taus:
                tp = list(range(d))
                tp[s], tp[t] = t, s
                tp = Permutation(tp)
                perm = compose(perm, tp)
                gens.append(tp)
            if cycle_type(perm) == partition(nu) and is_transitive(gens, d):
                total += 1
    return total


@pytest.mark.parametrize(
    "g,mu,nu",
    [(0, (2, 1), (3,)), (0, (2, 1), (2, 1)), (1, (3,), (3,)), (0, (1, 1, 1), (3,)), (0, (2, 2), (3, 1)), (1, (2, 1), (3,))],
)
def test_against_naive(g, mu, nu):
    assert strictly_monotone_hurwitz(q(g, mu, nu)) == _naive(g, mu, nu)


def test_table_workers_agree():
    assert monotone_table((3, 1), workers=1) == monotone_table((3, 1), workers=2)


def test_bridge_examples():
    for mu, g, l, val in [((1,), 0, 1, Fraction(1)), ((2,), 0, 1, Fraction(1, 2)), ((1, 1), 0, 1, Fraction(1))]:
        res = verify_dessin_hurwitz(mu, g, l)
        assert res.equal and res.lhs == res.rhs == val


@pytest.mark.parametrize("mu,g,l", [t for t in admissible_bridges(4, 1)])
def test_bridge_weight_four(mu, g, l):
    assert verify_dessin_hurwitz(mu, g, l).equal


@pytest.mark.parametrize("mu", [(2,), (3,), (2, 1), (2, 2), (3, 1)])
def test_cdoc(mu):
    assert hurwitz_cdoc_coefficients(mu) == cdoc_coefficients(mu)
