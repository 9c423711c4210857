from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dessin_toda.algebra import RING, n, substitute, u, v, w
from dessin_toda.dessins import (
    AHatKernel,
    DessinCount,
    a_coeff,
    correlator,
    cyclic_sum_coefficient,
    genus_parts,
    h_series,
    m_point,
    n_kl,
    one_point,
)
from dessin_toda.oracles import connected_from_Z, correlators_from_log, cut_and_join_Z
from dessin_toda.partitions import partition

# Connected correlators read off from log(e^W 1) and frozen (uv -> nw).
FROZEN = {
    (1,): n * w,
    (2,): (n**2 * w + n * w**2) / 2,
    (1, 1): n * w,
    (3,): (n**3 * w + n * w**3 + n * w) / 3 + n**2 * w**2,
    (2, 1): n**2 * w + n * w**2,
    (1, 1, 1): 2 * n * w,
    (4,): (n**4 * w + n * w**4 + 5 * n**2 * w + 5 * n * w**2) / 4 + 3 * (n**3 * w**2 + n**2 * w**3) / 2,
    (2, 2): n**3 * w + 5 * n**2 * w**2 / 2 + n * w**3 + n * w / 2,
}


def test_a_coefficients():
    assert a_coeff(0, 0) == n * w
    assert a_coeff(1, 0) == n * w * (n + 1) * (w + 1) / 2
    assert a_coeff(0, 1) == -n * w * (n - 1) * (w - 1) / 2


def test_h_series():
    h = h_series(3)
    assert h[0] == 1
    assert h[1] == n * w
    assert h[2] == n * w * (n + 1) * (w + 1) / 2


def test_one_point():
    assert one_point(1) == n * w
    assert one_point(2) == n * w * (n + w) / 2
    with pytest.raises(ValueError):
        one_point(0)


@pytest.mark.parametrize("mu", sorted(FROZEN))
def test_frozen_correlators(mu):
    assert correlator(mu) == FROZEN[mu]


def test_frozen_against_cut_and_join():
    C = correlators_from_log(connected_from_Z(cut_and_join_Z(4)))
    for mu, val in FROZEN.items():
        assert substitute(C[partition(mu)], {u: n, v: w}) == val


def test_pure_pole_kernel_cancels():
    k = AHatKernel(4)
    k.A = [[RING.zero] * 5 for _ in range(5)]
    for e2 in range(4):
        assert cyclic_sum_coefficient((-e2 - 2, e2), kernel=k) == 0


def test_transposed_pairing_is_wrong():
    k = AHatKernel(4, transpose=True)
    assert cyclic_sum_coefficient((-2, -2), kernel=k) != n * w


def test_correlator_symmetric_in_insertions():
    assert correlator((3, 1, 2)) == correlator((1, 2, 3)) == m_point((2, 3, 1))


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=2, max_size=3))
def test_correlator_wishart_symmetry(mus):
    c = correlator(mus)
    assert substitute(c, {n: w, w: n}) == c


def test_n_kl_examples():
    assert n_kl((1,)) == [DessinCount(1, 1, 0, Fraction(1))]
    assert set(n_kl((2,))) == {DessinCount(2, 1, 0, Fraction(1, 2)), DessinCount(1, 2, 0, Fraction(1, 2))}
    assert n_kl((1, 1)) == [DessinCount(1, 1, 0, Fraction(1))]


def test_n_kl_weight_three_has_torus():
    assert DessinCount(1, 1, 1, Fraction(1, 3)) in n_kl((3,))


def test_genus_parts_sum_back():
    parts = genus_parts((2, 2))
    assert sum(parts.values()) == correlator((2, 2))
    assert set(parts) == {0, 1}
