from __future__ import annotations

import pytest

from dessin_toda.algebra import n, w
from dessin_toda.dessins import correlator
from dessin_toda.toda import (
    JetRing,
    check_eigen_equations,
    check_resolvent_equations,
    check_wronskian,
    kernel_bridge_check,
    mr_n_point,
    omega_and_s,
    one_point_difference_check,
    product_formula_check,
    solve_resolvent,
    specialize_resolvent,
    time_to_power_sum,
    toda_flow,
    verify_tau_structure,
)
from dessin_toda.toda import _jet


def test_jet_window():
    J = JetRing(2)
    assert J.V(2) != J.V(-2)
    with pytest.raises((ValueError, KeyError, IndexError)):
        J.V(3)


def test_resolvent_equations():
    R = solve_resolvent(6)
    assert check_resolvent_equations(R) is None


def test_omega_00():
    o = omega_and_s(4)
    assert str(o.omega[(0, 0)]) == "W0"
    assert o.omega[(0, 1)] == o.omega[(1, 0)]


def test_toda_equation():
    J = _jet(3)  # flows are tied to the cached ring
    dV, dW = toda_flow(J, 0)
    assert dV == J.W(1) - J.W(0)
    assert dW == J.W(0) * (J.V(0) - J.V(-1))


def test_tau_structure():
    assert verify_tau_structure(3).ok


def test_specialized_entries():
    R = specialize_resolvent(3)
    assert R.coeffs[1][0, 1] == -n * w


def test_product_formula():
    assert product_formula_check(6)


def test_waves():
    assert check_eigen_equations(6) == (True, True)
    assert check_wronskian(6)
    assert kernel_bridge_check(6)


def test_one_point_difference():
    assert one_point_difference_check(5)


@pytest.mark.parametrize("mu", [(1, 1), (2, 1), (2, 2), (3, 1, 1)])
def test_mr_n_point(mu):
    assert mr_n_point(mu) == correlator(mu)


def test_time_to_power_sum():
    assert time_to_power_sum(0) == (1, 1)
    assert time_to_power_sum(2)[0] == 3
