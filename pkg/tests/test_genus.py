from __future__ import annotations

from fractions import Fraction

import pytest

from dessin_toda.algebra import FGEN, FIELD
from dessin_toda.genus import (
    CATALOG,
    FR,
    catalog_check,
    d_u,
    d_v,
    f0_assemble,
    f0_checks,
    f1_checks,
    f1_evaluate,
    frobenius_checks,
    genus_correlator_T,
    hodograph_solve,
    loop_equation_check_genus1,
    loop_equation_residual,
    omega0,
    phi_omega_g,
    split,
    theta1,
    theta2,
)

V, E, U, S, A, GAMMA = FR.gens


def test_theta_low():
    assert theta2(0).rat == V and not theta2(0).logs
    assert theta2(1).rat == V**2 / 2 + E
    assert theta1(0).rat == U
    assert theta1(1).rat == V * U


def test_theta_has_no_gamma():
    for p in range(5):
        assert theta1(p).rat.diff(GAMMA) == 0


def test_omega_00():
    assert omega0(0, 0).rat == E


def test_g0():
    assert phi_omega_g(0)[2].rat == -(A / 2) * V + (A / 2) * S


def test_sqrt_reduction():
    assert split(S * S) == (V**2 - 4 * E, FR.zero)
    assert d_v(S) == V / S
    assert d_u(S) == -2 * E / S


def test_frobenius_identities():
    assert all(frobenius_checks(3).values())


@pytest.fixture(scope="module")
def f0checks():
    return f0_checks(4)


def test_genus_zero_identities(f0checks):
    failed = [k for k, ok in f0checks.items() if not ok]
    assert not failed


def test_genus_zero_constant():
    X, A_ = FGEN["x"], FGEN["a"]
    F = f0_assemble(3, 4)
    assert F.logs["log x"] == X**2 / 2
    assert F.logs["log(x+a)"] == (X + A_) ** 2 / 2
    assert F.logs["log a"] == -A_**2 / 2
    assert not F.logs["log(-1)"]
    assert F.series.constant_term() == FIELD(Fraction(-3, 2)) * X * (X + A_)


def test_hodograph_first_derivatives():
    sol = hodograph_solve(3, 4)
    zero = sol.space.zero_exponent()
    one = list(zero)
    one[0] = 1
    X, A_ = FGEN["x"], FGEN["a"]
    assert sol.vt.coefficient(tuple(one)) == 2 * X + A_
    assert sol.ut.coefficient(tuple(one)) == 2


def test_genus_one():
    assert all(f1_checks(4).values())


def test_genus_one_wrong_u_coefficient():
    good = f1_evaluate(4)
    bad = f1_evaluate(4, Fraction(-1, 12))
    assert good.series != bad.series or good.logs != bad.logs


def test_correlator_map():
    from dessin_toda.algebra import a, x

    assert genus_correlator_T((1, 0, 0, 0), 0) == x * (x + a)
    assert genus_correlator_T((1, 0, 0, 0), 1) == 0


def test_loop_equation():
    assert loop_equation_check_genus1()
    assert not loop_equation_check_genus1(Fraction(-1, 12))
    assert not loop_equation_check_genus1(source="printed")
    even, odd = loop_equation_residual()
    assert not even and not odd


def test_catalog():
    res = catalog_check()
    assert set(res) >= {row.name for row in CATALOG}
    assert all(res.values())
