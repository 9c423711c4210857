"""Registry of exact verification checks, grouped into suites.

Each check is a module-level function returning ``(ok, detail)``; ``detail``
names the first counterexample on failure.  The registry is a flat ordered
list so that reports do not depend on execution order or thread count.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from .algebra import n, render, substitute, u, v, w
from .partitions import Partition, partitions_of

__all__ = [
    "SUITES",
    "Orders",
    "Check",
    "CheckResult",
    "registry",
    "run_check",
    "run_checks",
]

SUITES = ("oracles", "virasoro", "lue", "toda", "hurwitz", "barnes", "genus")

Outcome = Tuple[bool, str]


@dataclass(frozen=True)
class Orders:
    weight: int = 8
    lambda_order: int = 10
    eps_order: int = 8
    max_parts: int = 5
    hurwitz_weight: int = 6
    hurwitz_genus: int = 2
    genus_weight: int = 5
    threads: int = 1


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    identity: str
    fn: Callable[..., Outcome]
    args: Tuple = field(default_factory=tuple)
    expect: bool = True  # False marks a negative control


class CheckResult(NamedTuple):
    suite: str
    name: str
    identity: str
    passed: bool
    detail: str
    seconds: float


# --------------------------------------------------------------------------
# oracles


@lru_cache(maxsize=None)
def _log_cut_and_join(D: int):
    from .oracles import cut_and_join_Z

    return cut_and_join_Z(D).log()


@lru_cache(maxsize=None)
def _log_schur(D: int):
    from .oracles import schur_Z

    return schur_Z(D).log()


def _exponent(mu: Partition, D: int) -> Tuple[int, ...]:
    e = [0] * D
    for part in mu:
        e[part - 1] += 1
    return tuple(e)


def _aut(mu: Partition) -> int:
    out = 1
    for k in set(mu):
        out *= factorial(mu.count(k))
    return out


def _uv_to_nw(p):
    return substitute(p, {u: n, v: w})


def oracle_weight(d: int, D: int, max_parts: int) -> Outcome:
    """Cyclic kernel formula vs cut-and-join vs Schur, all mu of weight d."""
    from .dessins import correlator

    cj, sz = _log_cut_and_join(D), _log_schur(D)
    count = 0
    for mu in partitions_of(d):
        if len(mu) > max_parts:
            continue
        e = _exponent(mu, D)
        a = correlator(mu)
        b = _uv_to_nw(cj.coefficient(e)) * _aut(mu)
        c = _uv_to_nw(sz.coefficient(e)) * _aut(mu)
        if not (a == b == c):
            return False, f"mu={list(mu)}: cyclic={render(a)} cut-and-join={render(b)} schur={render(c)}"
        count += 1
    return True, f"{count} correlators"


def mr_weight(d: int, max_parts: int) -> Outcome:
    """Matrix-resolvent n-point formula at the dessin initial data vs the cyclic kernel formula."""
    from .dessins import correlator
    from .toda import mr_n_point

    count = 0
    for mu in partitions_of(d):
        if not 2 <= len(mu) <= max_parts:
            continue
        a, b = correlator(mu), mr_n_point(mu)
        if a != b:
            return False, f"mu={list(mu)}: cyclic={render(a)} resolvent={render(b)}"
        count += 1
    return True, f"{count} correlators"


def lue_weight(d: int, max_parts: int) -> Outcome:
    """Dessin route vs Laguerre resolvent route for LUE correlators."""
    from .lue import RouteMismatch, lue_correlator

    count = 0
    for mu in partitions_of(d):
        if len(mu) > max_parts:
            continue
        try:
            lue_correlator(mu)
        except RouteMismatch as exc:
            return False, str(exc)
        count += 1
    return True, f"{count} correlators"


# --------------------------------------------------------------------------
# virasoro and homogeneity


@lru_cache(maxsize=None)
def _Z(which: str, D: int):
    from .oracles import cut_and_join_Z, cut_and_join_Z_laguerre

    return cut_and_join_Z(D) if which == "dessin" else cut_and_join_Z_laguerre(D)


def virasoro_annihilation(which: str, b: int, trusted: int) -> Outcome:
    from .oracles import virasoro_apply

    Z = _Z(which, trusted + b + 1)
    image, top = virasoro_apply(which, b, Z)
    if not image.is_zero():
        e = min(image.terms, key=image.space.weight)
        return False, f"L_{b} Z has coefficient {render(image.terms[e])} at {e}"
    return True, f"zero through weight {top}"


def virasoro_commutators(which: str, D: int, seeds: int) -> Outcome:
    from .oracles import virasoro_commutator_check

    pairs = [(1, 2), (0, 1), (0, 2), (1, 3), (2, 3), (0, 4)]
    for seed in range(seeds):
        for m, k in pairs:
            if not virasoro_commutator_check(which, m, k, D, seed):
                return False, f"[L_{m}, L_{k}] != {m - k} L_{m + k} (seed {seed})"
    return True, f"{len(pairs) * seeds} commutators"


def virasoro_commutator_sign_control(D: int) -> Outcome:
    """[L_1, L_2] = +L_3 must fail."""
    from .oracles import random_series, virasoro_operator

    f = random_series(D, 0)
    L = [virasoro_operator(f.space, "dessin", b) for b in range(4)]
    top = D - 5
    ok = (L[1](L[2](f)) - L[2](L[1](f))).truncate(top) == L[3](f).truncate(top)
    return ok, "sign-flipped commutator"


def homogeneity(D: int) -> Outcome:
    from .oracles import cut_and_join_Z, homogeneity_residual

    res = homogeneity_residual(cut_and_join_Z(D, with_eps=True).log())
    if not res.is_zero():
        e = min(res.terms, key=res.space.weight)
        return False, f"residual {render(res.terms[e])} at {e}"
    return True, f"zero through weight {D}"


def dilaton(D: int) -> Outcome:
    from .oracles import dilaton_check

    return dilaton_check(D), f"through weight {D - 1}"


# --------------------------------------------------------------------------
# lue


def conjugation(N: int, rising: bool, printed_scale: bool) -> Outcome:
    from .lue import conjugation_check, printed_conjugating_scale

    res = conjugation_check(N, rising, printed_conjugating_scale() if printed_scale else None)
    if res.ok:
        return True, f"identity through lambda^-{N}"
    return False, f"first failure at lambda^-{res.order}, entry ({res.entry[0] + 1},{res.entry[1] + 1})"


def resolvent_trace_det(N: int) -> Outcome:
    from .lue import ggr_resolvent, m_matrix

    for name, R in (("R_GGR", ggr_resolvent(N)), ("M", m_matrix(N))):
        tr, det = R.trace(), R.det()
        if tr[0] != 1 or any(tr[k] for k in range(1, N + 1)):
            return False, f"tr {name} != 1"
        if any(det[k] for k in range(N + 1)):
            return False, f"det {name} != 0"
    return True, f"through lambda^-{N}"


# --------------------------------------------------------------------------
# toda


def tau_structure(r: int) -> Outcome:
    from .toda import verify_tau_structure

    rep = verify_tau_structure(r)
    return rep.ok, "; ".join(rep.failures) or f"i, j <= {r}"


def jet_resolvent(N: int) -> Outcome:
    from .toda import check_resolvent_equations, solve_resolvent

    bad = check_resolvent_equations(solve_resolvent(N))
    return bad is None, f"first failing order {bad}" if bad is not None else f"through lambda^-{N}"


def product_formula(N: int) -> Outcome:
    from .toda import product_formula_check

    rep = product_formula_check(N)
    return rep.ok, rep.failure or f"through lambda^-{N}"


def kernel_bridge(order: int) -> Outcome:
    from .toda import kernel_bridge_check

    return kernel_bridge_check(order), f"bi-order ({order},{order})"


def eigen_equations(N: int) -> Outcome:
    from .toda import check_eigen_equations, check_wronskian

    a_ok, b_ok = check_eigen_equations(N)
    wr = check_wronskian(N)
    return a_ok and b_ok and wr, f"psi_A {a_ok}, psi_B {b_ok}, pairing {wr}"


def one_point_difference(jmax: int) -> Outcome:
    from .toda import one_point_difference_check

    return one_point_difference_check(jmax), f"j <= {jmax}"


# --------------------------------------------------------------------------
# hurwitz


def hurwitz_bridge(max_weight: int, max_genus: int, workers: int) -> Outcome:
    from .hurwitz import admissible_bridges, verify_dessin_hurwitz

    items = admissible_bridges(max_weight, max_genus)
    for mu, g, l in items:
        res = verify_dessin_hurwitz(mu, g, l, workers)
        if not res.equal:
            return False, f"mu={list(mu)} g={g} l={l}: dessins {render(res.lhs)} vs hurwitz {render(res.rhs)}"
    return True, f"{len(items)} triples"


def cdoc(max_weight: int, workers: int) -> Outcome:
    from .hurwitz import hurwitz_cdoc_coefficients
    from .lue import cdoc_coefficients

    count = 0
    for d in range(1, max_weight + 1):
        for mu in partitions_of(d):
            a, b = cdoc_coefficients(mu), hurwitz_cdoc_coefficients(mu, workers)
            if a != b:
                return False, f"mu={list(mu)}: lue {a} vs hurwitz {b}"
            count += 1
    return True, f"{count} partitions"


# --------------------------------------------------------------------------
# barnes


def deftau3(G: int) -> Outcome:
    from .barnes import deftau3_initial_check

    res = deftau3_initial_check(G)
    return res.ok, f"failed at eps^{res.failed_order}" if not res.ok else f"through eps^{2 * G}"


def constant_term(G: int, prefactor: str) -> Outcome:
    from .barnes import constant_term_agreement

    res = constant_term_agreement(G, prefactor)
    return res.ok, "agree" if res.ok else f"difference {res.difference!r}"


# --------------------------------------------------------------------------
# genus


def _dict_outcome(results: Dict[str, bool]) -> Outcome:
    bad = [k for k, ok in results.items() if not ok]
    return not bad, ("failed: " + ", ".join(bad)) if bad else f"{len(results)} identities"


def frobenius(P: int) -> Outcome:
    from .genus import frobenius_checks

    return _dict_outcome(frobenius_checks(P))


def genus_zero(D: int) -> Outcome:
    from .genus import f0_checks

    return _dict_outcome(f0_checks(D))


def genus_one(D: int) -> Outcome:
    from .genus import f1_checks

    return _dict_outcome(f1_checks(D))


def loop_equation(u_coefficient: Fraction, source: str) -> Outcome:
    from .genus import loop_equation_residual

    even, odd = loop_equation_residual(u_coefficient, source)
    if even or odd:
        return False, f"residual even part {even}, odd part {odd}"
    return True, "residual 0"


def catalog() -> Outcome:
    from .genus import catalog_check

    return _dict_outcome(catalog_check())


# --------------------------------------------------------------------------
# registry


def registry(orders: Orders = Orders(), suites: Sequence[str] = SUITES) -> List[Check]:
    o = orders
    D, N, G = o.weight, o.lambda_order, max(1, o.eps_order // 2)
    checks: List[Check] = []
    add = checks.append
    if "oracles" in suites:
        for d in range(1, D + 1):
            add(Check("oracles", f"four-oracle weight {d}", "cyclic formula = cut-and-join = Schur",
                      oracle_weight, (d, D, o.max_parts)))
        for d in range(2, D + 1):
            add(Check("oracles", f"resolvent n-point weight {d}", "n-point resolvent formula = cyclic formula",
                      mr_weight, (d, o.max_parts)))
    if "virasoro" in suites:
        for which in ("dessin", "lue1"):
            for b in range(0, 5):
                add(Check("virasoro", f"L_{b} {which} form", "L_b Z = 0", virasoro_annihilation, (which, b, D)))
            add(Check("virasoro", f"commutators {which} form", "[L_m, L_n] = (m-n) L_{m+n}",
                      virasoro_commutators, (which, D, 2)))
        add(Check("virasoro", "commutator sign control", "[L_1, L_2] = +L_3 rejected",
                  virasoro_commutator_sign_control, (D,), expect=False))
        add(Check("virasoro", "homogeneity", "weighted homogeneity of log Z", homogeneity, (min(D, 6),)))
        add(Check("virasoro", "dilaton", "dilaton equation with corrected constant", dilaton, (min(D, 7),)))
    if "lue" in suites:
        for d in range(1, D + 1):
            add(Check("lue", f"two routes weight {d}", "dessin route = Laguerre resolvent route",
                      lue_weight, (d, o.max_parts)))
        add(Check("lue", "conjugation", "T R_GGR T^-1 = M", conjugation, (N, True, False)))
        add(Check("lue", "conjugation printed scale", "T = diag(1, -n/(n+alpha)) rejected",
                  conjugation, (N, True, True), expect=False))
        add(Check("lue", "conjugation falling factorial", "falling Pochhammer rejected",
                  conjugation, (N, False, False), expect=False))
        add(Check("lue", "trace and determinant", "tr R = 1, det R = 0", resolvent_trace_det, (N,)))
    if "toda" in suites:
        add(Check("toda", "jet resolvent", "Lambda(R) U = U R, tr R = 1, det R = 0", jet_resolvent, (min(N, 8),)))
        add(Check("toda", "tau structure", "Omega symmetric, tau-structure identities", tau_structure, (3,)))
        add(Check("toda", "product formula", "specialized R = wave product = M", product_formula, (6,)))
        add(Check("toda", "kernel bridge", "e^s D(lambda, mu) = Ahat(lambda, mu)", kernel_bridge, (8,)))
        add(Check("toda", "eigen-equations", "L psi = lambda psi, pairing", eigen_equations, (8,)))
        add(Check("toda", "one-point difference", "(Lambda-1)(j <tau_j>) = S_{j-1}", one_point_difference, (6,)))
    if "hurwitz" in suites:
        add(Check("hurwitz", "dessin-Hurwitz bridge", "N_{k,l} = aut/d! sum h_g",
                  hurwitz_bridge, (o.hurwitz_weight, o.hurwitz_genus, o.threads)))
        add(Check("hurwitz", "large-n expansion", "LUE (genus, c) coefficients = Hurwitz sums",
                  cdoc, (o.hurwitz_weight, o.threads)))
    if "barnes" in suites:
        add(Check("barnes", "shift identity", "(Lambda + Lambda^-1 - 2) F_const = log x + log(x+a)", deftau3, (G,)))
        add(Check("barnes", "constant term", "Barnes asymptotics = correction factor log", constant_term, (G, "lue")))
        add(Check("barnes", "printed prefactor", "eps^{v^2} (2 pi)^{-v} prefactor rejected",
                  constant_term, (G, "printed"), expect=False))
    if "genus" in suites:
        add(Check("genus", "Frobenius identities", "theta, Omega, phi, omega, g_p, h identities", frobenius, (4,)))
        add(Check("genus", "genus zero", "F0 from the hodograph solution = genus-0 correlators",
                  genus_zero, (o.genus_weight,)))
        add(Check("genus", "genus one", "F1 + c1 = genus-1 correlators", genus_one, (o.genus_weight,)))
        add(Check("genus", "loop equation", "genus-one loop equation", loop_equation, (Fraction(-1, 24), "corrected")))
        add(Check("genus", "loop equation -u/12", "perturbed F1 rejected",
                  loop_equation, (Fraction(-1, 12), "corrected"), expect=False))
        add(Check("genus", "loop equation printed source", "printed source term rejected",
                  loop_equation, (Fraction(-1, 24), "printed"), expect=False))
        add(Check("genus", "catalog", "initial-value curves", catalog, ()))
    return checks


def run_check(check: Check) -> CheckResult:
    start = time.perf_counter()
    try:
        ok, detail = check.fn(*check.args)
    except (ArithmeticError, ValueError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    passed = ok == check.expect
    if not check.expect:
        detail = ("control rejected: " if not ok else "control unexpectedly held: ") + detail
    return CheckResult(check.suite, check.name, check.identity, passed, detail, time.perf_counter() - start)


def run_checks(checks: Sequence[Check], threads: int = 1) -> List[CheckResult]:
    """Run checks; results keep registry order regardless of thread count."""
    if threads <= 1 or len(checks) <= 1:
        return [run_check(c) for c in checks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(run_check, checks))
