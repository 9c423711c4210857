"""Independent constructions of the dessin partition function and the
linear constraints it satisfies.

All series live in p_1..p_D with weight(p_j) = j.  Coefficients are
polynomials in u, v (or x, a), with epsilon = 1 unless a routine says
otherwise; ``with_eps=True`` keeps epsilon as a symbol in the rational
function field.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import FGEN, FIELD, RING, SeriesSpace, TruncatedSeries, a, eps, substitute, u, v, x
from .partitions import Partition, hooks_contents, partition, partitions_of, schur_in_power_sums

__all__ = [
    "LinearOperator",
    "cut_and_join_operator",
    "cut_and_join_Z",
    "cut_and_join_Z_laguerre",
    "schur_Z",
    "virasoro_operator",
    "virasoro_apply",
    "trusted_weight",
    "connected_from_Z",
    "correlators_from_log",
    "homogeneity_residual",
    "dilaton_coupling_part",
    "dilaton_check",
    "random_series",
    "virasoro_commutator_check",
]

Term = Tuple[object, Tuple[int, ...], Tuple[int, ...]]


class LinearOperator:
    """Finite sum of c * p^mult * d^der acting on truncated series."""

    def __init__(self, space: SeriesSpace, terms: Iterable[Term]):
        self.space = space
        merged: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], object] = {}
        for c, mult, der in terms:
            key = (tuple(mult), tuple(der))
            merged[key] = merged[key] + c if key in merged else c
        self.terms = [(c, m, d) for (m, d), c in merged.items() if c]

    def shifts(self) -> List[int]:
        wt = self.space.weight
        return sorted({wt(m) - wt(d) for _, m, d in self.terms})

    def max_lowering(self) -> int:
        return max([0] + [-s for s in self.shifts()])

    def __call__(self, series: TruncatedSeries) -> TruncatedSeries:
        out: Dict[Tuple[int, ...], object] = {}
        for e, c in series.terms.items():
            for k, mult, der in self.terms:
                factor = 1
                ok = True
                for ei, di in zip(e, der):
                    if ei < di:
                        ok = False
                        break
                    for r in range(di):
                        factor *= ei - r
                if not ok:
                    continue
                new = tuple(ei - di + mi for ei, di, mi in zip(e, der, mult))
                val = c * k * factor
                out[new] = out[new] + val if new in out else val
        return TruncatedSeries(series.space, out)

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(self.space, self.terms + other.terms)

    def scaled(self, c) -> "LinearOperator":
        return LinearOperator(self.space, [(k * c, m, d) for k, m, d in self.terms])


def _unit(space: SeriesSpace, *indices: int) -> Tuple[int, ...]:
    """Exponent vector with a 1 added for every given p-index (1-based)."""
    e = [0] * len(space.variables)
    for j in indices:
        e[j - 1] += 1
    return tuple(e)


def cut_and_join_operator(space: SeriesSpace, s1, s2, eps2=1) -> LinearOperator:
    """W = s1 Lambda_1 + M_1 + s2 p_1 with the eps^2 on the joining term.

    Lambda_1 = sum_{i>=2} (i-1) p_i d/dp_{i-1}; this is what summing
    p_{b+1} L_b over b produces from the Virasoro operators.
    For the dessin operator s1 = u+v, s2 = uv/eps^2; for the Laguerre one
    s1 = 2x+a, s2 = x(x+a)/eps^2.
    """
    K = len(space.variables)
    terms: List[Term] = []
    zero = _unit(space)
    for i in range(2, K + 1):
        terms.append((s1 * (i - 1), _unit(space, i), _unit(space, i - 1)))
        for j in range(1, i):
            terms.append((space.one * (i - 1), _unit(space, j, i - j), _unit(space, i - 1)))
            if i + 1 <= K:
                terms.append((eps2 * space.one * (j * (i - j)), _unit(space, i + 1), _unit(space, j, i - j)))
    terms.append((s2, _unit(space, 1), zero))
    return LinearOperator(space, terms)


def _exp_of_raising(space: SeriesSpace, W: LinearOperator) -> TruncatedSeries:
    if W.shifts() != [1]:
        raise ValueError("cut-and-join operator must raise the weight by exactly one")
    total = space.const(space.one)
    term = space.const(space.one)
    for d in range(1, space.cutoff + 1):
        term = W(term) * Fraction(1, d)
        total = total + term
    return total


def _space(D: int, with_eps: bool) -> SeriesSpace:
    return SeriesSpace.power_sums(D, FIELD.one if with_eps else RING.one)


def cut_and_join_Z(D: int, with_eps: bool = False) -> TruncatedSeries:
    """sum_{d <= D} W^d(1)/d! for the dessin operator (u, v)."""
    if D < 1:
        raise ValueError("weight must be positive")
    space = _space(D, with_eps)
    if with_eps:
        e2 = FIELD(eps) ** 2
        W = cut_and_join_operator(space, FIELD(u + v), FIELD(u * v) / e2, e2)
    else:
        W = cut_and_join_operator(space, u + v, u * v)
    return _exp_of_raising(space, W)


def cut_and_join_Z_laguerre(D: int, with_eps: bool = False) -> TruncatedSeries:
    """Same scheme with 2(x + a/2) and x(x+a)."""
    if D < 1:
        raise ValueError("weight must be positive")
    space = _space(D, with_eps)
    if with_eps:
        e2 = FIELD(eps) ** 2
        W = cut_and_join_operator(space, FIELD(2 * x + a), FIELD(x * (x + a)) / e2, e2)
    else:
        W = cut_and_join_operator(space, 2 * x + a, x * (x + a))
    return _exp_of_raising(space, W)


def _partition_exponent(space: SeriesSpace, nu: Partition) -> Tuple[int, ...]:
    return _unit(space, *nu)


def schur_Z(D: int, first=u, second=v) -> TruncatedSeries:
    """sum_{|mu| <= D} s_mu prod_box (first + c)(second + c)/h."""
    if D < 1:
        raise ValueError("weight must be positive")
    space = _space(D, False)
    terms: Dict[Tuple[int, ...], object] = {}
    for d in range(D + 1):
        for mu in partitions_of(d):
            weight = RING.one
            for h, c in hooks_contents(mu):
                weight = weight * (first + c) * (second + c) * Fraction(1, h)
            for nu, coef in schur_in_power_sums(mu).items():
                e = _partition_exponent(space, nu)
                val = weight * coef
                terms[e] = terms[e] + val if e in terms else val
    return TruncatedSeries(space, terms)


def virasoro_operator(space: SeriesSpace, which: str, b: int, with_eps: bool = False) -> LinearOperator:
    """L_b in the dessin form (u, v) or the LUE1/corrected form (x, a)."""
    if b < 0:
        raise ValueError("Virasoro index must be nonnegative")
    if which == "dessin":
        lin, const = u + v, u * v
    elif which in ("lue1", "corrected"):
        lin, const = 2 * x + a, x * (x + a)
    else:
        raise ValueError(f"unknown Virasoro family {which!r}")
    one = space.one
    e2 = FIELD(eps) ** 2 if with_eps else 1
    if with_eps:
        lin, const = FIELD(lin), FIELD(const)
    K = len(space.variables)
    zero = _unit(space)
    terms: List[Term] = []
    if 1 <= b <= K:
        terms.append((lin * b, zero, _unit(space, b)))
    for j in range(1, K + 1):
        if b + j <= K:
            terms.append((one * (b + j), _unit(space, j), _unit(space, b + j)))
    if b + 1 <= K:
        terms.append((-one * (b + 1), zero, _unit(space, b + 1)))
    for i in range(1, b):
        terms.append((e2 * one * (i * (b - i)) if with_eps else one * (i * (b - i)), zero, _unit(space, i, b - i)))
    if b == 0:
        terms.append((const / e2 if with_eps else const, zero, zero))
    return LinearOperator(space, terms)


def trusted_weight(op: LinearOperator) -> int:
    """Highest weight at which op(Z) is exact for Z truncated at the cutoff."""
    return op.space.cutoff - op.max_lowering()


def virasoro_apply(which: str, b: int, Z: TruncatedSeries, with_eps: bool = False) -> Tuple[TruncatedSeries, int]:
    """Apply L_b to Z; returns the image truncated to its trusted window."""
    op = virasoro_operator(Z.space, which, b, with_eps)
    top = trusted_weight(op)
    if top < 0:
        raise ValueError("trusted window is empty; raise the cutoff")
    return op(Z).truncate(top), top


def connected_from_Z(Z: TruncatedSeries) -> TruncatedSeries:
    return Z.log()


def correlators_from_log(F: TruncatedSeries) -> Dict[Partition, object]:
    """<tau_mu> = prod n_i! * [p^mu] F for every stored monomial."""
    out: Dict[Partition, object] = {}
    for e, c in F.terms.items():
        mu = []
        aut = 1
        for j, k in enumerate(e, start=1):
            mu.extend([j] * k)
            aut *= factorial(k)
        out[partition(mu)] = c * aut
    return out


def homogeneity_residual(F: TruncatedSeries) -> TruncatedSeries:
    """sum (j-1) p_j dF/dp_j - eps dF/deps - u dF/du - v dF/dv.

    F must carry rational-function coefficients with eps as a symbol.
    """
    E, U, V = FGEN["eps"], FGEN["u"], FGEN["v"]
    terms = {}
    for e, c in F.terms.items():
        scale = F.space.weight(e) - sum(e)
        terms[e] = c * scale - E * c.diff(E) - U * c.diff(U) - V * c.diff(V)
    return TruncatedSeries(F.space, terms)


def dilaton_coupling_part(F: TruncatedSeries) -> TruncatedSeries:
    """sum ptilde_j dF/dp_j + eps dF/deps + x dF/dx + a dF/da for the
    dessin free energy written in (x, a); eps kept symbolic."""
    space = F.space
    out = space.series({})
    for j, name in enumerate(space.variables, start=1):
        dF = F.derive(name)
        out = out + space.var(name) * dF
        if j == 1:
            out = out - dF
    E, X, A = FGEN["eps"], FGEN["x"], FGEN["a"]
    out = out + F.map_coefficients(lambda c: E * c.diff(E) + X * c.diff(X) + A * c.diff(A))
    return out.truncate(space.cutoff - 1)


def dilaton_check(D: int) -> bool:
    """Full dilaton equation on the corrected free energy to weight D - 1.

    The coupling part must equal -x(x+a)/eps^2 (a constant); the constant
    term's contribution comes from the corrected constant term.
    """
    from .barnes import constant_dilaton_defect

    F = cut_and_join_Z_laguerre(D, with_eps=True).log()
    G = dilaton_coupling_part(F)
    defect = constant_dilaton_defect()
    return G == G.space.const(-defect)


def random_series(D: int, seed: int, density: float = 0.7, height: int = 9) -> TruncatedSeries:
    """Series in p_1..p_D with random small rational coefficients (reproducible)."""
    rng = random.Random(seed)
    space = SeriesSpace.power_sums(D, RING.one)
    terms = {}
    for e in space.exponents():
        if rng.random() < density:
            num = rng.randint(-height, height)
            terms[e] = RING.one * Fraction(num, rng.randint(1, height))
    return TruncatedSeries(space, terms)


def virasoro_commutator_check(which: str, m: int, n: int, D: int = 8, seed: int = 0) -> bool:
    """[L_m, L_n] = (m - n) L_{m+n} on a random series, inside the trusted window."""
    f = random_series(D, seed)
    Lm = virasoro_operator(f.space, which, m)
    Ln = virasoro_operator(f.space, which, n)
    Lmn = virasoro_operator(f.space, which, m + n)
    top = D - Lm.max_lowering() - Ln.max_lowering()
    if top < 0:
        raise ValueError("trusted window is empty; raise the cutoff")
    lhs = Lm(Ln(f)) - Ln(Lm(f))
    rhs = Lmn(f) * (m - n)
    return lhs.truncate(top) == rhs.truncate(top)
