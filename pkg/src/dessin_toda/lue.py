"""Connected LUE correlators, the Laguerre matrix resolvent and the
large-n (genus, c) expansion.

Two 2x2 resolvents appear here, both as tails in 1/lambda:

* ``ggr_resolvent``: diag(1, 0) + sum_l lambda^{-l-1} [[l A_l, B_l(n+1, n'+1)],
  [-n n' B_l(n, n'), -l A_l]] with n' = n + alpha (coefficients in n, a);
* ``m_matrix``: products of the hypergeometric tails h (coefficients in n, w).

They are conjugate by a constant diagonal matrix once w = n + a, so their
cyclic trace sums agree, and either gives the LUE correlators.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.rings import ring

from .algebra import FIELD, RING, LaurentTail, Mat2, a, cyclic_kernel_coefficient, n, substitute, w
from .dessins import correlator, h_series
from .partitions import Partition, partition

__all__ = [
    "RISING",
    "pochhammer",
    "ggr_A",
    "ggr_B",
    "ResolventTail",
    "ggr_resolvent",
    "m_matrix",
    "conjugating_scale",
    "printed_conjugating_scale",
    "ConjugationResult",
    "conjugation_check",
    "ResolventKernel",
    "resolvent_cyclic_coefficient",
    "lue_correlator",
    "lue_correlator_dessin",
    "lue_correlator_resolvent",
    "cdoc_coefficients",
    "RouteMismatch",
]

# Rising factorials make the conjugation identity hold; falling ones break
# it at the lambda^{-3} coefficient.
RISING = True


class RouteMismatch(ArithmeticError):
    """Two independent computations of the same quantity disagree."""


def pochhammer(z, l: int, rising: bool = RISING):
    """(z)_l as a product of l linear factors, rising or falling."""
    if l < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    out = RING.one
    for r in range(l):
        out = out * (z + r if rising else z - r)
    return out


@lru_cache(maxsize=None)
def _ggr_A(l: int, nn, np_, rising: bool):
    if l == 0:
        return RING(nn)
    total = RING.zero
    for j in range(l):
        term = pochhammer(nn - j, l, rising) * pochhammer(np_ - j, l, rising)
        total = total + term * Fraction((-1) ** j, factorial(j) * factorial(l - 1 - j))
    return total * Fraction(1, l)


@lru_cache(maxsize=None)
def _ggr_B(l: int, nn, np_, rising: bool):
    total = RING.zero
    for j in range(l + 1):
        term = pochhammer(nn - j, l, rising) * pochhammer(np_ - j, l, rising)
        total = total + term * Fraction((-1) ** j, factorial(j) * factorial(l - j))
    return total


def ggr_A(l: int, nn=n, np_=None, rising: bool = RISING):
    """A_l(n, n'); n' defaults to n + a.  A_l is the one-point LUE correlator."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    return _ggr_A(l, RING(nn), RING(n + a if np_ is None else np_), rising)


def ggr_B(l: int, nn=n, np_=None, rising: bool = RISING):
    """B_l(n, n'); n' defaults to n + a."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    return _ggr_B(l, RING(nn), RING(n + a if np_ is None else np_), rising)


class ResolventTail:
    """2x2 matrix tail: ``coeffs[k]`` is the Mat2 coefficient of lambda^{-k}."""

    def __init__(self, coeffs: Sequence[Mat2]):
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def entry(self, i: int, j: int) -> LaurentTail:
        return LaurentTail([c[i, j] for c in self.coeffs])

    def trace(self) -> LaurentTail:
        return self.entry(0, 0) + self.entry(1, 1)

    def det(self) -> LaurentTail:
        return self.entry(0, 0) * self.entry(1, 1) - self.entry(0, 1) * self.entry(1, 0)

    def map(self, f) -> "ResolventTail":
        return ResolventTail([c.map(f) for c in self.coeffs])

    def conjugate_diagonal(self, t) -> "ResolventTail":
        """diag(1, t) R diag(1, 1/t)."""
        return ResolventTail(
            [Mat2([[c[0, 0], c[0, 1] / t], [c[1, 0] * t, c[1, 1]]]) for c in self.coeffs]
        )

    @classmethod
    def from_entries(cls, entries: List[List[LaurentTail]]) -> "ResolventTail":
        N = entries[0][0].order
        return cls([Mat2([[entries[i][j][k] for j in range(2)] for i in range(2)]) for k in range(N + 1)])

    def __eq__(self, other) -> bool:
        return isinstance(other, ResolventTail) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)


@lru_cache(maxsize=None)
def ggr_resolvent(N: int, rising: bool = RISING) -> ResolventTail:
    """R_GGR(lambda) to order lambda^{-N}, coefficients in n, a."""
    if N < 1:
        raise ValueError("order must be positive")
    np_ = n + a
    coeffs = [Mat2([[RING.one, RING.zero], [RING.zero, RING.zero]])]
    for l in range(N):
        A = ggr_A(l, n, np_, rising) * l
        coeffs.append(Mat2([
            [A, ggr_B(l, n + 1, np_ + 1, rising)],
            [-n * np_ * ggr_B(l, n, np_, rising), -A],
        ]))
    return ResolventTail(coeffs)


@lru_cache(maxsize=None)
def m_matrix(N: int) -> ResolventTail:
    """The h-product matrix to order lambda^{-N}, coefficients in n, w."""
    if N < 1:
        raise ValueError("order must be positive")
    hA0 = h_series(N, -n, -w, flip=True)
    hA1 = h_series(N, 1 - n, 1 - w, flip=True)
    hB0 = h_series(N)
    hB1 = h_series(N, 1 + n, 1 + w)
    entries = [
        [hA0 * hB0, (hA0 * hB1).shift(1) * (-n * w)],
        [(hA1 * hB0).shift(1), (hA1 * hB1).shift(2) * (-n * w)],
    ]
    return ResolventTail.from_entries(entries)


def conjugating_scale():
    """t with diag(1, t) R_GGR diag(1, 1/t) = M at w = n + a."""
    return -FIELD.one / FIELD(n * (n + a))


def printed_conjugating_scale():
    """-n/(n + a); fails the identity off the diagonal (negative control)."""
    return -FIELD(n) / FIELD(n + a)


class ConjugationResult(NamedTuple):
    ok: bool
    order: Optional[int]
    entry: Optional[Tuple[int, int]]

    def __bool__(self) -> bool:
        return self.ok


def conjugation_check(N: int, rising: bool = RISING, scale=None) -> ConjugationResult:
    """Compare T R_GGR T^{-1} with M (w = n + a) coefficientwise to lambda^{-N}.

    Returns the first failing (order, entry) on failure.
    """
    if N < 1:
        raise ValueError("order must be positive")
    t = conjugating_scale() if scale is None else scale
    lhs = ggr_resolvent(N, rising).map(FIELD).conjugate_diagonal(t)
    rhs = m_matrix(N).map(lambda c: FIELD(substitute(c, {w: n + a})))
    for k in range(N + 1):
        for i in range(2):
            for j in range(2):
                if lhs.coeffs[k][i, j] != rhs.coeffs[k][i, j]:
                    return ConjugationResult(False, k, (i, j))
    return ConjugationResult(True, None, None)


class ResolventKernel:
    """K(lambda_i, lambda_j) = R(lambda_i)/(lambda_i - lambda_j), expanded in
    |lambda_0| > |lambda_1| > ...; coefficients are Mat2."""

    def __init__(self, res: ResolventTail):
        self.res = res
        self.nonzero = [(r, c) for r, c in enumerate(res.coeffs) if any(c[i, j] for i in range(2) for j in range(2))]

    def __call__(self, i: int, j: int, e: int) -> Iterator[Tuple[int, Mat2]]:
        for r, c in self.nonzero:
            if i < j:
                k = -e - 1 - r
                if k >= 0:
                    yield k, c
            else:
                k = e + r
                if k >= 0:
                    yield -k - 1, -c


def resolvent_cyclic_coefficient(res: ResolventTail, exponents: Sequence[int]):
    """Coefficient of prod lambda_j^{e_j} in
    -sum_cyclic tr prod R/(lambda - lambda') - delta_{m,2}/(lambda-mu)^2.

    The tail must reach order -sum(e) - m (checked).
    """
    m = len(exponents)
    need = -sum(exponents) - m
    if res.order < need:
        raise ValueError(f"resolvent order {res.order} below the required {need}")
    total = cyclic_kernel_coefficient(ResolventKernel(res), exponents, RING.zero, lambda M: M.trace())
    total = -total
    if m == 2:
        e1, e2 = exponents
        if e2 >= 0 and e1 == -e2 - 2:
            total = total - (e2 + 1)
    return total


def lue_correlator_dessin(mus: Sequence[int]):
    """prod mu_j * <tau_mu>(n, n + a, 1)."""
    mu = partition(mus)
    return substitute(correlator(mu), {w: n + a}) * prod(mu)


def lue_correlator_resolvent(mus: Sequence[int], rising: bool = RISING):
    """Same quantity from R_GGR alone (one-point: A_l; else cyclic sum)."""
    mu = partition(mus)
    if not mu:
        raise ValueError("need at least one insertion")
    if len(mu) == 1:
        return ggr_A(mu[0], rising=rising)
    return RING(resolvent_cyclic_coefficient(ggr_resolvent(sum(mu), rising), [-k - 1 for k in mu]))


@lru_cache(maxsize=None)
def _lue(mu: Partition):
    one = lue_correlator_dessin(mu)
    two = lue_correlator_resolvent(mu)
    if one != two:
        raise RouteMismatch(f"LUE correlator {mu}: dessin route {one} != resolvent route {two}; diff {one - two}")
    return one


def lue_correlator(mus: Sequence[int]):
    """<tr M^{mu_1} ... tr M^{mu_m}>_c as a polynomial in n, a (both routes)."""
    mu = partition(mus)
    if not mu:
        raise ValueError("need at least one insertion")
    return _lue(mu)


_NC, _nc_n, _nc_c = ring("n,c", QQ)

CDOC_MAX_WEIGHT = 10


def cdoc_coefficients(mus: Sequence[int]) -> Dict[Tuple[int, int], Fraction]:
    """{(g, s): coefficient of n^{-2g} c^s} in n^{m-d-2} <...>_c, c = 1 + a/n."""
    mu = partition(mus)
    if not mu:
        raise ValueError("need at least one insertion")
    d, m = sum(mu), len(mu)
    if d > CDOC_MAX_WEIGHT:
        raise ValueError(f"|mu| = {d} exceeds the bound {CDOC_MAX_WEIGHT}")
    P = lue_correlator(mu)
    # a = n (c - 1); the map is triangular, so every term lands on n^e c^s
    image = _NC.zero
    for (en, _ew, ea, *_), coeff in P.terms():
        image += _NC(coeff) * _nc_n ** (en + ea) * (_nc_c - 1) ** ea
    out: Dict[Tuple[int, int], Fraction] = {}
    for (en, ec), coeff in image.terms():
        shift = en + m - d - 2
        if shift > 0 or shift % 2:
            raise ArithmeticError(f"term n^{shift} c^{ec} is not of the form n^(-2g)")
        out[(-shift // 2, ec)] = Fraction(int(coeff.numerator), int(coeff.denominator))
    return dict(sorted(out.items()))
