"""Connected dessin correlators as polynomials in n, w (epsilon = 1).

The m-point correlators (m >= 2) come from the cyclic product of the kernel

    Ahat(lam, mu) = 1/(lam - mu) + sum_{i,j} A_{j,i} lam^{-i-1} mu^{-j-1},

and the one-point correlators from the product h(-lam, -n, -w) h(lam, n, w).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, NamedTuple, Sequence, Tuple

from .algebra import RING, LaurentTail, cyclic_kernel_coefficient, n, w
from .partitions import partition

__all__ = [
    "a_coeff",
    "h_series",
    "AHatKernel",
    "one_point",
    "m_point",
    "correlator",
    "cyclic_sum_coefficient",
    "DessinCount",
    "n_kl",
    "genus_parts",
]

MAX_POINTS = 7


@lru_cache(maxsize=None)
def a_coeff(i: int, j: int):
    """A_{i,j} as a polynomial in n, w."""
    if i < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    val = n * w * Fraction((-1) ** j, (i + j + 1) * factorial(i) * factorial(j))
    for r in range(1, i + 1):
        val = val * (n + r) * (w + r)
    for r in range(1, j + 1):
        val = val * (n - r) * (w - r)
    return val


def h_series(N: int, nn=n, ww=w, flip: bool = False) -> LaurentTail:
    """sum_{i<=N} (1/i!) prod_{r<i} (nn+r)(ww+r) lam^{-i}.

    With ``flip`` the variable lam is replaced by -lam, so
    ``h_series(N, -n, -w, flip=True)`` is h(-lam, -n, -w).
    """
    if N < 0:
        raise ValueError("order must be nonnegative")
    coeffs = [RING.one]
    term = RING.one
    for i in range(1, N + 1):
        term = term * (nn + (i - 1)) * (ww + (i - 1)) * Fraction(1, i)
        coeffs.append(-term if (flip and i % 2) else term)
    return LaurentTail(coeffs)


class AHatKernel:
    """The two-point kernel 1/(lam - mu) + sum A_{j,i} lam^{-i-1} mu^{-j-1}.

    The coefficient of lam^{-i-1} mu^{-j-1} is A_{j,i}: this is the pairing
    produced by the wave functions of the initial Lax operator, and the one
    that reproduces <tau_1 tau_1> = nw.  The pole is expanded as
    sum_k lam_j^k lam_i^{-k-1} when i < j (variables ordered by decreasing
    size).  ``transpose=True`` gives the other index pairing (kept only as a
    negative control).
    """

    def __init__(self, order: int, transpose: bool = False):
        self.order = order
        rng = range(order + 1)
        if transpose:
            self.A = [[a_coeff(i, j) for j in rng] for i in rng]
        else:
            self.A = [[a_coeff(j, i) for j in rng] for i in rng]

    def __call__(self, i: int, j: int, e: int) -> Iterator[Tuple[int, object]]:
        if i < j:
            k = -e - 1
            if k >= 0:
                yield k, 1
        else:
            k = e
            if k >= 0:
                yield -k - 1, -1
        r = -e - 1
        if 0 <= r <= self.order:
            row = self.A[r]
            for s in range(self.order + 1):
                yield -s - 1, row[s]


@lru_cache(maxsize=None)
def _kernel(order: int) -> AHatKernel:
    return AHatKernel(order)


def cyclic_sum_coefficient(exponents: Sequence[int], kernel=None):
    """Coefficient of prod lam_j^{e_j} in
    (-1)^{m-1} sum_cyclic prod Ahat - delta_{m,2}/(lam-mu)^2."""
    m = len(exponents)
    budget = max(0, -sum(exponents) - m)
    if kernel is None:
        kernel = _kernel(budget)
    elif kernel.order < budget:
        raise ValueError("kernel order too small for these exponents")
    total = cyclic_kernel_coefficient(kernel, exponents, RING.zero)
    total = total * (-1) ** (m - 1)
    if m == 2:
        e1, e2 = exponents
        if e2 >= 0 and e1 == -e2 - 2:
            total = total - (e2 + 1)
    return RING(total)


def one_point(mu: int):
    """<tau_mu>(n, w, 1) from the h-product."""
    if mu < 1:
        raise ValueError("mu must be positive")
    prodtail = h_series(mu + 1, -n, -w, flip=True) * h_series(mu + 1)
    top = prodtail[mu + 1]
    q, r = top.div(RING(mu * mu))
    if r:
        raise ArithmeticError("non-exact division in one-point function")
    return q


def m_point(mus: Sequence[int]):
    """<tau_{mu_1} ... tau_{mu_m}>(n, w, 1) for m >= 2."""
    m = len(mus)
    if m < 2:
        raise ValueError("m_point needs at least two insertions")
    if m > MAX_POINTS:
        raise ValueError(f"at most {MAX_POINTS} insertions supported")
    if any(k < 1 for k in mus):
        raise ValueError("insertions must be positive")
    coeff = cyclic_sum_coefficient([-k - 1 for k in mus])
    weight = 1
    for k in mus:
        weight *= k
    q, r = coeff.div(RING(weight))
    if r:
        raise ArithmeticError("non-exact division in m-point function")
    return q


@lru_cache(maxsize=None)
def _correlator(mu: Tuple[int, ...]):
    if len(mu) == 1:
        return one_point(mu[0])
    return m_point(mu)


def correlator(mus: Sequence[int]):
    """Connected correlator for any m >= 1; order of insertions irrelevant."""
    return _correlator(partition(mus))


class DessinCount(NamedTuple):
    k: int
    l: int
    g: int
    value: Fraction


def n_kl(mus: Sequence[int]) -> List[DessinCount]:
    """N_{k,l}(mu) read off from the correlator, with genus labels."""
    mu = partition(mus)
    if not mu:
        raise ValueError("mu must be nonempty")
    p = correlator(mu)
    d, m = sum(mu), len(mu)
    out = []
    for (ek, el, *others), c in p.terms():
        twice_g = d - m + 2 - ek - el
        if twice_g % 2 or twice_g < 0 or any(others):
            raise ArithmeticError(f"monomial n^{ek} w^{el} violates the grading")
        out.append(DessinCount(ek, el, twice_g // 2, Fraction(int(c.numerator), int(c.denominator))))
    out.sort(key=lambda t: (t.g, -t.k, t.l))
    return out


def genus_parts(mus: Sequence[int]) -> Dict[int, object]:
    """Split the correlator into its homogeneous genus pieces."""
    mu = partition(mus)
    d, m = sum(mu), len(mu)
    parts: Dict[int, object] = {}
    for (ek, el, *_), c in correlator(mu).terms():
        g = (d - m + 2 - ek - el) // 2
        parts[g] = parts.get(g, RING.zero) + c * n ** ek * w ** el
    return parts
