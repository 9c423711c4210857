"""Strictly monotone double Hurwitz numbers by exhaustive enumeration.

h_g(mu, nu) counts tuples (alpha, tau_1..tau_r, beta) with alpha of type mu,
tau_j = (a_j, b_j), a_j < b_j, b_1 < ... < b_r, beta = alpha tau_1 ... tau_r of
type nu, r = l(mu) + l(nu) + 2g - 2, and <alpha, tau_1..tau_r> transitive.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, NamedTuple, Sequence, Tuple

from .dessins import n_kl
from .partitions import Partition, partition, partitions_of, permutations_of_type

__all__ = [
    "MAX_DEGREE",
    "HurwitzQuery",
    "monotone_table",
    "strictly_monotone_hurwitz",
    "BridgeResult",
    "verify_dessin_hurwitz",
    "hurwitz_cdoc_coefficients",
    "admissible_bridges",
]

MAX_DEGREE = 8


@dataclass(frozen=True)
class HurwitzQuery:
    g: int
    mu: Partition
    nu: Partition

    def __post_init__(self):
        object.__setattr__(self, "mu", partition(self.mu))
        object.__setattr__(self, "nu", partition(self.nu))
        if self.g < 0:
            raise ValueError("genus must be nonnegative")
        if sum(self.mu) != sum(self.nu):
            raise ValueError("mu and nu must have the same size")

    @property
    def d(self) -> int:
        return sum(self.mu)

    @property
    def r(self) -> int:
        return len(self.mu) + len(self.nu) + 2 * self.g - 2


def _cycle_type(perm: List[int]) -> Partition:
    seen = [False] * len(perm)
    lengths = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        k = 0
        c = s
        while not seen[c]:
            seen[c] = True
            c = perm[c]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def _find(parent: List[int], i: int) -> int:
    while parent[i] != i:
        i = parent[i]
    return i


def _count_from(alpha: Tuple[int, ...], max_r: int) -> Counter:
    """Counter of (r, type(beta)) over transitive strictly monotone sequences."""
    d = len(alpha)
    out: Counter = Counter()
    parent = list(range(d))
    for i, j in enumerate(alpha):
        ri, rj = _find(parent, i), _find(parent, j)
        if ri != rj:
            parent[ri] = rj
    comps = len({_find(parent, i) for i in range(d)})
    beta = list(alpha)

    def rec(next_b: int, depth: int, parent: List[int], comps: int) -> None:
        if comps == 1:
            out[(depth, _cycle_type(beta))] += 1
        if depth == max_r:
            return
        for b in range(next_b, d):
            for a_ in range(b):
                # right multiplication by (a b) swaps the images of a and b
                beta[a_], beta[b] = beta[b], beta[a_]
                ra, rb = _find(parent, a_), _find(parent, b)
                if ra != rb:
                    newp = parent[:]
                    newp[ra] = rb
                    rec(b + 1, depth + 1, newp, comps - 1)
                else:
                    rec(b + 1, depth + 1, parent, comps)
                beta[a_], beta[b] = beta[b], beta[a_]

    rec(1, 0, parent, comps)
    return out


def _count_chunk(args: Tuple[List[Tuple[int, ...]], int]) -> Counter:
    alphas, max_r = args
    total: Counter = Counter()
    for alpha in alphas:
        total.update(_count_from(alpha, max_r))
    return total


@lru_cache(maxsize=None)
def _table(mu: Partition, workers: int) -> Dict[Tuple[int, Partition], int]:
    d = sum(mu)
    max_r = d - 1
    alphas = [tuple(p) for p in permutations_of_type(mu)]
    if workers > 1 and len(alphas) > 1:
        size = -(-len(alphas) // workers)
        chunks = [(alphas[i:i + size], max_r) for i in range(0, len(alphas), size)]
        counts: Counter = Counter()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for c in pool.map(_count_chunk, chunks):
                counts.update(c)
    else:
        counts = _count_chunk((alphas, max_r))
    table: Dict[Tuple[int, Partition], int] = {}
    for (r, nu), c in counts.items():
        twice_g = r - len(mu) - len(nu) + 2
        if twice_g < 0 or twice_g % 2:
            continue
        table[(twice_g // 2, nu)] = c
    return dict(sorted(table.items()))


def monotone_table(mus: Sequence[int], workers: int = 1) -> Dict[Tuple[int, Partition], int]:
    """{(g, nu): h_g(mu, nu)} for every nonzero value (strictly monotone
    sequences have length at most d - 1, so the table is complete)."""
    mu = partition(mus)
    d = sum(mu)
    if d < 1:
        raise ValueError("mu must be nonempty")
    if d > MAX_DEGREE:
        raise ValueError(f"degree {d} exceeds the cap {MAX_DEGREE}")
    return _table(mu, max(1, workers))


def strictly_monotone_hurwitz(q: HurwitzQuery, workers: int = 1) -> int:
    if q.r < 0:
        return 0
    return monotone_table(q.mu, workers).get((q.g, q.nu), 0)


class BridgeResult(NamedTuple):
    lhs: Fraction
    rhs: Fraction
    equal: bool


def verify_dessin_hurwitz(mus: Sequence[int], g: int, l: int, workers: int = 1) -> BridgeResult:
    """N_{k,l}(mu) against prod n_i!/|mu|! sum_{l(nu)=l} h_g(mu, nu)."""
    mu = partition(mus)
    d, m = sum(mu), len(mu)
    k = d - m - l - 2 * g + 2
    if g < 0 or l < 1 or k < 1:
        raise ValueError(f"(g={g}, l={l}) gives k={k}; need k, l >= 1 and g >= 0")
    lhs = Fraction(0)
    for c in n_kl(mu):
        if (c.k, c.l, c.g) == (k, l, g):
            lhs = c.value
    aut = 1
    for mult in Counter(mu).values():
        aut *= factorial(mult)
    table = monotone_table(mu, workers)
    total = sum(h for (gg, nu), h in table.items() if gg == g and len(nu) == l)
    rhs = Fraction(aut * total, factorial(d))
    return BridgeResult(lhs, rhs, lhs == rhs)


def hurwitz_cdoc_coefficients(mus: Sequence[int], workers: int = 1) -> Dict[Tuple[int, int], Fraction]:
    """{(g, s): z_mu/|mu|! sum_{l(nu)=s} h_g(mu, nu)} (nonzero entries)."""
    from .partitions import z_factor

    mu = partition(mus)
    d = sum(mu)
    out: Dict[Tuple[int, int], Fraction] = {}
    for (g, nu), h in monotone_table(mu, workers).items():
        key = (g, len(nu))
        out[key] = out.get(key, Fraction(0)) + Fraction(z_factor(mu) * h, factorial(d))
    return dict(sorted((k, val) for k, val in out.items() if val))


def admissible_bridges(max_weight: int, max_genus: int) -> List[Tuple[Partition, int, int]]:
    """Every (mu, g, l) with |mu| <= max_weight, g <= max_genus and k, l >= 1."""
    out = []
    for d in range(1, max_weight + 1):
        for mu in partitions_of(d):
            m = len(mu)
            for g in range(max_genus + 1):
                for l in range(1, d + 1):
                    if d - m - l - 2 * g + 2 >= 1:
                        out.append((mu, g, l))
    return out
