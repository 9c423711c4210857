"""Partitions, permutations, symmetric group characters and Schur functions."""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

__all__ = [
    "Partition",
    "partition",
    "partitions_of",
    "z_factor",
    "multiplicities",
    "hooks_contents",
    "character",
    "schur_in_power_sums",
    "Permutation",
    "cycle_type",
    "compose",
    "is_transitive",
    "permutations_of_type",
]

Partition = Tuple[int, ...]


def partition(parts: Iterable[int]) -> Partition:
    """Canonical (weakly decreasing) form of a tuple of positive integers."""
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if any(p <= 0 for p in parts):
        raise ValueError("partition parts must be positive")
    return parts


def partitions_of(d: int) -> List[Partition]:
    """All partitions of d in reverse lexicographic order."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    out: List[Partition] = []

    def rec(left: int, cap: int, acc: List[int]) -> None:
        if left == 0:
            out.append(tuple(acc))
            return
        for p in range(min(left, cap), 0, -1):
            acc.append(p)
            rec(left - p, p, acc)
            acc.pop()

    rec(d, d, [])
    return out


def multiplicities(mu: Sequence[int]) -> Dict[int, int]:
    return dict(Counter(mu))


def z_factor(mu: Sequence[int]) -> int:
    """z_mu = prod_i i^{n_i} n_i!."""
    return prod(i ** k * factorial(k) for i, k in Counter(mu).items())


def hooks_contents(mu: Sequence[int]) -> List[Tuple[int, int]]:
    """(hook length, content) for every box; content = column - row."""
    mu = partition(mu)
    conj = [sum(1 for p in mu if p > j) for j in range(mu[0])] if mu else []
    out = []
    for i, row in enumerate(mu):
        for j in range(row):
            arm = row - j - 1
            leg = conj[j] - i - 1
            out.append((arm + leg + 1, j - i))
    return out


def _rim_hooks(mu: Partition, r: int) -> Iterator[Tuple[Partition, int]]:
    """Ways to remove a border strip of size r: (remaining shape, height)."""
    # beta-numbers: moving a bead down by r removes an r-rim hook
    L = len(mu)
    beta = [mu[i] + (L - 1 - i) for i in range(L)]
    bset = set(beta)
    for b in beta:
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for c in beta if nb < c < b)
        new = sorted((c for c in beta if c != b), reverse=True)
        new.append(nb)
        new.sort(reverse=True)
        shape = tuple(new[i] - (L - 1 - i) for i in range(L))
        yield tuple(p for p in shape if p > 0), height


@lru_cache(maxsize=None)
def character(mu: Partition, nu: Partition) -> int:
    """chi^mu(nu) by the Murnaghan-Nakayama rule."""
    if sum(mu) != sum(nu):
        raise ValueError("character needs partitions of the same size")
    if not nu:
        return 1
    r, rest = nu[0], nu[1:]
    total = 0
    for shape, height in _rim_hooks(mu, r):
        total += (-1) ** height * character(shape, rest)
    return total


def schur_in_power_sums(mu: Sequence[int]) -> Dict[Partition, Fraction]:
    """s_mu = sum_nu chi^mu(nu) p_nu / z_nu, as {nu: coefficient}."""
    mu = partition(mu)
    d = sum(mu)
    out = {}
    for nu in partitions_of(d):
        c = character(mu, nu)
        if c:
            out[nu] = Fraction(c, z_factor(nu))
    return out


# --------------------------------------------------------------------------
# permutations of {0..d-1} stored as image tuples


class Permutation(tuple):
    """Image tuple of a permutation of {0, ..., d-1}."""

    def __new__(cls, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("not a permutation")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(range(d))

    @classmethod
    def transposition(cls, d: int, i: int, j: int) -> "Permutation":
        img = list(range(d))
        img[i], img[j] = img[j], img[i]
        return cls(img)

    @classmethod
    def from_cycles(cls, d: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Cycles given with 1-based labels, as in (12)(3)."""
        img = list(range(d))
        for cyc in cycles:
            for k, c in enumerate(cyc):
                img[c - 1] = cyc[(k + 1) % len(cyc)] - 1
        return cls(img)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """(self * other)(i) = self(other(i)): apply other first."""
        return Permutation(self[j] for j in other)

    def cycles(self) -> List[List[int]]:
        seen = [False] * len(self)
        out = []
        for s in range(len(self)):
            if seen[s]:
                continue
            cyc = []
            c = s
            while not seen[c]:
                seen[c] = True
                cyc.append(c)
                c = self[c]
            out.append(cyc)
        return out


def cycle_type(sigma: Permutation) -> Partition:
    return partition(len(c) for c in sigma.cycles())


def compose(*perms: Permutation) -> Permutation:
    """Left-to-right product p1 p2 ... as functions composed right first."""
    out = perms[0]
    for p in perms[1:]:
        out = out * p
    return out


def is_transitive(generators: Iterable[Sequence[int]], d: int) -> bool:
    """Whether the generated group acts transitively on {0..d-1}."""
    parent = list(range(d))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in generators:
        for i, j in enumerate(g):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    return len({find(i) for i in range(d)}) <= 1


def permutations_of_type(mu: Sequence[int]) -> Iterator[Permutation]:
    """Every permutation of {0..|mu|-1} with cycle type mu, each once.

    Each cycle is started at the smallest point not yet used, which makes
    the cycle decomposition (and hence the permutation) unique.
    """
    mu = partition(mu)
    d = sum(mu)
    for img in _by_smallest_point(tuple(range(d)), mu):
        yield Permutation(img[i] for i in range(d))


def _arrangements(pool: Tuple[int, ...], k: int) -> Iterator[Tuple[int, ...]]:
    return itertools.permutations(pool, k)


def _by_smallest_point(points: Tuple[int, ...], mu: Partition) -> Iterator[Dict[int, int]]:
    """Assign the smallest free point to a cycle of each still-needed length."""
    counts = Counter(mu)

    def rec(free: Tuple[int, ...], counts: Counter, img: Dict[int, int]) -> Iterator[Dict[int, int]]:
        if not free:
            yield img
            return
        first, rest = free[0], free[1:]
        for length in sorted(counts):
            if counts[length] == 0:
                continue
            for others in _arrangements(rest, length - 1):
                cyc = (first,) + others
                new = dict(img)
                for k, c in enumerate(cyc):
                    new[c] = cyc[(k + 1) % length]
                left = tuple(r for r in rest if r not in others)
                counts[length] -= 1
                yield from rec(left, counts, new)
                counts[length] += 1

    yield from rec(points, counts, {})
