"""Exact algebra substrate.

Scalars are ``fractions.Fraction`` (or the gmpy2 rationals used inside
sympy's polynomial rings).  Multivariate polynomials and rational functions
over the named indeterminates ``n, w, a, x, u, v, eps`` are the sparse ring and
field elements of :mod:`sympy.polys`; they are immutable, canonical, and
compare by value.  On top of that this module provides weighted truncated
power series, tails in ``1/lambda``, and the cyclic kernel products used by
the m-point formulas.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.fields import field

__all__ = [
    "SYMBOLS",
    "FIELD",
    "RING",
    "FGEN",
    "n",
    "w",
    "a",
    "x",
    "u",
    "v",
    "eps",
    "poly",
    "ratfun",
    "is_polynomial",
    "as_polynomial",
    "substitute",
    "render",
    "TruncatedSeries",
    "SeriesSpace",
    "LaurentTail",
    "mat_mul",
    "mat_add",
    "mat_scale",
    "mat_trace",
    "mat_det",
    "Mat2",
    "cyclic_orders",
    "cyclic_kernel_coefficient",
    "laurent_cyclic_double_tail",
]

SYMBOLS = ("n", "w", "a", "x", "u", "v", "eps")

FIELD = field(",".join(SYMBOLS), QQ)[0]
RING = FIELD.ring
FGEN = dict(zip(SYMBOLS, FIELD.gens))
n, w, a, x, u, v, eps = RING.gens

MultiPoly = type(RING.one)
RationalFunction = type(FIELD.one)


def poly(value) -> MultiPoly:
    """Coerce an int, Fraction or polynomial into the polynomial ring."""
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, RationalFunction):
        return as_polynomial(value)
    return RING(value)


def ratfun(num, den=1) -> RationalFunction:
    """Build num/den in the rational function field (gcd-reduced)."""
    if den == 0 or (isinstance(den, MultiPoly) and not den):
        raise ZeroDivisionError("zero denominator")
    return FIELD(num) / FIELD(den)


def is_polynomial(f: RationalFunction) -> bool:
    return f.denom.is_ground


def as_polynomial(f: RationalFunction) -> MultiPoly:
    """Return f as a polynomial; raise if the denominator is not constant."""
    if not f.denom.is_ground:
        raise ValueError(f"not a polynomial: {f}")
    return f.numer * (QQ.one / f.denom.LC)


def substitute(p, mapping: Dict[MultiPoly, object]):
    """Simultaneously substitute generators of RING by polynomials."""
    if isinstance(p, RationalFunction):
        return ratfun(substitute(p.numer, mapping), substitute(p.denom, mapping))
    if not mapping:
        return p
    return p.compose([(g, poly(val)) for g, val in mapping.items()])


def render(value) -> str:
    """Canonical string for rationals, polynomials and rational functions."""
    if isinstance(value, (int, Fraction)):
        f = Fraction(value)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    if isinstance(value, RationalFunction) and is_polynomial(value):
        value = as_polynomial(value)
    if isinstance(value, MultiPoly) and value.is_ground:
        q = value.LC if value else 0
        return render(Fraction(int(q.numerator), int(q.denominator)) if value else 0)
    return str(value).replace(" ", "")


# --------------------------------------------------------------------------
# weighted truncated power series


Exponent = Tuple[int, ...]


class SeriesSpace:
    """A family of variables with positive weights and a weight cutoff.

    ``one`` is the unit of the coefficient domain; everything else about the
    domain is duck-typed (``+``, ``-``, ``*``, truthiness for zero test).
    """

    def __init__(self, variables: Sequence[str], weights: Sequence[int], cutoff: int, one=Fraction(1)):
        if len(variables) != len(weights):
            raise ValueError("one weight per variable required")
        if any(wt <= 0 for wt in weights):
            raise ValueError("weights must be positive")
        if cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        self.variables = tuple(variables)
        self.weights = tuple(weights)
        self.cutoff = cutoff
        self.one = one
        self.zero = one - one
        self._index = {name: i for i, name in enumerate(self.variables)}

    def _key(self):
        return (self.variables, self.weights, self.cutoff, type(self.one))

    def __eq__(self, other) -> bool:
        return isinstance(other, SeriesSpace) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @classmethod
    def power_sums(cls, cutoff: int, one=Fraction(1)) -> "SeriesSpace":
        """p_1..p_cutoff with weight(p_j) = j."""
        return cls([f"p{j}" for j in range(1, cutoff + 1)], list(range(1, cutoff + 1)), cutoff, one)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown series variable {name!r}") from None

    def weight(self, exps: Exponent) -> int:
        return sum(e * wt for e, wt in zip(exps, self.weights))

    def zero_exponent(self) -> Exponent:
        return (0,) * len(self.variables)

    def series(self, terms: Dict[Exponent, object]) -> "TruncatedSeries":
        return TruncatedSeries(self, terms)

    def const(self, c) -> "TruncatedSeries":
        return TruncatedSeries(self, {self.zero_exponent(): c})

    def var(self, name: str, coeff=None) -> "TruncatedSeries":
        exps = [0] * len(self.variables)
        exps[self.index(name)] = 1
        return TruncatedSeries(self, {tuple(exps): self.one if coeff is None else coeff})

    def monomial(self, exps: Exponent, coeff=None) -> "TruncatedSeries":
        return TruncatedSeries(self, {tuple(exps): self.one if coeff is None else coeff})

    def exponents(self, max_weight: int | None = None) -> Iterator[Exponent]:
        """All exponent vectors of weight <= max_weight (default cutoff)."""
        top = self.cutoff if max_weight is None else max_weight
        k = len(self.variables)

        def rec(i: int, left: int) -> Iterator[List[int]]:
            if i == k:
                yield []
                return
            for e in range(left // self.weights[i] + 1):
                for tail in rec(i + 1, left - e * self.weights[i]):
                    yield [e] + tail

        for exps in rec(0, top):
            yield tuple(exps)


class TruncatedSeries:
    """Power series truncated at a fixed total weight; immutable."""

    __slots__ = ("space", "terms")

    def __init__(self, space: SeriesSpace, terms: Dict[Exponent, object]):
        self.space = space
        cut = space.cutoff
        self.terms = {e: c for e, c in terms.items() if c and space.weight(e) <= cut}

    # ---- basic structure
    def coefficient(self, exps: Exponent):
        return self.terms.get(tuple(exps), self.space.zero)

    def constant_term(self):
        return self.coefficient(self.space.zero_exponent())

    def weight_part(self, d: int) -> "TruncatedSeries":
        wt = self.space.weight
        return TruncatedSeries(self.space, {e: c for e, c in self.terms.items() if wt(e) == d})

    def by_weight(self) -> List[Dict[Exponent, object]]:
        parts: List[Dict[Exponent, object]] = [dict() for _ in range(self.space.cutoff + 1)]
        for e, c in self.terms.items():
            parts[self.space.weight(e)][e] = c
        return parts

    def truncate(self, cutoff: int) -> "TruncatedSeries":
        wt = self.space.weight
        return TruncatedSeries(self.space, {e: c for e, c in self.terms.items() if wt(e) <= cutoff})

    def map_coefficients(self, f: Callable) -> "TruncatedSeries":
        return TruncatedSeries(self.space, {e: f(c) for e, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return (self - other).is_zero()
        return (self - self.space.const(other)).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = self.space.variables
        out = []
        for e in sorted(self.terms, key=lambda t: (self.space.weight(t), tuple(-z for z in t))):
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k)
            out.append(f"({self.terms[e]})" + (f"*{mono}" if mono else ""))
        return " + ".join(out)

    # ---- ring operations
    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.space != self.space:
                raise ValueError("series live in different spaces")
            return other
        return self.space.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return TruncatedSeries(self.space, terms)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.space, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.space, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        wt = self.space.weight
        cut = self.space.cutoff
        right = [(e, c, wt(e)) for e, c in other.terms.items()]
        terms: Dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            w1 = wt(e1)
            for e2, c2, w2 in right:
                if w1 + w2 > cut:
                    continue
                e = tuple(i + j for i, j in zip(e1, e2))
                prod = c1 * c2
                terms[e] = terms[e] + prod if e in terms else prod
        return TruncatedSeries(self.space, terms)

    def __rmul__(self, other):
        return TruncatedSeries(self.space, {e: other * c for e, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = self.space.const(self.space.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derive(self, name: str, times: int = 1) -> "TruncatedSeries":
        """Partial derivative; the result keeps the same cutoff."""
        i = self.space.index(name)
        terms: Dict[Exponent, object] = {}
        for e, c in self.terms.items():
            if e[i] < times:
                continue
            factor = 1
            for r in range(times):
                factor *= e[i] - r
            new = list(e)
            new[i] -= times
            terms[tuple(new)] = c * factor
        return TruncatedSeries(self.space, terms)

    def euler(self) -> "TruncatedSeries":
        """Weighted Euler operator sum_i weight_i x_i d/dx_i."""
        wt = self.space.weight
        return TruncatedSeries(self.space, {e: c * wt(e) for e, c in self.terms.items()})

    # ---- transcendental operations via the weight grading
    def exp(self) -> "TruncatedSeries":
        if self.constant_term():
            raise ValueError("series_exp needs zero constant term")
        s = self.by_weight()
        D = self.space.cutoff
        f: List[TruncatedSeries] = [self.space.const(self.space.one)]
        sp = self.space
        for d in range(1, D + 1):
            acc = sp.series({})
            for k in range(1, d + 1):
                if s[k]:
                    acc = acc + sp.series(s[k]) * f[d - k] * k
            f.append(acc.weight_part(d) * Fraction(1, d))
        return _sum_series(sp, f)

    def log(self) -> "TruncatedSeries":
        if self.constant_term() != self.space.one:
            raise ValueError("series_log needs constant term 1")
        f = self.by_weight()
        sp = self.space
        D = sp.cutoff
        s: List[TruncatedSeries] = [sp.series({})]
        for d in range(1, D + 1):
            acc = sp.series(f[d]) * d
            for k in range(1, d):
                if f[d - k]:
                    acc = acc - s[k] * sp.series(f[d - k]) * k
            s.append(acc.weight_part(d) * Fraction(1, d))
        return _sum_series(sp, s)

    def sqrt(self, root=None) -> "TruncatedSeries":
        """Square root with constant term ``root`` (default: the unit).

        ``root * root`` must equal the constant term and ``2*root`` must be
        invertible in the coefficient domain.
        """
        sp = self.space
        r = sp.one if root is None else root
        if r * r != self.constant_term() or not r:
            raise ValueError("series_sqrt needs a nonzero square constant term with the given root")
        inv = sp.one / (r * 2)
        f = self.by_weight()
        g: List[TruncatedSeries] = [sp.const(r)]
        for d in range(1, sp.cutoff + 1):
            acc = sp.series(f[d])
            for k in range(1, d):
                acc = acc - g[k] * g[d - k]
            g.append(acc.weight_part(d) * inv)
        return _sum_series(sp, g)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; needs an invertible constant term."""
        sp = self.space
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = sp.one / c0
        f = self.by_weight()
        g: List[TruncatedSeries] = [sp.const(inv0)]
        for d in range(1, sp.cutoff + 1):
            acc = sp.series({})
            for k in range(1, d + 1):
                if f[k]:
                    acc = acc + sp.series(f[k]) * g[d - k]
            g.append((-acc).weight_part(d) * inv0)
        return _sum_series(sp, g)

    def compose(self, mapping: Dict[str, "TruncatedSeries"]) -> "TruncatedSeries":
        """Substitute variables by series of positive valuation (same space)."""
        sp = self.space
        for name, s in mapping.items():
            if s.constant_term():
                raise ValueError(f"substituted series for {name} must have zero constant term")
        images = [mapping.get(name, sp.var(name)) for name in sp.variables]
        out = sp.series({})
        for e, c in self.terms.items():
            term = sp.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * images[i] ** k
            out = out + term
        return out


def _sum_series(space: SeriesSpace, parts: Iterable[TruncatedSeries]) -> TruncatedSeries:
    terms: Dict[Exponent, object] = {}
    for part in parts:
        terms.update(part.terms)
    return TruncatedSeries(space, terms)


# --------------------------------------------------------------------------
# tails in 1/lambda


class LaurentTail:
    """c_0 + c_1/lambda + ... + c_N/lambda^N, truncated at order N."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def _check(self, other: "LaurentTail") -> None:
        if other.order != self.order:
            raise ValueError("tails of different order")

    def __add__(self, other: "LaurentTail") -> "LaurentTail":
        self._check(other)
        return LaurentTail([p + q for p, q in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "LaurentTail") -> "LaurentTail":
        self._check(other)
        return LaurentTail([p - q for p, q in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "LaurentTail":
        return LaurentTail([-p for p in self.coeffs])

    def __mul__(self, other) -> "LaurentTail":
        if not isinstance(other, LaurentTail):
            return LaurentTail([p * other for p in self.coeffs])
        self._check(other)
        N = self.order
        out = []
        for k in range(N + 1):
            acc = self.coeffs[0] * other.coeffs[k]
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return LaurentTail(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentTail":
        """Multiply by lambda^{-k} (k >= 0), truncating."""
        zero = self.coeffs[0] - self.coeffs[0]
        return LaurentTail(([zero] * k + list(self.coeffs))[: self.order + 1])

    def map(self, f: Callable) -> "LaurentTail":
        return LaurentTail([f(c) for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentTail) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return "LaurentTail(" + ", ".join(str(c) for c in self.coeffs) + ")"


Matrix = List[List[object]]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[A[i][j] + B[i][j] for j in range(2)] for i in range(2)]


def mat_scale(A: Matrix, c) -> Matrix:
    return [[A[i][j] * c for j in range(2)] for i in range(2)]


def mat_trace(A: Matrix):
    return A[0][0] + A[1][1]


def mat_det(A: Matrix):
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


class Mat2:
    """Immutable 2x2 matrix over any coefficient ring, usable as a kernel
    coefficient in the cyclic sums (supports +, * and scalar *)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Matrix):
        self.rows = (tuple(rows[0]), tuple(rows[1]))

    def __getitem__(self, ij: Tuple[int, int]):
        return self.rows[ij[0]][ij[1]]

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(mat_add(self.rows, other.rows))

    def __neg__(self) -> "Mat2":
        return Mat2(mat_scale(self.rows, -1))

    def __sub__(self, other: "Mat2") -> "Mat2":
        return self + (-other)

    def __mul__(self, other) -> "Mat2":
        if isinstance(other, Mat2):
            return Mat2(mat_mul(self.rows, other.rows))
        return Mat2(mat_scale(self.rows, other))

    def __rmul__(self, other) -> "Mat2":
        return Mat2([[other * c for c in row] for row in self.rows])

    def trace(self):
        return mat_trace(self.rows)

    def det(self):
        return mat_det(self.rows)

    def map(self, f: Callable) -> "Mat2":
        return Mat2([[f(c) for c in row] for row in self.rows])

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat2) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Mat2({self.rows!r})"


# --------------------------------------------------------------------------
# cyclic products of two-variable kernels


def cyclic_orders(m: int) -> Iterator[Tuple[int, ...]]:
    """Representatives of S_m/C_m: cyclic orders starting at variable 0."""
    if m < 2:
        raise ValueError("cyclic sums need m >= 2")
    for rest in itertools.permutations(range(1, m)):
        yield (0,) + rest


def cyclic_kernel_coefficient(kernel, exponents: Sequence[int], zero, close: Callable = lambda c: c):
    """Coefficient of prod_j lambda_j^{exponents[j]} in sum over cyclic orders
    c of prod_j K(lambda_{c_j}, lambda_{c_{j+1}}).

    ``kernel(i, j, e)`` yields ``(f, coeff)`` for every term
    lambda_i^e lambda_j^f of K(lambda_i, lambda_j) with the given first
    exponent.  Kernels are expanded in the region |lambda_0| > |lambda_1| > ...
    so variable 0 only ever carries negative powers; that bounds the first
    exponent of every cycle.  ``close`` is applied to each cycle product
    (e.g. a matrix trace) and must be linear.
    """
    m = len(exponents)
    total = zero
    first = exponents[0]
    for cycle in cyclic_orders(m):
        for e0 in range(first + 1, 0):
            closing = first - e0
            memo: Dict[Tuple[int, int], object] = {}

            def suffix(pos: int, carried: int):
                key = (pos, carried)
                if key in memo:
                    return memo[key]
                var = cycle[pos]
                nxt = cycle[(pos + 1) % m]
                acc = None
                for f, coeff in kernel(var, nxt, exponents[var] - carried):
                    if pos == m - 1:
                        if f != closing:
                            continue
                        term = coeff
                    else:
                        rest = suffix(pos + 1, f)
                        if rest is None:
                            continue
                        term = coeff * rest
                    acc = term if acc is None else acc + term
                memo[key] = acc
                return acc

            for f, coeff in kernel(cycle[0], cycle[1], e0):
                rest = suffix(1, f)
                if rest is not None:
                    total = total + close(coeff * rest)
    return total


def laurent_cyclic_double_tail(kernel, m: int, order: int, zero, close: Callable = lambda c: c) -> Dict[Tuple[int, ...], object]:
    """All coefficients of the cyclic kernel sum at lambda_j^{-k_j-1},
    1 <= k_j <= order, keyed by (k_1, ..., k_m)."""
    if m < 2:
        raise ValueError("cyclic sums need m >= 2")
    out = {}
    for ks in itertools.product(range(1, order + 1), repeat=m):
        c = cyclic_kernel_coefficient(kernel, [-k - 1 for k in ks], zero, close)
        if c:
            out[ks] = c
    return out
