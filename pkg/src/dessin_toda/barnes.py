"""Bernoulli numbers, Barnes G log-asymptotics and the constant term of the
corrected free energy.

Logarithms are kept as formal symbols: a ``LogLinearScalar`` is
c_1 + c_x log x + c_xa log(x+a) + c_a log a + c_eps log eps + c_2pi log(2 pi)
+ c_z zeta'(-1) + c_m log(-1) with rational-function coefficients in (x, a).
Products of two log symbols never occur in anything computed here and are
rejected.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Dict, Iterable, NamedTuple, Optional, Tuple

from .algebra import FGEN, FIELD

__all__ = [
    "LOG_SYMBOLS",
    "bernoulli",
    "LogLinearScalar",
    "EpsExpansion",
    "barnes_log_asymp",
    "corrected_constant_term",
    "correction_factor_log",
    "constant_term_agreement",
    "deftau3_initial_check",
    "constant_dilaton_defect",
]

LOG_SYMBOLS = ("1", "log x", "log(x+a)", "log a", "log eps", "log 2pi", "zeta'(-1)", "log(-1)")

X, A = FGEN["x"], FGEN["a"]


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """B_k with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0."""
    if k < 0:
        raise ValueError("index must be nonnegative")
    if k == 0:
        return Fraction(1)
    total = sum(comb(k + 1, j) * bernoulli(j) for j in range(k))
    return -total / (k + 1)


class LogLinearScalar:
    """Linear combination of 1 and the formal log/constant symbols."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Optional[Dict[str, object]] = None):
        out = {}
        for k, val in (coeffs or {}).items():
            if k not in LOG_SYMBOLS:
                raise KeyError(f"unknown symbol {k!r}")
            val = FIELD(val)
            if val:
                out[k] = val
        self.c = out

    @classmethod
    def rational(cls, r) -> "LogLinearScalar":
        return cls({"1": r})

    @classmethod
    def symbol(cls, name: str, coeff=1) -> "LogLinearScalar":
        return cls({name: coeff})

    def __getitem__(self, key: str):
        return self.c.get(key, FIELD.zero)

    def __add__(self, other) -> "LogLinearScalar":
        if not isinstance(other, LogLinearScalar):
            other = LogLinearScalar.rational(other)
        out = dict(self.c)
        for k, val in other.c.items():
            out[k] = out.get(k, FIELD.zero) + val
        return LogLinearScalar(out)

    __radd__ = __add__

    def __neg__(self) -> "LogLinearScalar":
        return LogLinearScalar({k: -val for k, val in self.c.items()})

    def __sub__(self, other) -> "LogLinearScalar":
        if not isinstance(other, LogLinearScalar):
            other = LogLinearScalar.rational(other)
        return self + (-other)

    def __rsub__(self, other) -> "LogLinearScalar":
        return (-self) + other

    def __mul__(self, other) -> "LogLinearScalar":
        if isinstance(other, LogLinearScalar):
            if other.is_rational():
                other = other["1"]
            elif self.is_rational():
                return other * self["1"]
            else:
                raise ArithmeticError("product of two log symbols")
        return LogLinearScalar({k: val * other for k, val in self.c.items()})

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return all(k == "1" for k in self.c)

    def is_zero(self) -> bool:
        return not self.c

    def diff(self, var: str) -> "LogLinearScalar":
        """d/dx or d/da, with d log x/dx = 1/x, d log(x+a)/dx = 1/(x+a), ..."""
        g = FGEN[var]
        out = LogLinearScalar({k: val.diff(g) for k, val in self.c.items()})
        logs = {"log x": X, "log(x+a)": X + A, "log a": A}
        for name, arg in logs.items():
            if name in self.c:
                out = out + LogLinearScalar.rational(self.c[name] * arg.diff(g) / arg)
        return out

    def euler_xa(self) -> "LogLinearScalar":
        """(x d/dx + a d/da) applied."""
        return self.diff("x") * X + self.diff("a") * A

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogLinearScalar):
            other = LogLinearScalar.rational(other)
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted((k, str(val)) for k, val in self.c.items())))

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for k in LOG_SYMBOLS:
            if k in self.c:
                parts.append(f"({self.c[k]})" if k == "1" else f"({self.c[k]})*{k}")
        return " + ".join(parts)


class EpsExpansion:
    """sum_k coeff_k eps^k for low <= k <= high, LogLinearScalar coefficients."""

    def __init__(self, terms: Dict[int, LogLinearScalar], high: int):
        self.high = high
        self.terms = {k: val for k, val in terms.items() if k <= high and not val.is_zero()}

    def __getitem__(self, k: int) -> LogLinearScalar:
        return self.terms.get(k, LogLinearScalar())

    def _merge(self, other: "EpsExpansion", sign: int) -> "EpsExpansion":
        high = min(self.high, other.high)
        out = dict(self.terms)
        for k, val in other.terms.items():
            out[k] = out.get(k, LogLinearScalar()) + val * sign
        return EpsExpansion(out, high)

    def __add__(self, other: "EpsExpansion") -> "EpsExpansion":
        return self._merge(other, 1)

    def __sub__(self, other: "EpsExpansion") -> "EpsExpansion":
        return self._merge(other, -1)

    def __neg__(self) -> "EpsExpansion":
        return EpsExpansion({k: -val for k, val in self.terms.items()}, self.high)

    def map(self, f: Callable[[LogLinearScalar], LogLinearScalar]) -> "EpsExpansion":
        return EpsExpansion({k: f(val) for k, val in self.terms.items()}, self.high)

    def diff(self, var: str, times: int = 1) -> "EpsExpansion":
        out = self
        for _ in range(times):
            out = out.map(lambda s: s.diff(var))
        return out

    def eps_euler(self) -> "EpsExpansion":
        """eps d/deps: k c eps^k, plus c eps^k from c log(eps) eps^k."""
        out: Dict[int, LogLinearScalar] = {}
        for k, val in self.terms.items():
            term = val * k
            if "log eps" in val.c:
                term = term + LogLinearScalar.rational(val["log eps"])
            out[k] = term
        return EpsExpansion(out, self.high)

    def shift_order(self, s: int) -> "EpsExpansion":
        return EpsExpansion({k + s: val for k, val in self.terms.items()}, self.high + s)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, EpsExpansion) and self.high == other.high and self.terms == other.terms

    def __repr__(self) -> str:
        return " + ".join(f"[{val}]*eps^{k}" for k, val in sorted(self.terms.items())) or "0"


_ARGS = {"x": (X, "log x"), "x+a": (X + A, "log(x+a)"), "v": (X + A, "log(x+a)"), "a": (A, "log a")}


def barnes_log_asymp(scale: str, G: int) -> EpsExpansion:
    """log G(1 + c/eps) as eps -> 0, c in {x, x+a, a}, through eps^{2G}.

    z^2/2 (log z - 3/2) + z/2 log(2 pi) - log(z)/12 + zeta'(-1)
    + sum_l B_{2l+2} / (4 l (l+1) z^{2l}), with log z = log c - log eps.
    """
    if scale not in _ARGS:
        raise ValueError(f"unknown scale {scale!r}")
    if G < 0:
        raise ValueError("order must be nonnegative")
    c, logc = _ARGS[scale]
    S = LogLinearScalar.symbol
    terms: Dict[int, LogLinearScalar] = {}
    half_c2 = c * c / 2
    terms[-2] = S(logc, half_c2) - S("log eps", half_c2) + LogLinearScalar.rational(-Fraction(3, 2) * half_c2)
    terms[-1] = S("log 2pi", c / 2)
    terms[0] = S(logc, Fraction(-1, 12)) + S("log eps", Fraction(1, 12)) + S("zeta'(-1)")
    for l in range(1, G + 1):
        terms[2 * l] = LogLinearScalar.rational(
            FIELD(bernoulli(2 * l + 2) / (4 * l * (l + 1))) / c ** (2 * l)
        )
    return EpsExpansion(terms, 2 * G)


def corrected_constant_term(G: int) -> EpsExpansion:
    """The constant (p = 0) part of the corrected free energy through eps^{2G}:

    eps^-2 (x^2/2 log x + (x+a)^2/2 log(x+a) - a^2/2 log a - 3/2 x(x+a))
    - (log x + log(x+a) - log a)/12 + zeta'(-1)
    + sum_{g>=2} B_{2g}/(4g(g-1)) eps^{2g-2} (x^{2-2g} + (x+a)^{2-2g} - a^{2-2g}).
    """
    if G < 1:
        raise ValueError("order must be positive")
    S = LogLinearScalar.symbol
    terms: Dict[int, LogLinearScalar] = {
        -2: S("log x", X * X / 2) + S("log(x+a)", (X + A) ** 2 / 2) - S("log a", A * A / 2)
        + LogLinearScalar.rational(-Fraction(3, 2) * X * (X + A)),
        0: S("log x", Fraction(-1, 12)) + S("log(x+a)", Fraction(-1, 12)) + S("log a", Fraction(1, 12)) + S("zeta'(-1)"),
    }
    for g in range(2, G + 2):
        coef = FIELD(bernoulli(2 * g) / (4 * g * (g - 1)))
        k = 2 * g - 2
        terms[k] = LogLinearScalar.rational(coef / X ** k + coef / (X + A) ** k - coef / A ** k)
    return EpsExpansion(terms, 2 * G)


def correction_factor_log(G: int, prefactor: str = "lue") -> EpsExpansion:
    """log of eps^{-1/12 + P/eps^2} (2 pi)^{-Q/eps} G(1+u/eps)G(1+v/eps)/G(1+(v-u)/eps)
    with u = x, v = x + a.

    ``prefactor="lue"`` uses P = uv, Q = u (the size-n Laguerre normalization
    eps^{-1/12 + n(n+alpha)} (2 pi)^{-n}); ``"printed"`` uses P = v^2, Q = v,
    which leaves uncancelled log eps and log 2 pi terms.
    """
    u, v = X, X + A
    if prefactor == "lue":
        P, Q = u * v, u
    elif prefactor == "printed":
        P, Q = v * v, v
    else:
        raise ValueError(f"unknown prefactor {prefactor!r}")
    S = LogLinearScalar.symbol
    pre = EpsExpansion({
        -2: S("log eps", P),
        -1: S("log 2pi", -Q),
        0: S("log eps", Fraction(-1, 12)),
    }, 2 * G)
    return pre + barnes_log_asymp("x", G) + barnes_log_asymp("x+a", G) - barnes_log_asymp("a", G)


class Agreement(NamedTuple):
    ok: bool
    difference: EpsExpansion

    def __bool__(self) -> bool:
        return self.ok


def constant_term_agreement(G: int, prefactor: str = "lue") -> Agreement:
    """Compare the displayed constant term with the log of the correction factor."""
    diff = corrected_constant_term(G) - correction_factor_log(G, prefactor)
    return Agreement(diff.is_zero(), diff)


class Deftau3Result(NamedTuple):
    ok: bool
    failed_order: Optional[int]

    def __bool__(self) -> bool:
        return self.ok


def deftau3_initial_check(G: int) -> Deftau3Result:
    """(e^{eps d/dx} + e^{-eps d/dx} - 2) F_const = log x + log(x+a) through eps^{2G}.

    The operator is sum_{j>=1} 2 eps^{2j} d^{2j}/dx^{2j} / (2j)!; the eps^{2k}
    coefficient of the result uses F_const through eps^{2k-2}.
    """
    if G < 1:
        raise ValueError("order must be positive")
    F = corrected_constant_term(G + 1)
    target = LogLinearScalar.symbol("log x") + LogLinearScalar.symbol("log(x+a)")
    derivs = {0: F}
    for k in range(0, G + 1):
        total = LogLinearScalar()
        for j in range(1, k + 2):
            if 2 * j not in derivs:
                derivs[2 * j] = derivs[2 * j - 2].diff("x", 2)
            block = derivs[2 * j][2 * k - 2 * j]
            total = total + block * Fraction(2, factorial(2 * j))
        expected = target if k == 0 else LogLinearScalar()
        if total != expected:
            return Deftau3Result(False, 2 * k)
    return Deftau3Result(True, None)


def constant_dilaton_defect(G: int = 4):
    """(eps d/deps + x d/dx + a d/da) F_const + 1/12, which must be the
    rational function x(x+a)/eps^2; returned as an element of the field."""
    F = corrected_constant_term(G)
    out = F.eps_euler() + F.map(LogLinearScalar.euler_xa)
    out = out + EpsExpansion({0: LogLinearScalar.rational(Fraction(1, 12))}, out.high)
    total = FIELD.zero
    E = FGEN["eps"]
    for k, val in out.terms.items():
        if not val.is_rational():
            raise ArithmeticError(f"dilaton defect has log terms at eps^{k}: {val}")
        total += val["1"] * E ** k
    return total
