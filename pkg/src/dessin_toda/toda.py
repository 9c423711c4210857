"""Matrix resolvent calculus for the Toda lattice on a finite jet window.

Jet variables V_k, W_k stand for V(x + k eps), W(x + k eps).  The shift
Lambda sends V_k to V_{k+1}.  Every identity here is homogeneous in eps
once Lambda is fixed, so the jet ring works at eps = 1.

The basic resolvent R(lambda) = [[1 + alpha, beta], [gamma, -alpha]] solves
Lambda(R) U = U R with U = [[V_0 - lambda, W_0], [-1, 0]], tr R = 1,
det R = 0.  Order by order:

    beta = -W_0 Lambda(gamma)                         (entry (2,2))
    gamma_{k+1} = V_{-1} gamma_k + alpha_k + Lambda^{-1} alpha_k   (entry (2,1))
    alpha_k = [W_0 Lambda(gamma) gamma - alpha^2]_k   (det R = 0)

and the remaining (1,1), (1,2) equations are checked afterwards.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.rings import ring

from .algebra import RING, LaurentTail, Mat2, a, n, substitute, w
from .dessins import a_coeff, correlator, h_series
from .lue import ResolventTail, m_matrix, resolvent_cyclic_coefficient
from .partitions import partition

__all__ = [
    "JetRing",
    "DiffOp",
    "JetResolvent",
    "solve_resolvent",
    "check_resolvent_equations",
    "omega_and_s",
    "toda_flow",
    "verify_tau_structure",
    "TauReport",
    "dessin_initial_data",
    "specialize_resolvent",
    "WavePair",
    "wave_pair",
    "check_eigen_equations",
    "check_wronskian",
    "kernel_bridge_check",
    "product_formula_matrix",
    "product_formula_check",
    "one_point_difference_check",
    "mr_n_point",
    "time_to_power_sum",
]


class JetRing:
    """Polynomials over QQ in V_k, W_k for -K <= k <= K."""

    def __init__(self, K: int):
        if K < 1:
            raise ValueError("window must be at least 1")
        self.K = K
        names = [f"V{k}" for k in range(-K, K + 1)] + [f"W{k}" for k in range(-K, K + 1)]
        names = [s.replace("-", "m") for s in names]
        self.ring, *gens = ring(",".join(names), QQ)
        self.size = 2 * K + 1
        self._V = gens[: self.size]
        self._W = gens[self.size:]
        self.zero = self.ring.zero
        self.one = self.ring.one

    def V(self, k: int):
        self._check(k)
        return self._V[k + self.K]

    def W(self, k: int):
        self._check(k)
        return self._W[k + self.K]

    def _check(self, k: int) -> None:
        if not -self.K <= k <= self.K:
            raise IndexError(f"shift {k} outside the jet window [-{self.K}, {self.K}]")

    def support(self, p) -> Tuple[int, int]:
        """(lowest, highest) shift index occurring in p; (0, 0) for constants."""
        lo, hi = None, None
        for e in p.itermonoms():
            for block in (e[: self.size], e[self.size:]):
                for i, k in enumerate(block):
                    if k:
                        s = i - self.K
                        lo = s if lo is None else min(lo, s)
                        hi = s if hi is None else max(hi, s)
        return (lo or 0, hi or 0) if lo is not None else (0, 0)

    def shift(self, p, s: int = 1):
        """Lambda^s(p); raises if the result leaves the window."""
        if s == 0 or p.is_ground:
            return p
        size = self.size
        out = {}
        for e, c in p.iterterms():
            new = [0] * (2 * size)
            for off in (0, size):
                for i in range(size):
                    k = e[off + i]
                    if k:
                        j = i + s
                        if not 0 <= j < size:
                            raise IndexError("shift leaves the jet window; enlarge K")
                        new[off + j] = k
            out[tuple(new)] = c
        return self.ring.from_dict(out)

    def derive(self, p, dV: Callable[[int], object], dW: Callable[[int], object]):
        """Apply the derivation determined by d/dt V_0 = dV(0) etc.;
        dV(k) must return Lambda^k of the V-velocity."""
        out = self.zero
        for k in range(-self.K, self.K + 1):
            gv, gw = self.V(k), self.W(k)
            pv = p.diff(gv)
            if pv:
                out += pv * dV(k)
            pw = p.diff(gw)
            if pw:
                out += pw * dW(k)
        return out

    def evaluate(self, p, Vk: Callable[[int], object], Wk: Callable[[int], object]):
        """Substitute V_k -> Vk(k), W_k -> Wk(k) (values in RING)."""
        size, K = self.size, self.K
        vals = [RING(Vk(i - K)) for i in range(size)] + [RING(Wk(i - K)) for i in range(size)]
        powers: Dict[Tuple[int, int], object] = {}

        def pw(i: int, k: int):
            key = (i, k)
            if key not in powers:
                powers[key] = vals[i] ** k
            return powers[key]

        total = RING.zero
        for e, c in p.iterterms():
            term = RING(Fraction(int(c.numerator), int(c.denominator)))
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            total += term
        return total


# --------------------------------------------------------------------------
# difference operators sum_k c_k Lambda^k with jet coefficients


class DiffOp:
    def __init__(self, jet: JetRing, terms: Dict[int, object]):
        self.jet = jet
        self.terms = {k: c for k, c in terms.items() if c}

    def __mul__(self, other: "DiffOp") -> "DiffOp":
        out: Dict[int, object] = {}
        for k, c in self.terms.items():
            for l, d in other.terms.items():
                val = c * self.jet.shift(d, k)
                out[k + l] = out.get(k + l, self.jet.zero) + val
        return DiffOp(self.jet, out)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, self.jet.zero) - c
        return DiffOp(self.jet, out)

    def plus(self) -> "DiffOp":
        return DiffOp(self.jet, {k: c for k, c in self.terms.items() if k >= 0})


def lax_operator(jet: JetRing) -> DiffOp:
    return DiffOp(jet, {1: jet.one, 0: jet.V(0), -1: jet.W(0)})


@lru_cache(maxsize=None)
def _flow_velocities(K: int, i: int):
    jet = _jet(K)
    L = lax_operator(jet)
    P = L
    for _ in range(i):
        P = P * L
    P = P.plus()
    C = P * L - L * P
    extra = [k for k in C.terms if k not in (0, -1)]
    if extra:
        raise ArithmeticError(f"[(L^{i + 1})_+, L] has terms at Lambda^{extra}")
    return C.terms.get(0, jet.zero), C.terms.get(-1, jet.zero)


def toda_flow(jet: JetRing, i: int) -> Tuple[object, object]:
    """(dV_0/dt_i, dW_0/dt_i) from [(L^{i+1})_+, L] (eps = 1)."""
    if i < 0:
        raise ValueError("flow index must be nonnegative")
    if jet is not _jet(jet.K):
        raise ValueError("use the shared jet ring for this window")
    return _flow_velocities(jet.K, i)


@lru_cache(maxsize=None)
def _jet(K: int) -> JetRing:
    return JetRing(K)


def _time_derivative(jet: JetRing, i: int):
    dv, dw = toda_flow(jet, i)
    cache: Dict[Tuple[str, int], object] = {}

    def lift(kind: str, base, k: int):
        key = (kind, k)
        if key not in cache:
            cache[key] = jet.shift(base, k)
        return cache[key]

    def apply(p):
        return jet.derive(p, lambda k: lift("V", dv, k), lambda k: lift("W", dw, k))

    return apply


# --------------------------------------------------------------------------
# the resolvent


class JetResolvent(NamedTuple):
    jet: JetRing
    alpha: List[object]
    beta: List[object]
    gamma: List[object]

    @property
    def order(self) -> int:
        return len(self.alpha) - 1

    def coefficient(self, k: int) -> Mat2:
        z = self.jet.zero
        if k == 0:
            return Mat2([[self.jet.one, z], [z, z]])
        return Mat2([[self.alpha[k], self.beta[k]], [self.gamma[k], -self.alpha[k]]])

    def matrices(self) -> List[Mat2]:
        return [self.coefficient(k) for k in range(self.order + 1)]


def window_for(N: int) -> int:
    return N + 4


@lru_cache(maxsize=None)
def solve_resolvent(N: int, K: Optional[int] = None) -> JetResolvent:
    """Coefficients R_1..R_N in the jet ring with window K (default N + 4)."""
    if N < 1:
        raise ValueError("order must be positive")
    jet = _jet(window_for(N) if K is None else K)
    z = jet.zero
    V, W = jet.V, jet.W
    alpha = [z] * (N + 1)
    gamma = [z] * (N + 2)
    beta = [z] * (N + 1)
    sg: List[object] = [z] * (N + 2)  # Lambda(gamma_k)
    gamma[1] = jet.one
    sg[1] = jet.one
    for k in range(1, N + 1):
        if k >= 2:
            acc = z
            for i in range(1, k):
                acc += sg[i] * gamma[k - i] * W(0)
                acc -= alpha[i] * alpha[k - i]
            alpha[k] = acc
        beta[k] = -W(0) * sg[k]
        gamma[k + 1] = V(-1) * gamma[k] + alpha[k] + jet.shift(alpha[k], -1)
        sg[k + 1] = jet.shift(gamma[k + 1], 1)
    R = JetResolvent(jet, alpha, beta, gamma[: N + 1])
    bad = check_resolvent_equations(R)
    if bad is not None:
        raise ArithmeticError(f"resolvent equations fail at order {bad}")
    return R


def check_resolvent_equations(R: JetResolvent) -> Optional[int]:
    """First order k where Lambda(R)U - UR, tr R or det R fails; None if all hold."""
    jet = R.jet
    N = R.order
    mats = R.matrices()
    shifted = [m.map(lambda c: jet.shift(c, 1)) for m in mats]
    V0, W0 = jet.V(0), jet.W(0)
    z = jet.zero
    U0 = Mat2([[V0, W0], [-jet.one, z]])
    Ul = Mat2([[-jet.one, z], [z, z]])  # coefficient of lambda
    for k in range(N):
        # coefficient of lambda^{-k}: S_k U0 + S_{k+1} Ul - U0 R_k - Ul R_{k+1}
        lhs = shifted[k] * U0 + shifted[k + 1] * Ul - U0 * mats[k] - Ul * mats[k + 1]
        if any(lhs[i, j] for i in range(2) for j in range(2)):
            return k
    for k in range(1, N + 1):
        if mats[k].trace():
            return k
        det = z
        for i in range(k + 1):
            A, B = mats[i], mats[k - i]
            det += A[0, 0] * B[1, 1] - A[0, 1] * B[1, 0]
        if det:
            return k
    return None


class OmegaS(NamedTuple):
    omega: Dict[Tuple[int, int], object]
    S: List[object]


def omega_and_s(N: int) -> OmegaS:
    """Omega_{i,j} (i + j <= N - 2) and S_i (i <= N - 2) in the jet ring."""
    if N < 2:
        raise ValueError("need order at least 2")
    R = solve_resolvent(N)
    jet = R.jet
    mats = R.matrices()
    # P_{a,b} = [lambda^{-a} mu^{-b}] (tr R(lambda) R(mu) - 1)
    P: Dict[Tuple[int, int], object] = {}
    for s in range(N + 1):
        for a_ in range(s + 1):
            b = s - a_
            val = (mats[a_] * mats[b]).trace()
            if s == 0:
                val = val - 1
            P[(a_, b)] = val
    # P = (lambda - mu)^2 Q with Q_{p,q} at lambda^{-p} mu^{-q}
    Q: Dict[Tuple[int, int], object] = {}
    z = jet.zero
    for s in range(2, N + 3):
        for p in range(0, s + 1):
            q = s - p
            if p < 2:
                Q[(p, q)] = z
                continue
            val = P.get((p - 2, q), None)
            if val is None:
                continue
            val = val + 2 * Q.get((p - 1, q + 1), z) - Q.get((p - 2, q + 2), z)
            Q[(p, q)] = val
    for (p, q), val in Q.items():
        if q < 2 and val:
            raise ArithmeticError("tr R(lambda)R(mu) - 1 is not divisible by (lambda - mu)^2")
    omega = {(p - 2, q - 2): val for (p, q), val in Q.items() if p >= 2 and q >= 2 and p + q <= N + 2}
    S = [jet.shift(R.gamma[i + 2], 1) for i in range(N - 1)]
    return OmegaS(omega, S)


class TauReport(NamedTuple):
    ok: bool
    failures: List[str]

    def __bool__(self) -> bool:
        return self.ok


def verify_tau_structure(r: int = 3, check_commuting: bool = True) -> TauReport:
    """Omega symmetry, (Lambda-1)Omega_{ij} = dS_i/dt_j and
    W (1 - Lambda^{-1}) S_i = dW/dt_i for i, j <= r (eps = 1); optionally
    dOmega_{ij}/dt_k = dOmega_{jk}/dt_i for i, j, k <= min(r, 2)."""
    N = 2 * r + 2
    R = solve_resolvent(N)
    jet = R.jet
    om = omega_and_s(N)
    fails: List[str] = []
    dt = [_time_derivative(jet, i) for i in range(r + 1)]
    if om.omega[(0, 0)] != jet.W(0):
        fails.append("Omega_{0,0} != W_0")
    for i in range(r + 1):
        for j in range(r + 1):
            if om.omega[(i, j)] != om.omega[(j, i)]:
                fails.append(f"Omega_{i},{j} not symmetric")
            if jet.shift(om.omega[(i, j)], 1) - om.omega[(i, j)] != dt[j](om.S[i]):
                fails.append(f"(Lambda-1)Omega_{i},{j} != dS_{i}/dt_{j}")
        lhs = jet.W(0) * (om.S[i] - jet.shift(om.S[i], -1))
        if lhs != toda_flow(jet, i)[1]:
            fails.append(f"(1-Lambda^-1)S_{i} != dlogW/dt_{i}")
    if check_commuting:
        rr = min(r, 2)
        for i in range(rr + 1):
            for j in range(rr + 1):
                for k in range(rr + 1):
                    if dt[k](om.omega[(i, j)]) != dt[i](om.omega[(j, k)]):
                        fails.append(f"dOmega_{i},{j}/dt_{k} != dOmega_{j},{k}/dt_{i}")
    return TauReport(not fails, fails)


# --------------------------------------------------------------------------
# dessin initial data and wave functions (eps = 1)


def dessin_initial_data(in_w: bool = True):
    """(V_k, W_k) as functions of k: V = 2(n+k) + alpha + 1, W = (n+k)(n+k+alpha).

    With ``in_w`` the values are written through w = n + alpha."""
    if in_w:
        return (lambda k: n + w + 2 * k + 1), (lambda k: (n + k) * (w + k))
    return (lambda k: 2 * (n + k) + a + 1), (lambda k: (n + k) * (n + k + a))


def specialize_resolvent(N: int, in_w: bool = True) -> ResolventTail:
    R = solve_resolvent(N)
    Vk, Wk = dessin_initial_data(in_w)
    ev = lambda c: R.jet.evaluate(c, Vk, Wk)
    return ResolventTail([m.map(ev) for m in R.matrices()])


def _hA(N: int, k: int) -> LaurentTail:
    """h(-lambda, -(n+k), -(w+k)): tail of Lambda^k(psi_A) / lambda^{n+k}."""
    return h_series(N, -(n + k), -(w + k), flip=True)


def _hB(N: int, k: int) -> LaurentTail:
    """h(lambda, n+1+k, w+1+k): tail of Lambda^k(psi_B) lambda^{n+k} / Gamma(1+n+k)Gamma(1+w+k)."""
    return h_series(N, n + 1 + k, w + 1 + k)


class WavePair(NamedTuple):
    order: int
    A: LaurentTail
    B: LaurentTail


def wave_pair(N: int) -> WavePair:
    """Tails of psi_A and psi_B (w = n + alpha; prefactors removed)."""
    if N < 1:
        raise ValueError("order must be positive")
    return WavePair(N, _hA(N, 0), _hB(N, 0))


def _raise(t: LaurentTail) -> List[object]:
    """Coefficients of lambda * t, from lambda^1 down to lambda^{-(N-1)}."""
    return list(t.coeffs)


def check_eigen_equations(N: int) -> Tuple[bool, bool]:
    """L_ini psi = lambda psi for both wave functions, tails to lambda^{-N}.

    psi_A: lambda hA(n+1) + (n+w+1) hA(n) + nw/lambda hA(n-1) = lambda hA(n)
    psi_B: (n+1)(w+1)/lambda hB(n+1) + (n+w+1) hB(n) + lambda hB(n-1) = lambda hB(n)
    """
    M = N + 1
    A0, A1, Am = _hA(M, 0), _hA(M, 1), _hA(M, -1)
    B0, B1, Bm = _hB(M, 0), _hB(M, 1), _hB(M, -1)
    c = n + w + 1
    okA = okB = True
    # compare coefficients of lambda^{1-k}, k = 0..N
    for k in range(N + 1):
        lhs = A1[k] + c * (A0[k - 1] if k >= 1 else 0) + n * w * (Am[k - 2] if k >= 2 else 0)
        if lhs != A0[k]:
            okA = False
        lhs = (n + 1) * (w + 1) * (B1[k - 2] if k >= 2 else 0) + c * (B0[k - 1] if k >= 1 else 0) + Bm[k]
        if lhs != B0[k]:
            okB = False
    return okA, okB


def check_wronskian(N: int) -> bool:
    """d(lambda) e^{s(n-1)} = lambda, i.e. hA(n)hB(n-1) - nw lambda^{-2} hB(n)hA(n-1) = 1."""
    d = _hA(N, 0) * _hB(N, -1) - (_hB(N, 0) * _hA(N, -1)).shift(2) * (n * w)
    return d.coeffs[0] == 1 and not any(d.coeffs[1:])


def kernel_bridge_check(order: int = 8) -> bool:
    """e^{s(n-1)} D(lambda, mu) = lambda^n mu^{1-n} Ahat(lambda, mu), tails to
    bi-order (order, order).

    With hA, hB the tails, the numerator is
    Num = hA(lambda; n) hB(mu; n-1) - nw/(lambda mu) hA(lambda; n-1) hB(mu; n),
    and the claim is Num - 1 = (lambda - mu) sum A_{j,i} lambda^{-i-1} mu^{-j-1}.
    """
    B = order + 1
    A0, Am = _hA(B, 0), _hA(B, -1)
    B0, Bm = _hB(B, 0), _hB(B, -1)

    def num(p: int, q: int):
        val = A0[p] * Bm[q]
        if p >= 1 and q >= 1:
            val = val - n * w * Am[p - 1] * B0[q - 1]
        if p == 0 and q == 0:
            val = val - 1
        return val

    def T(p: int, q: int):
        # coefficient of lambda^{-p} mu^{-q} in sum A_{j,i} lambda^{-i-1} mu^{-j-1}
        if p < 1 or q < 1:
            return 0
        return substitute(a_coeff(q - 1, p - 1), {})

    for p in range(order + 1):
        for q in range(order + 1):
            if num(p, q) != T(p + 1, q) - T(p, q + 1):
                return False
    return True


def product_formula_matrix(N: int) -> ResolventTail:
    """[[1 + alpha, beta], [gamma, -alpha]] from the wave functions:
    alpha = -1 + hA(n) hB(n-1), beta = -nw/lambda hA(n) hB(n),
    gamma = hA(n-1) hB(n-1)/lambda."""
    A0, Am = _hA(N, 0), _hA(N, -1)
    B0, Bm = _hB(N, 0), _hB(N, -1)
    one_plus_alpha = A0 * Bm
    beta = (A0 * B0).shift(1) * (-n * w)
    gamma = (Am * Bm).shift(1)
    minus_alpha = LaurentTail([RING.zero] + [-c for c in one_plus_alpha.coeffs[1:]])
    return ResolventTail.from_entries([[one_plus_alpha, beta], [gamma, minus_alpha]])


class ProductReport(NamedTuple):
    ok: bool
    failure: Optional[str]

    def __bool__(self) -> bool:
        return self.ok


def product_formula_check(N: int = 6) -> ProductReport:
    """Specialized jet resolvent == wave-function product formula == M(lambda)."""
    spec = specialize_resolvent(N)
    prodm = product_formula_matrix(N)
    M = m_matrix(N)
    for k in range(N + 1):
        for i in range(2):
            for j in range(2):
                x1, x2, x3 = spec.coeffs[k][i, j], prodm.coeffs[k][i, j], M.coeffs[k][i, j]
                if x1 != x2:
                    return ProductReport(False, f"resolvent vs product formula at lambda^-{k}, entry ({i + 1},{j + 1})")
                if x2 != x3:
                    return ProductReport(False, f"product formula vs M at lambda^-{k}, entry ({i + 1},{j + 1})")
    return ProductReport(True, None)


def one_point_difference_check(jmax: int = 6) -> bool:
    """(Lambda - 1)(j <tau_j>) = S_{j-1} at the initial data, j = 1..jmax."""
    om = omega_and_s(jmax + 1)
    Vk, Wk = dessin_initial_data(True)
    for j in range(1, jmax + 1):
        t = correlator((j,)) * j
        diff = substitute(t, {n: n + 1, w: w + 1}) - t
        if diff != solve_resolvent(jmax + 1).jet.evaluate(om.S[j - 1], Vk, Wk):
            return False
    return True


def time_to_power_sum(i: int) -> Tuple[int, Fraction]:
    """t_i = p_{i+1}/(i+1): returns (i+1, 1/(i+1)); d/dt_i = (i+1) d/dp_{i+1}."""
    if i < 0:
        raise ValueError("time index must be nonnegative")
    return i + 1, Fraction(1, i + 1)


def mr_n_point(mus: Sequence[int]):
    """<tau_mu>(n, w, 1), m >= 2, from the cyclic trace formula for the
    resolvent specialized at the dessin initial data."""
    mu = partition(mus)
    if len(mu) < 2:
        raise ValueError("the n-point formula needs m >= 2")
    # derivatives in t_{mu_j - 1}; d/dt_i = (i+1) d/dp_{i+1}
    res = _specialized(sum(mu))
    coeff = RING(resolvent_cyclic_coefficient(res, [-k - 1 for k in mu]))
    q, r = coeff.div(RING(prod(time_to_power_sum(k - 1)[0] for k in mu)))
    if r:
        raise ArithmeticError("non-exact division in the n-point formula")
    return q


@lru_cache(maxsize=None)
def _specialized(N: int) -> ResolventTail:
    return specialize_resolvent(max(N, 1))
