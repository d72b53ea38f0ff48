"""Moebius functions attached to a set S, and the generating Dirichlet series.

Two distinct Moebius-like companions show up:

  * mu_S, defined through ordinary Dirichlet convolution by
    mu_S = rho_S * mu, equivalently sum_{d | n} mu_S(d) = rho_S(n).
    For multiplicative S it is multiplicative with
    mu_S(p^a) = rho_S(p^a) - rho_S(p^(a-1)), so its values lie in {-1, 0, 1}.

  * mu_k (k-full Moebius), the inverse of the constant-1 function under the
    convolution restricted to k-full gcds: multiplicative, with prime-power
    values depending on the exponent only:
        mu_k(p^a) = -1              for 1 <= a < 2k
        mu_k(p^a) = mu_k(p^(a-1)) - mu_k(p^(a-k))   for a >= 2k.

The series zeta_S(z) = sum rho_S(n) n^(-z) converges for z > 1 and satisfies
sum mu_S(n) n^(-z) = zeta_S(z) / zeta(z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import divisors, factorize, prime_array
from .errors import ConsistencyError, LimitError
from .sets import SSet, Verdict, parse_sset, rho, rho_table

DIRECT_TRUNCATION_CAP = 4_000_000   # direct series sums refuse beyond this
EULER_CUTOFF_CAP = 4_000_000        # prime cutoff cap for product evaluation


def mu_table(limit: int) -> np.ndarray:
    """Ordinary Moebius function on 0..limit (int64; index 0 unused)."""
    mu = np.ones(limit + 1, dtype=np.int64)
    mu[0] = 0
    for p in prime_array(limit).tolist():
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    return mu


def mu_set_table(S: SSet, N: int) -> np.ndarray:
    """Table of mu_S on 0..N via the sweep mu_S = rho_S * mu (index 0 unused).

    Works for arbitrary S (table-backed sets need bound >= N).
    """
    rs = rho_table(S, N)
    mu = mu_table(N)
    out = np.zeros(N + 1, dtype=np.int64)
    for d in np.flatnonzero(rs).tolist():
        if d == 0:
            continue
        out[d::d] += mu[1 : N // d + 1]
    return out


@lru_cache(maxsize=1 << 16)
def mu_at(n: int) -> int:
    """Ordinary Moebius function, pointwise."""
    v = 1
    for _, a in factorize(n):
        if a > 1:
            return 0
        v = -v
    return v


def mu_set_at(S: SSet, n: int) -> int:
    """mu_S(n) pointwise; prime-power product for rule-based S, else the
    divisor sum rho_S * mu."""
    if S.mult is not None:
        val = 1
        for p, a in factorize(n):
            val *= S.mult.rho_prime_power(p, a) - S.mult.rho_prime_power(p, a - 1)
        return val
    return sum(rho(S, d) * mu_at(n // d) for d in divisors(n))


# ---------------------------------------------------------------------------
# the k-full Moebius function

class MuKGenerator:
    """Prime-power values of mu_k; the value depends only on the exponent.

    The cache extends geometrically on demand, so value(a) costs amortized
    O(1) per new exponent. Exact ints; for k >= 3 the recurrence's roots
    leave the unit circle and values grow exponentially with a.
    """

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self._vals = [1]  # index a = 0

    def value(self, a: int) -> int:
        if a < 0:
            raise ValueError("exponent must be >= 0")
        v = self._vals
        while len(v) <= a:
            b = len(v)
            if b < 2 * self.k:
                v.append(-1)
            else:
                v.append(v[b - 1] - v[b - self.k])
        return v[a]


_GENERATORS: dict[int, MuKGenerator] = {}


def mu_k_prime_power(k: int, a: int) -> int:
    """mu_k(p^a) for any prime p (independent of p)."""
    gen = _GENERATORS.get(k)
    if gen is None:
        gen = _GENERATORS[k] = MuKGenerator(k)
    return gen.value(a)


def mu_k_at(k: int, n: int) -> int:
    """mu_k(n) = product of mu_k(p^a) over p^a || n (multiplicative)."""
    val = 1
    for _, a in factorize(n):
        val *= mu_k_prime_power(k, a)
    return val


@dataclass(frozen=True)
class MuKStatistics:
    """Exploratory summary of mu_k on prime powers p^1..p^a_max."""

    k: int
    a_max: int
    values: tuple            # sorted distinct values
    first_occurrence: dict   # value -> least exponent a with mu_k(p^a) = value
    sign_runs: tuple         # ((sign, run length), ...) over a = 1..a_max


def mu_k_statistics(k: int, a_max: int) -> MuKStatistics:
    """Stream the exponent sequence once, O(k) working window.

    a_max is capped at 1e6; note that for k >= 3 the values themselves grow
    exponentially in a, so large a_max means big-integer arithmetic.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 1 <= a_max <= 10**6:
        raise LimitError("a_max must be in 1..1e6")
    vals: list[int] = [1]  # trailing window of values; vals covers dropped..a
    dropped = 0
    first: dict[int, int] = {}
    runs: list[list[int]] = []  # [sign, length]
    for a in range(1, a_max + 1):
        if a < 2 * k:
            v = -1
        else:
            v = vals[a - 1 - dropped] - vals[a - k - dropped]
        vals.append(v)
        if len(vals) > k + 1:
            vals.pop(0)
            dropped += 1
        if v not in first:
            first[v] = a
        s = (v > 0) - (v < 0)
        if runs and runs[-1][0] == s:
            runs[-1][1] += 1
        else:
            runs.append([s, 1])
    return MuKStatistics(
        k=k,
        a_max=a_max,
        values=tuple(sorted(first)),
        first_occurrence=first,
        sign_runs=tuple((s, ln) for s, ln in runs),
    )


# ---------------------------------------------------------------------------
# Dirichlet series

@dataclass(frozen=True)
class ZetaEvaluation:
    """A certified evaluation of zeta_S(z) = sum rho_S(n) n^(-z).

    value       direct truncated sum (for the full set, plus the certified
                integral enclosure of the tail, see below)
    truncation  number of terms kept
    tail_bound  crude integral bound T^(1-z)/(z-1) on the neglected tail
    err_bound   certified |value - zeta_S(z)|; equals tail_bound except for
                the full set, where the tail lies between the integrals from
                T and from T+1 and value carries the midpoint
    euler_value, euler_bound
                for rule-based S, the truncated Euler product over primes
                <= cutoff with its own certified bound (the two evaluations
                must agree within err_bound + euler_bound)
    """

    z: float
    value: float
    truncation: int
    tail_bound: float
    err_bound: float
    euler_value: float | None = None
    euler_bound: float | None = None
    euler_cutoff: int | None = None

    @property
    def best_value(self) -> float:
        if self.euler_bound is not None and self.euler_bound < self.err_bound:
            return self.euler_value
        return self.value

    @property
    def best_bound(self) -> float:
        if self.euler_bound is not None and self.euler_bound < self.err_bound:
            return self.euler_bound
        return self.err_bound


def _crude_tail(T: int, z: float) -> float:
    return T ** (1.0 - z) / (z - 1.0)


def _is_full_set(S: SSet) -> bool:
    if S.mult is None:
        return False
    m = S.mult
    return m.default_rule.kind == "all" and all(r.kind == "all" for r in m.overrides.values())


def _local_factor(rule, p: int, z: float) -> float:
    """sum over a >= 0 of rho(p^a) p^(-az), closed form per rule kind."""
    x = p ** (-z)
    if rule.kind == "all":
        return 1.0 / (1.0 - x)
    if rule.kind == "none":
        return 1.0
    if rule.kind == "below":
        return (1.0 - x ** rule.k) / (1.0 - x)
    if rule.kind == "at_least":
        return 1.0 + x ** rule.k / (1.0 - x)
    return 1.0 + sum(x ** a for a in sorted(rule.members))


def _euler_product(S: SSet, z: float, tol: float) -> tuple[float, float, int]:
    """Truncated Euler product with a certified bound.

    The neglected factors lie in [1, exp(t)] with
    t = sum_{p > P} p^(-z)/(1 - p^(-z)) <= (1/(1-2^(-z))) P^(1-z)/(z-1),
    so the truncated value V satisfies zeta_S in [V, V e^t]. Cutoff doubles
    until V(e^t - 1) <= tol or the cap is hit; returns (V, bound, cutoff).
    """
    m = S.mult
    cutoff = 1 << 14
    while True:
        primes = prime_array(cutoff).tolist()
        v = 1.0
        for p in primes:
            v *= _local_factor(m.rule_at(p), p, z)
        t = _crude_tail(cutoff, z) / (1.0 - 2.0 ** (-z))
        bound = v * math.expm1(t)
        if bound <= tol or cutoff >= EULER_CUTOFF_CAP:
            return v, bound, cutoff
        cutoff *= 2


def zeta_S(S: SSet, z: float, tol: float = 1e-9) -> ZetaEvaluation:
    """Evaluate zeta_S(z) for z > 1 with certified error at most tol.

    Direct truncated sum always; Euler product besides for rule-based S.
    The best certified bound must reach tol, else LimitError: with the crude
    tail T^(1-z)/(z-1), small tolerances near z = 1 need infeasible T (the
    full set is the exception, its tail encloses between two integrals).
    """
    if z <= 1:
        raise ValueError("series diverges for z <= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    full = _is_full_set(S)
    if full:
        # enclosure width is at most T^-z, met at T = (2 tol)^(-1/z)
        T = int(math.ceil((2.0 * tol) ** (-1.0 / z))) + 1
    else:
        T = int(math.ceil((tol * (z - 1.0)) ** (-1.0 / (z - 1.0)))) + 1
    T = max(T, 64)
    capped = False
    if T > DIRECT_TRUNCATION_CAP:
        T = DIRECT_TRUNCATION_CAP
        capped = True
    if S.general is not None and T > S.general.bound:
        raise LimitError(
            f"tolerance {tol} unreachable for {S.spec!r}: membership bound "
            f"{S.general.bound} leaves tail {_crude_tail(S.general.bound, z):.3g}"
        )
    rs = rho_table(S, T)
    ns = np.arange(T + 1, dtype=np.float64)
    ns[0] = 1.0
    partial = float(np.sum(rs * ns ** (-z)))
    tail_bound = _crude_tail(T, z)
    if full:
        lo = _crude_tail(T + 1, z)
        value = partial + 0.5 * (tail_bound + lo)
        err = 0.5 * (tail_bound - lo)
    else:
        value = partial
        err = tail_bound
    ev = eb = ec = None
    if S.mult is not None:
        ev, eb, ec = _euler_product(S, z, tol)
        if abs(ev - value) > err + eb + 1e-12:
            raise ConsistencyError(
                f"series and product evaluations of zeta_{S.spec}({z}) disagree: "
                f"{value} vs {ev} beyond {err + eb:.3g}"
            )
    best = min(err, eb) if eb is not None else err
    if capped and best > tol:
        raise LimitError(
            f"tolerance {tol} unreachable for zeta_{S.spec}({z}): best certified "
            f"bound {best:.3g} at truncation cap {DIRECT_TRUNCATION_CAP}"
        )
    return ZetaEvaluation(z=z, value=value, truncation=T, tail_bound=tail_bound,
                          err_bound=err, euler_value=ev, euler_bound=eb, euler_cutoff=ec)


def zeta_S_derivative(S: SSet, z: float, tol: float = 2e-5) -> float:
    """zeta_S'(z) = -sum rho_S(n) log(n) n^(-z), certified within tol.

    Tail bound: integral of log(t) t^(-z) from T, i.e.
    T^(1-z) (log T / (z-1) + 1/(z-1)^2); the full set again encloses the
    tail between consecutive integrals and takes the midpoint.
    """
    if z <= 1:
        raise ValueError("series diverges for z <= 1")

    def tail(T: float) -> float:
        return T ** (1.0 - z) * (math.log(T) / (z - 1.0) + (z - 1.0) ** -2)

    def err_at(T: int) -> float:
        return 0.5 * (tail(T) - tail(T + 1)) if full else tail(T)

    full = _is_full_set(S)
    T = 64
    while err_at(T) > tol and T < DIRECT_TRUNCATION_CAP:
        T *= 2
    if S.general is not None:
        T = min(T, S.general.bound)
    if err_at(T) > tol:
        raise LimitError(f"tolerance {tol} unreachable for zeta_{S.spec}'({z})")
    rs = rho_table(S, T)
    ns = np.arange(T + 1, dtype=np.float64)
    ns[0] = 1.0
    partial = -float(np.sum(rs * np.log(ns) * ns ** (-z)))
    if full:
        return partial - 0.5 * (tail(T) + tail(T + 1))
    return partial


def verify_mobius_identity(S: SSet, N: int) -> Verdict:
    """Check sum_{d | n} mu_S(d) = rho_S(n) for every n <= N."""
    ms = mu_set_table(S, N)
    rs = rho_table(S, N)
    lhs = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, N + 1):
        if ms[d]:
            lhs[d::d] += ms[d]
    bad = np.flatnonzero(lhs[1:] != rs[1:])
    if len(bad):
        n = int(bad[0]) + 1
        return Verdict(False, bound=N, witness=(n, int(lhs[n]), int(rs[n])))
    return Verdict(True, bound=N)


def verify_series_ratio(S: SSet, z: float, T: int, zeta_tol: float = 1e-6) -> tuple[float, float]:
    """Residual |sum_{n<=T} mu_S(n) n^(-z) - zeta_S(z)/zeta(z)| and the bound
    it must stay under.

    The bound combines the mu_S series tail (|mu_S(n)| <= tau(n) <= 2 sqrt(n)
    gives 2 T^(3/2-z)/(z-3/2), needs z > 3/2) with the certified errors of
    the two zeta evaluations.
    """
    if z <= 1.5:
        raise ValueError("the tau-based tail bound needs z > 1.5")
    ms = mu_set_table(S, T)
    ns = np.arange(T + 1, dtype=np.float64)
    ns[0] = 1.0
    lhs = float(np.sum(ms * ns ** (-z)))
    zs = zeta_S(S, z, tol=zeta_tol)
    zn = zeta_S(parse_sset("N"), z, tol=min(zeta_tol, 1e-9))
    ratio = zs.best_value / zn.best_value
    residual = abs(lhs - ratio)
    tail = 2.0 * T ** (1.5 - z) / (z - 1.5)
    bound = tail + zs.best_bound / zn.best_value + zn.best_bound * abs(ratio) / zn.best_value
    return residual, bound
