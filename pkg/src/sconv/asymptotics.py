"""Average orders and maximal orders of the S-restricted divisor functions.

Main terms for the summatory functions on multiplicative sets S:

    sum_{n <= x} sigma_S(n) ~ (zeta(2) zeta_S(3) / (2 zeta(3))) x^2
    sum_{n <= x} tau_S(n)   ~ (zeta_S(2)/zeta(2)) x (ln x + 2 gamma - 1
                              + 2 zeta_S'(2)/zeta_S(2) - 2 zeta'(2)/zeta(2))

asymptotic_report samples the partial sums at geometric points and fits the
empirical remainder decay; the fit is informational (the true remainders are
power-of-log sized, which no feasible range can discriminate).

Maximal orders. With P the set of primes all of whose powers lie in S and
s(p) the least excluded exponent elsewhere,

    limsup sigma_S(n)/(n ln ln n) = e^gamma prod_{p not in P} (1 - p^(-2 s(p)))

(uniform s gives e^gamma / zeta(2s)), attained along explicit witness
integers built from a threshold t, an exponent a, and all primes up to e^k.
For tau_S: limsup ln tau_S(n) ln ln n / ln n = ln 2, approached along
primorials. Witnesses are held in factored form only; every ratio combines
exact local factors, never the (astronomically large) integer itself.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import prime_array, sieve_primes, multiplicative_table
from .divisor_functions import sigma_S_prime_power, sigma_S_table, tau_S_table
from .errors import ConsistencyError, LimitError
from .mobius import zeta_S, zeta_S_derivative
from .sets import SSet, parse_sset

EULER_GAMMA = 0.57721566490153286  # no finite-sum form; sole hard-coded constant
PRODUCT_CUTOFF = 20_000_000  # primes kept in maximal-order products
REPORT_X_CAP = 10**7
LOGLOG_FLOOR = math.log(16.0)  # maximal-order ratios need n >= 16


def _full_set() -> SSet:
    return parse_sset("N")


# ---------------------------------------------------------------------------
# average-order main terms

def sigma_main_term(S: SSet, x: float) -> float:
    """Main term zeta(2) zeta_S(3) / (2 zeta(3)) * x^2 of sum sigma_S."""
    if x < 1:
        raise ValueError("x must be >= 1")
    k, _ = _sigma_constant(S)
    return k * x * x


def _sigma_constant(S: SSet) -> tuple[float, float]:
    full = _full_set()
    z2 = zeta_S(full, 2.0, tol=1e-9)
    z3 = zeta_S(full, 3.0, tol=1e-9)
    zs3 = zeta_S(S, 3.0, tol=1e-9)
    k = z2.best_value * zs3.best_value / (2.0 * z3.best_value)
    rel = (z2.best_bound / z2.best_value + z3.best_bound / z3.best_value
           + zs3.best_bound / max(zs3.best_value, 1.0))
    return k, abs(k) * rel * 1.01


def tau_main_term(S: SSet, x: float) -> float:
    """Main term A x (ln x + B) of sum tau_S, with
    A = zeta_S(2)/zeta(2) and B = 2 gamma - 1 + 2 zeta_S'(2)/zeta_S(2)
    - 2 zeta'(2)/zeta(2). For the full set the derivative terms cancel."""
    if x < 2:
        raise ValueError("x must be >= 2")
    a, b, _ = _tau_constants(S)
    return a * x * (math.log(x) + b)


def _tau_constants(S: SSet) -> tuple[float, float, float]:
    # z = 2 sits close to the abscissa; the crude tail forces the looser tol
    full = _full_set()
    z2 = zeta_S(full, 2.0, tol=1e-6)
    zs2 = zeta_S(S, 2.0, tol=1e-6)
    d2 = zeta_S_derivative(full, 2.0)
    ds2 = zeta_S_derivative(S, 2.0)
    a = zs2.best_value / z2.best_value
    b = 2.0 * EULER_GAMMA - 1.0 + 2.0 * ds2 / zs2.best_value - 2.0 * d2 / z2.best_value
    rel = zs2.best_bound / max(zs2.best_value, 1.0) + z2.best_bound / z2.best_value
    return a, b, abs(a) * rel + 1e-4  # derivative tol 2e-5 enters b twice


# ---------------------------------------------------------------------------
# asymptotic reports

@dataclass(frozen=True)
class AsymptoticReport:
    """Partial sums of tau_S or sigma_S against the main term.

    rows: (x, partial_sum, main_term, ratio, remainder) at strictly
    increasing geometric sample points. fit_exponent is the least-squares
    slope of ln|remainder| against ln x (None when too few usable points);
    fit_residual its root-mean-square misfit. const_err bounds the error in
    the main-term constant(s).
    """

    sset_spec: str
    fn: str
    x_max: int
    xs: tuple
    partial_sums: tuple
    main_terms: tuple
    ratios: tuple
    remainders: tuple
    fit_exponent: float | None
    fit_residual: float | None
    const_err: float

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise ValueError("sample points must be strictly increasing")
        if not all(math.isfinite(r) for r in self.ratios):
            raise ValueError("ratios must be finite")

    def rows(self) -> list[dict]:
        return [
            {"x": int(x), "partial_sum": int(p), "main_term": m, "ratio": r,
             "remainder": rem}
            for x, p, m, r, rem in zip(self.xs, self.partial_sums,
                                       self.main_terms, self.ratios,
                                       self.remainders)
        ]

    def to_csv(self, path: str) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "partial_sum", "main_term", "ratio", "remainder"])
            for row in self.rows():
                w.writerow([row["x"], row["partial_sum"], repr(row["main_term"]),
                            repr(row["ratio"]), repr(row["remainder"])])

    def to_json(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump({
                "sset": self.sset_spec, "fn": self.fn, "x_max": self.x_max,
                "const_err": self.const_err, "fit_exponent": self.fit_exponent,
                "fit_residual": self.fit_residual, "rows": self.rows(),
            }, fh, sort_keys=True)
            fh.write("\n")


def asymptotic_report(S: SSet, fn: str, x_max: int, samples: int = 24) -> AsymptoticReport:
    """Sample sum_{n <= x} fn(n) at geometric points against the main term.

    fn is "tau_S" or "sigma_S". The empirical remainder exponent comes from
    a least-squares fit of ln|R| vs ln x and is informational only.
    """
    if fn not in ("tau_S", "sigma_S"):
        raise ValueError(f"unknown function {fn!r}, want tau_S or sigma_S")
    if x_max > REPORT_X_CAP:
        raise LimitError(f"x_max {x_max} above cap {REPORT_X_CAP}")
    if x_max < 100:
        raise ValueError("x_max must be >= 100")
    if samples < 2:
        raise ValueError("need at least 2 sample points")

    if fn == "sigma_S":
        table = sigma_S_table(S, x_max)
        k, cerr = _sigma_constant(S)
        main = lambda x: k * float(x) * float(x)
    else:
        table = tau_S_table(S, x_max)
        a, b, cerr = _tau_constants(S)
        main = lambda x: a * float(x) * (math.log(x) + b)

    csum = np.cumsum(np.asarray(table.values, dtype=np.int64))
    x0 = max(64, int(round(x_max ** (1.0 / 3.0))))
    raw = np.unique(np.rint(np.geomspace(x0, x_max, samples)).astype(np.int64))
    xs = [int(x) for x in raw if x >= 2]

    partial = [int(csum[x]) for x in xs]
    mains = [main(x) for x in xs]
    ratios = [p / m for p, m in zip(partial, mains)]
    rems = [p - m for p, m in zip(partial, mains)]

    usable = [(math.log(x), math.log(abs(r))) for x, r in zip(xs, rems) if r != 0]
    if len(usable) >= 3:
        lx = np.array([u[0] for u in usable])
        lr = np.array([u[1] for u in usable])
        slope, intercept = np.polyfit(lx, lr, 1)
        resid = float(np.sqrt(np.mean((slope * lx + intercept - lr) ** 2)))
        fit, fres = float(slope), resid
    else:
        fit, fres = None, None

    return AsymptoticReport(
        sset_spec=S.spec, fn=fn, x_max=int(x_max), xs=tuple(xs),
        partial_sums=tuple(partial), main_terms=tuple(mains),
        ratios=tuple(ratios), remainders=tuple(rems),
        fit_exponent=fit, fit_residual=fres, const_err=cerr,
    )


# ---------------------------------------------------------------------------
# maximal order of sigma_S

@dataclass(frozen=True)
class MaximalConstant:
    """The limsup constant for sigma_S(n)/(n ln ln n), with certified error."""

    sset_spec: str
    value: float
    err_bound: float
    uniform_s: int | None
    cutoff: int | None

    def __float__(self) -> float:
        return self.value


@lru_cache(maxsize=4)
def _prime_floats(cutoff: int) -> np.ndarray:
    return prime_array(cutoff).astype(np.float64)


def sigma_maximal_constant(S: SSet, cutoff: int = PRODUCT_CUTOFF) -> MaximalConstant:
    """e^gamma * prod over primes p not all-in of (1 - p^(-2 s(p))).

    s(p) is the least excluded exponent at p. The product truncates at
    `cutoff` with a certified tail bound through the density of integers
    coprime to 30 (all primes past 30 are), so
    sum_{p > C} p^(-2s) <= (8/30) C^(1-2s)/(2s-1) + 8 C^(-2s).
    """
    if S.mult is None:
        raise ValueError(f"{S.spec!r} is not a multiplicative set")
    if cutoff < 100:
        raise ValueError("cutoff too small for the tail bound")
    m = S.mult
    eg = math.exp(EULER_GAMMA)

    over_s = {p: r.least_excluded() for p, r in m.overrides.items()}
    s0 = m.default_rule.least_excluded()

    if s0 is None:
        # default all-in: only the finitely many override primes contribute
        log_v = 0.0
        for p, s in sorted(over_s.items()):
            if s is not None:
                log_v += math.log1p(-float(p) ** (-2.0 * s))
        v = math.exp(log_v)
        uni = None
        return MaximalConstant(sset_spec=S.spec, value=eg * v,
                               err_bound=eg * v * 1e-13, uniform_s=uni, cutoff=None)

    if any(p > cutoff for p in over_s):
        raise LimitError("override prime beyond product cutoff")
    ps = _prime_floats(cutoff)
    log_v = float(np.log1p(-ps ** (-2.0 * s0)).sum())
    for p, s in sorted(over_s.items()):
        log_v -= math.log1p(-float(p) ** (-2.0 * s0))
        if s is not None:
            log_v += math.log1p(-float(p) ** (-2.0 * s))
    v = math.exp(log_v)

    # dropped factors all lie in (exp(-t), 1): certified one-sided tail
    c = float(cutoff)
    tail = ((8.0 / 30.0) * c ** (1.0 - 2.0 * s0) / (2.0 * s0 - 1.0)
            + 8.0 * c ** (-2.0 * s0)) / (1.0 - c ** (-2.0 * s0))
    err = v * (math.expm1(tail) + 1e-12)

    uni = s0 if all(s == s0 for s in over_s.values()) else None
    return MaximalConstant(sset_spec=S.spec, value=eg * v, err_bound=eg * err,
                           uniform_s=uni, cutoff=cutoff)


def sigma_maximal_constant_uniform(s: int) -> float:
    """Closed form e^gamma / zeta(2s) for sets with s(p) = s at every prime."""
    if s < 1:
        raise ValueError("s must be >= 1")
    z = zeta_S(_full_set(), 2.0 * s, tol=1e-9)
    return math.exp(EULER_GAMMA) / z.best_value


@dataclass(frozen=True)
class WitnessSequence:
    """A factored witness integer for the sigma_S maximal order.

    Built from a threshold t (tail primes near the Mertens limit), an
    exponent a for the all-in primes up to t, squarefull blocks p^(2s(p)-1)
    for the rest, and all primes in (t, e^k]. n is never materialized;
    log_n sums e*ln(p) over the factorization, sigma_over_n multiplies the
    exact local ratios sigma_S(p^e)/p^e, and ratio divides by ln(log_n).
    """

    sset_spec: str
    epsilon: float
    k: int
    t: int
    a: int | None
    factorization: tuple
    log_n: float
    sigma_over_n: float
    ratio: float


def witness_sequence(S: SSet, epsilon: float, k: int) -> WitnessSequence:
    if S.mult is None:
        raise ValueError(f"{S.spec!r} is not a multiplicative set")
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    if not 1 <= k <= 15:
        raise LimitError("k must lie in 1..15 (primes to e^k are sieved)")
    m = S.mult

    # least t with prod_{p > t} (1 - p^-2) >= 1 - eps, via certified zeta(2)
    z2 = zeta_S(_full_set(), 2.0, tol=1e-9)
    z2_hi = z2.best_value + z2.best_bound
    t = 1
    prod_le = 1.0
    while 1.0 / (z2_hi * prod_le) < 1.0 - epsilon:
        t += 1
        if t > 10**6:
            raise LimitError(f"epsilon {epsilon} needs threshold beyond 1e6")
        if _is_prime_small(t):
            prod_le *= 1.0 - float(t) ** -2.0

    small = sieve_primes(t)
    all_in = [p for p in small if m.rule_at(p).kind == "all"]

    a = None
    if all_in:
        a = 1
        while math.prod(1.0 - float(p) ** (-float(a)) for p in all_in) < 1.0 - epsilon:
            a += 1

    x = math.exp(k)
    tail = [p for p in sieve_primes(int(x)) if p > t]
    if not tail:
        raise ValueError(f"k={k} too small: no primes in ({t}, e^k]")

    fac = []
    for p in small:
        if p in all_in:
            if a is not None and a >= 2:
                fac.append((p, a - 1))
        else:
            s = m.rule_at(p).least_excluded()
            fac.append((p, 2 * s - 1))
    fac.extend((p, 1) for p in tail)

    log_n = 0.0
    log_ratio = 0.0
    for p, e in fac:
        log_n += e * math.log(p)
        num = sigma_S_prime_power(S, p, e)
        log_ratio += math.log(num) - e * math.log(p)
    if log_n < LOGLOG_FLOOR:
        raise ValueError(f"k={k} too small: log n = {log_n:.3f} below ln 16")

    sig_ratio = math.exp(log_ratio)
    _check_local_bound(m, fac, sig_ratio)
    ratio = sig_ratio / math.log(log_n)
    return WitnessSequence(sset_spec=S.spec, epsilon=epsilon, k=k, t=t, a=a,
                           factorization=tuple(fac), log_n=log_n,
                           sigma_over_n=sig_ratio, ratio=ratio)


def _check_local_bound(m, fac, sig_ratio: float) -> None:
    # sigma_S(n)/n <= prod_{p | n, all-in} (1-1/p)^-1
    #              * prod_{p | n, else} (1 + 1/p + ... + p^-(2s(p)-1))
    log_bound = 0.0
    for p, _ in fac:
        rule = m.rule_at(p)
        if rule.kind == "all":
            log_bound -= math.log1p(-1.0 / p)
        else:
            s = rule.least_excluded()
            log_bound += math.log(sum(float(p) ** -i for i in range(2 * s)))
    if sig_ratio > math.exp(log_bound) * (1.0 + 1e-9):
        raise ConsistencyError("witness ratio exceeds its local-factor bound")


def _is_prime_small(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, math.isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# maximal order of tau_S

def tau_maximal_ratio(k: int) -> float:
    """ln tau_S * ln ln / ln evaluated on the k-th primorial.

    tau_S agrees with tau on squarefree integers whenever 1 lies in S, so
    tau_S(n_k) = 2^k and the ratio is k ln2 * ln(theta(p_k)) / theta(p_k)
    with theta the Chebyshev log-prime sum. Approaches ln 2 from above.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    bound = 15 if k < 6 else int(k * (math.log(k) + math.log(math.log(k)))) + 10
    primes = sieve_primes(bound)
    while len(primes) < k:
        bound *= 2
        primes = sieve_primes(bound)
    theta = float(np.log(np.array(primes[:k], dtype=np.float64)).sum())
    if theta <= 1.0:
        raise ValueError("k too small for positive ln ln")
    return k * math.log(2.0) * math.log(theta) / theta


def gronwall_range_max(N: int = 10**6, start: int = 5041) -> tuple[float, int]:
    """max of sigma(n)/(n ln ln n) over start <= n <= N, with its argmax."""
    if start < 16:
        raise ValueError("start must be >= 16 for a stable ln ln")
    if N < start:
        raise ValueError("empty range")
    sig = multiplicative_table(N, lambda p, a: (p ** (a + 1) - 1) // (p - 1))
    ns = np.arange(N + 1, dtype=np.float64)
    vals = sig[start:] / (ns[start:] * np.log(np.log(ns[start:])))
    i = int(np.argmax(vals))
    return float(vals[i]), start + i
