"""Divisor-counting and divisor-sum functions restricted to S-divisors.

    tau_S(n)   = number of divisors d | n with gcd(d, n/d) in S
    sigma_S(n) = sum of those divisors
    phi_S(n)   = #{ 1 <= j <= n : gcd(j, n) in S }

Each has a direct definition and identity routes through the square-divisor
expansion: with mu_S the set Moebius companion and tau*, sigma* the unitary
(S = {1}) variants,

    tau_S(n)   = sum_{d^2 | n} mu_S(d) tau(n/d^2)  = sum_{d^2 | n} rho_S(d) tau*(n/d^2)
    sigma_S(n) = sum_{d^2 | n} mu_S(d) d sigma(n/d^2)
               = sum_{d^2 | n} rho_S(d) d sigma*(n/d^2)
    phi_S      = mu_S * E = rho_S * phi   (ordinary Dirichlet products)

and for completely multiplicative f, g:

    (f *_S g)(n) = sum_{d^2 | n} mu_S(d) f(d) g(d) (f * g)(n/d^2)
                 = sum_{d^2 | n} rho_S(d) f(d) g(d) (f x g)(n/d^2)

with * the Dirichlet and x the unitary product. Table builders use the
square-divisor sieves and self-check against direct enumeration.
"""

from __future__ import annotations

import csv
import json
import math
import random
from dataclasses import dataclass

import numpy as np

from .arith import divisors, eval_multiplicative, factorize, guard_int64, multiplicative_table
from .convolve import ArithFunc, s_convolve_at
from .errors import ConsistencyError, LimitError
from .sets import SSet, rho, rho_table
from .mobius import mu_set_at, mu_set_table

SELF_CHECK_SEED = 8191
SELF_CHECK_COUNT = 32
PHI_DIRECT_CAP = 10**6  # beyond this, only the convolution forms


# ---------------------------------------------------------------------------
# pointwise

def tau_S_at(S: SSet, n: int) -> int:
    """Count of S-divisors of n, by direct enumeration."""
    return sum(1 for d in divisors(n) if rho(S, math.gcd(d, n // d)))


def sigma_S_at(S: SSet, n: int) -> int:
    """Sum of S-divisors of n, by direct enumeration."""
    return sum(d for d in divisors(n) if rho(S, math.gcd(d, n // d)))


def sigma_S_prime_power(S: SSet, p: int, e: int) -> int:
    """sigma_S(p^e) from the exponent rule (gcd of p^b, p^(e-b) is p^min)."""
    if S.mult is None:
        return sigma_S_at(S, p ** e)
    total = 0
    pb = 1
    for b in range(e + 1):
        if S.mult.rho_prime_power(p, min(b, e - b)):
            total += pb
        pb *= p
    return total


def _square_divisors(n: int) -> list[int]:
    """All d with d^2 | n."""
    return [d for d in divisors(n) if (n // d) % d == 0 and n % (d * d) == 0]


def tau_S_via_identity(S: SSet, n: int) -> int:
    """tau_S(n) through both square-divisor expansions; they must agree."""
    tau = lambda m: eval_multiplicative(lambda p, a: a + 1, m)
    tau_star = lambda m: eval_multiplicative(lambda p, a: 2, m)
    a = sum(mu_set_at(S, d) * tau(n // (d * d)) for d in _square_divisors(n))
    b = sum(rho(S, d) * tau_star(n // (d * d)) for d in _square_divisors(n))
    if a != b:
        raise ConsistencyError(f"tau_S identity forms disagree at n={n} over {S.spec!r}: {a} vs {b}")
    return a


def sigma_S_via_identity(S: SSet, n: int) -> int:
    """sigma_S(n) through both square-divisor expansions; they must agree."""
    sig = lambda m: eval_multiplicative(lambda p, a: (p ** (a + 1) - 1) // (p - 1), m)
    sig_star = lambda m: eval_multiplicative(lambda p, a: p ** a + 1, m)
    a = sum(mu_set_at(S, d) * d * sig(n // (d * d)) for d in _square_divisors(n))
    b = sum(rho(S, d) * d * sig_star(n // (d * d)) for d in _square_divisors(n))
    if a != b:
        raise ConsistencyError(f"sigma_S identity forms disagree at n={n} over {S.spec!r}: {a} vs {b}")
    return a


def conv_cm_via_dirichlet(S: SSet, f: ArithFunc, g: ArithFunc, n: int):
    """(f *_S g)(n) via the Dirichlet-product expansion; f, g must be
    completely multiplicative. Cross-checked against the direct sum."""
    _require_cm(f, g)
    fg = lambda m: sum(f(d) * g(m // d) for d in divisors(m))
    val = sum(mu_set_at(S, d) * f(d) * g(d) * fg(n // (d * d)) for d in _square_divisors(n))
    direct = s_convolve_at(S, f, g, n)
    if val != direct:
        raise ConsistencyError(f"Dirichlet route disagrees with direct at n={n}: {val} vs {direct}")
    return val


def conv_cm_via_unitary(S: SSet, f: ArithFunc, g: ArithFunc, n: int):
    """(f *_S g)(n) via the unitary-product expansion; f, g must be
    completely multiplicative. Cross-checked against the direct sum."""
    _require_cm(f, g)

    def fxg(m):  # unitary product: divisor pairs with coprime halves
        return sum(f(d) * g(m // d) for d in divisors(m) if math.gcd(d, m // d) == 1)

    val = sum(rho(S, d) * f(d) * g(d) * fxg(n // (d * d)) for d in _square_divisors(n))
    direct = s_convolve_at(S, f, g, n)
    if val != direct:
        raise ConsistencyError(f"unitary route disagrees with direct at n={n}: {val} vs {direct}")
    return val


def _require_cm(f: ArithFunc, g: ArithFunc):
    for h in (f, g):
        if not h.completely_multiplicative:
            raise ValueError(f"{h.name} is not completely multiplicative")


def phi_S_at(S: SSet, n: int) -> int:
    """phi_S(n), the count of j <= n with gcd(j, n) in S.

    Computes the two convolution forms (mu_S * E and rho_S * phi) and, for
    n <= 1e6, the direct gcd count; all routes must agree.
    """
    divs = divisors(n)
    phi = lambda m: eval_multiplicative(lambda p, a: p ** a - p ** (a - 1), m)
    via_mu = sum(mu_set_at(S, d) * (n // d) for d in divs)
    via_rho = sum(rho(S, d) * phi(n // d) for d in divs)
    if via_mu != via_rho:
        raise ConsistencyError(f"phi_S convolution forms disagree at n={n}: {via_mu} vs {via_rho}")
    if n <= PHI_DIRECT_CAP:
        g = np.gcd(np.arange(1, n + 1, dtype=np.int64), n)
        rt = rho_table(S, _max_gcd_bound(S, n))
        direct = int(rt[g].sum())
        if direct != via_mu:
            raise ConsistencyError(f"phi_S direct count disagrees at n={n}: {direct} vs {via_mu}")
    return via_mu


def _max_gcd_bound(S: SSet, n: int) -> int:
    # gcd(j, n) <= n; table-backed sets must cover that range
    if S.general is not None and S.general.bound < n:
        raise LimitError(f"{S.spec!r} bounded at {S.general.bound}, phi_S needs membership to {n}")
    return n


# ---------------------------------------------------------------------------
# tables

@dataclass(frozen=True)
class FunctionTable:
    """A dense 1-indexed table of one S-restricted function.

    Serializes to CSV (columns n, value) and JSON (object with metadata and
    the value rows). values[0] is unused and kept 0.
    """

    name: str
    sset_spec: str
    N: int
    values: list

    def __post_init__(self):
        if len(self.values) != self.N + 1:
            raise ValueError("values must have length N + 1 (index 0 unused)")

    def to_csv(self, path: str) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "value"])
            for n in range(1, self.N + 1):
                w.writerow([n, self.values[n]])

    def to_json(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(
                {"name": self.name, "sset": self.sset_spec, "N": self.N,
                 "values": [int(v) for v in self.values[1:]]},
                fh, sort_keys=True)
            fh.write("\n")

    @classmethod
    def from_json(cls, path: str) -> "FunctionTable":
        with open(path) as fh:
            obj = json.load(fh)
        return cls(name=obj["name"], sset_spec=obj["sset"], N=obj["N"],
                   values=[0] + [int(v) for v in obj["values"]])


def _self_check(name: str, S: SSet, values, direct, N: int) -> None:
    """Spot-check a freshly built table against direct enumeration."""
    rng = random.Random(SELF_CHECK_SEED)
    for _ in range(SELF_CHECK_COUNT):
        n = rng.randint(1, N)
        want = direct(n)
        got = int(values[n])
        if got != want:
            raise ConsistencyError(f"{name} table self-check failed at n={n}: {got} != {want}")


def tau_S_table(S: SSet, N: int, self_check: bool = True) -> FunctionTable:
    """Table of tau_S on 1..N by the square-divisor sieve over mu_S."""
    root = math.isqrt(N)
    ms = mu_set_table(S, root)
    tau = multiplicative_table(N, lambda p, a: a + 1)
    out = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, root + 1):
        md = int(ms[d])
        if md:
            dd = d * d
            out[dd :: dd] += md * tau[1 : N // dd + 1]
    if self_check:
        _self_check("tau_S", S, out, lambda n: tau_S_at(S, n), N)
    return FunctionTable(name="tau_S", sset_spec=S.spec, N=N, values=out.tolist())


def sigma_S_table(S: SSet, N: int, self_check: bool = True) -> FunctionTable:
    """Table of sigma_S on 1..N by the square-divisor sieve over mu_S.

    int64 is safe: entries are at most sigma(n) <= n (1 + ln n) and the
    intermediate partial sums stay within a small multiple of that.
    """
    guard_int64(int(N * (2 + math.log(N)) * math.isqrt(N)), "sigma_S_table")
    root = math.isqrt(N)
    ms = mu_set_table(S, root)
    sig = multiplicative_table(N, lambda p, a: (p ** (a + 1) - 1) // (p - 1))
    out = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, root + 1):
        md = int(ms[d])
        if md:
            dd = d * d
            out[dd :: dd] += (md * d) * sig[1 : N // dd + 1]
    if self_check:
        _self_check("sigma_S", S, out, lambda n: sigma_S_at(S, n), N)
    return FunctionTable(name="sigma_S", sset_spec=S.spec, N=N, values=out.tolist())


def phi_S_table(S: SSet, N: int, self_check: bool = True) -> FunctionTable:
    """Table of phi_S on 1..N via the sweep phi_S = rho_S * phi."""
    rs = rho_table(S, N)
    phi = multiplicative_table(N, lambda p, a: p ** a - p ** (a - 1))
    out = np.zeros(N + 1, dtype=np.int64)
    for d in np.flatnonzero(rs).tolist():
        if d:
            out[d::d] += phi[1 : N // d + 1]
    if self_check:
        def direct(n):
            g = np.gcd(np.arange(1, n + 1, dtype=np.int64), n)
            return int(rs[g].sum()) if n <= N else phi_S_at(S, n)
        _self_check("phi_S", S, out, direct, N)
    return FunctionTable(name="phi_S", sset_spec=S.spec, N=N, values=out.tolist())


def tau_S_table_via_rho(S: SSet, N: int) -> FunctionTable:
    """Second identity route for cross-checks: sieve over rho_S with tau*."""
    root = math.isqrt(N)
    rs = rho_table(S, root)
    tau_star = multiplicative_table(N, lambda p, a: 2)
    out = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, root + 1):
        if rs[d]:
            dd = d * d
            out[dd :: dd] += tau_star[1 : N // dd + 1]
    return FunctionTable(name="tau_S", sset_spec=S.spec, N=N, values=out.tolist())


def sigma_S_table_via_rho(S: SSet, N: int) -> FunctionTable:
    """Second identity route for cross-checks: sieve over rho_S with sigma*."""
    root = math.isqrt(N)
    rs = rho_table(S, root)
    sig_star = multiplicative_table(N, lambda p, a: p ** a + 1)
    out = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, root + 1):
        if rs[d]:
            dd = d * d
            out[dd :: dd] += d * sig_star[1 : N // dd + 1]
    return FunctionTable(name="sigma_S", sset_spec=S.spec, N=N, values=out.tolist())
