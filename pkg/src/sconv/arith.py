"""Exact integer primitives: prime sieves, factorization, divisor lists,
multiplicative evaluation, and Chebyshev's theta.

Scalar code works with Python ints (arbitrary precision). Bulk tables are
numpy int64 with explicit range guards, see multiplicative_table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import LimitError

FACTOR_TABLE_LIMIT = 10**8  # one 32-bit word per index; beyond this, refuse
_INT64_MAX = np.iinfo(np.int64).max


def prime_array(limit: int) -> np.ndarray:
    """Primes <= limit as an int64 array (bulk form; empty for limit < 2)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    comp = np.zeros(limit + 1, dtype=bool)
    comp[0:2] = True
    for p in range(2, math.isqrt(limit) + 1):
        if not comp[p]:
            comp[p * p :: p] = True
    return np.flatnonzero(~comp).astype(np.int64)


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit in ascending order. limit < 2 gives []."""
    return prime_array(limit).tolist()


@dataclass(frozen=True)
class FactorTable:
    """Smallest-prime-factor table for 1..limit, for repeated factorizations."""

    limit: int
    spf: np.ndarray  # int32; spf[n] = least prime dividing n, spf[1] = 0

    @classmethod
    def build(cls, limit: int) -> "FactorTable":
        if limit < 1:
            raise ValueError("limit must be >= 1")
        if limit > FACTOR_TABLE_LIMIT:
            raise LimitError(f"factor table limit {limit} exceeds {FACTOR_TABLE_LIMIT}")
        spf = np.zeros(limit + 1, dtype=np.int32)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == 0:
                sl = spf[p * p :: p]
                sl[sl == 0] = p
        rest = np.flatnonzero(spf[2:] == 0) + 2  # untouched entries are prime
        spf[rest] = rest
        return cls(limit=limit, spf=spf)

    def factorize(self, n: int) -> list[tuple[int, int]]:
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside table range 1..{self.limit}")
        out = []
        spf = self.spf
        while n > 1:
            p = int(spf[n])
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            out.append((p, a))
        return out


@lru_cache(maxsize=1 << 16)
def _factorize_small(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    for p in (2, 3):
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            out.append((p, a))
    # remaining factors are 6k +- 1
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                a = 0
                while n % p == 0:
                    n //= p
                    a += 1
                out.append((p, a))
        f += 6
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int, table: FactorTable | None = None) -> list[tuple[int, int]]:
    """Canonical factorization of n >= 1 as [(p, a), ...], p ascending.

    factorize(1) == []. Uses the given smallest-prime-factor table when n is
    in range, else trial division (fine up to ~1e12 for occasional calls).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if table is not None and n <= table.limit:
        return table.factorize(n)
    return list(_factorize_small(n))


def divisors(n: int, table: FactorTable | None = None) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, a in factorize(n, table):
        pk = 1
        ext = []
        for _ in range(a):
            pk *= p
            ext.extend(d * pk for d in divs)
        divs.extend(ext)
    divs.sort()
    return divs


def eval_multiplicative(ppv, n: int, table: FactorTable | None = None):
    """Value at n of the multiplicative function with f(p^a) = ppv(p, a).

    f(1) = 1 by convention. Exact: products of Python ints stay exact.
    """
    val = 1
    for p, a in factorize(n, table):
        val *= ppv(p, a)
    return val


def chebyshev_theta(x: float) -> float:
    """theta(x) = sum of log p over primes p <= x."""
    if x < 0:
        raise ValueError("x must be >= 0")
    if x < 2:
        return 0.0
    return float(np.log(prime_array(int(x))).sum())


def guard_int64(bound: int, context: str) -> None:
    """Raise before building a table whose entries could exceed int64."""
    if bound >= _INT64_MAX:
        raise LimitError(f"{context}: values up to {bound} cannot be tabulated in int64")


def multiplicative_table(limit: int, ppv, max_value_bound: int | None = None) -> np.ndarray:
    """int64 table t[0..limit] with t[n] = prod ppv(p, a) over p^a || n, t[1] = 1.

    O(N log log N): primes up to sqrt(limit) get exact per-multiple exponents,
    larger primes contribute a single slice multiply. Caller supplies
    max_value_bound when values could conceivably approach int64 (checked).
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > FACTOR_TABLE_LIMIT:
        raise LimitError(f"table limit {limit} exceeds {FACTOR_TABLE_LIMIT}")
    if max_value_bound is not None:
        guard_int64(max_value_bound, "multiplicative_table")
    vals = np.ones(limit + 1, dtype=np.int64)
    vals[0] = 0
    root = math.isqrt(limit)
    for p in prime_array(limit).tolist():
        if p <= root:
            idx = np.arange(p, limit + 1, p, dtype=np.int64)
            exps = np.ones(len(idx), dtype=np.int64)
            step = p  # idx[j] divisible by p^(a+1) iff (j+1) % p^a == 0
            while step * p <= limit:
                exps[step - 1 :: step] += 1
                step *= p
            fv = np.array([ppv(p, a) for a in range(1, int(exps.max()) + 1)], dtype=np.int64)
            vals[idx] *= fv[exps - 1]
        else:
            vals[p::p] *= ppv(p, 1)
    return vals
