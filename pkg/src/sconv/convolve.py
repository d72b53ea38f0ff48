"""The S-restricted convolution of arithmetical functions.

For a set S of positive integers,

    (f * g)(n) = sum over d | n with gcd(d, n/d) in S of f(d) g(n/d),

so S = all integers gives the Dirichlet product and S = {1} the unitary one.
A divisor d of n with gcd(d, n/d) in S is called an S-divisor of n below.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import divisors, eval_multiplicative, factorize
from .errors import ConsistencyError, LimitError
from .sets import SSet, associativity_witness, is_associative, is_multiplicative, rho

DEFAULT_SEED = 8191  # seed for reproducible random-function property checks


class ArithFunc:
    """An arithmetical function with structural flags for fast paths.

    Wraps a plain evaluator n -> value. Values are exact Python ints (or
    Fractions for inverses). Flags mark multiplicativity so operations can
    pick prime-power routes or reject invalid inputs.
    """

    def __init__(self, fn, name: str = "f", multiplicative: bool = False,
                 completely_multiplicative: bool = False):
        self._fn = fn
        self.name = name
        self.multiplicative = multiplicative or completely_multiplicative
        self.completely_multiplicative = completely_multiplicative

    def __call__(self, n: int):
        if n < 1:
            raise ValueError("arithmetical functions are defined on n >= 1")
        return self._fn(n)

    def __repr__(self):
        return f"ArithFunc({self.name})"

    def __add__(self, other: "ArithFunc") -> "ArithFunc":
        return ArithFunc(lambda n: self(n) + other(n), name=f"({self.name}+{other.name})")

    @classmethod
    def from_table(cls, values, name: str = "table") -> "ArithFunc":
        """From a 1-indexed dense table (values[0] unused)."""
        vals = list(values)

        def fn(n, _v=vals):
            if n >= len(_v):
                raise LimitError(f"{name} tabulated only to {len(_v) - 1}")
            return _v[n]

        return cls(fn, name=name)

    @classmethod
    def from_prime_powers(cls, ppv, name: str = "mult") -> "ArithFunc":
        """Multiplicative function from its prime-power values ppv(p, a)."""
        return cls(lambda n: eval_multiplicative(ppv, n), name=name, multiplicative=True)

    @classmethod
    def from_primes(cls, pv, name: str = "cmult") -> "ArithFunc":
        """Completely multiplicative function from its prime values pv(p)."""
        return cls(lambda n: eval_multiplicative(lambda p, a: pv(p) ** a, n),
                   name=name, completely_multiplicative=True)

    @classmethod
    def named(cls, ident: str) -> "ArithFunc":
        try:
            return _NAMED[ident]()
        except KeyError:
            raise KeyError(f"unknown function {ident!r}; have {sorted(_NAMED)}") from None

    def table(self, N: int) -> list:
        """Dense 1-indexed value table [0, f(1), ..., f(N)]."""
        return [0] + [self(n) for n in range(1, N + 1)]


def _sigma_pp(p: int, a: int) -> int:
    return (p ** (a + 1) - 1) // (p - 1)


_NAMED = {
    "I": lambda: ArithFunc(lambda n: 1, name="I", completely_multiplicative=True),
    "E": lambda: ArithFunc(lambda n: n, name="E", completely_multiplicative=True),
    "delta": lambda: ArithFunc(lambda n: 1 if n == 1 else 0, name="delta",
                               completely_multiplicative=True),
    "mu": lambda: ArithFunc.from_prime_powers(lambda p, a: -1 if a == 1 else 0, name="mu"),
    "tau": lambda: ArithFunc.from_prime_powers(lambda p, a: a + 1, name="tau"),
    "sigma": lambda: ArithFunc.from_prime_powers(_sigma_pp, name="sigma"),
    "tau_star": lambda: ArithFunc.from_prime_powers(lambda p, a: 2, name="tau_star"),
    "sigma_star": lambda: ArithFunc.from_prime_powers(lambda p, a: p ** a + 1,
                                                      name="sigma_star"),
    "phi": lambda: ArithFunc.from_prime_powers(lambda p, a: p ** a - p ** (a - 1),
                                               name="phi"),
}

NAMED_FUNCTIONS = tuple(sorted(_NAMED))


# ---------------------------------------------------------------------------
# the convolution

def s_divisors(S: SSet, n: int) -> list[int]:
    """Divisors d of n with gcd(d, n/d) in S, ascending."""
    return [d for d in divisors(n) if rho(S, math.gcd(d, n // d))]


def s_convolve_at(S: SSet, f: ArithFunc, g: ArithFunc, n: int):
    """(f * g)(n) restricted to S-divisor pairs."""
    total = 0
    for d in divisors(n):
        if rho(S, math.gcd(d, n // d)):
            total += f(d) * g(n // d)
    return total


def s_convolve_table(S: SSet, f: ArithFunc, g: ArithFunc, N: int) -> list:
    """Dense table of f * g on 1..N via one sweep over pairs d*e <= N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    fv = f.table(N)
    gv = g.table(N)
    out = [0] * (N + 1)
    for d in range(1, N + 1):
        fd = fv[d]
        if fd == 0:
            continue
        for e in range(1, N // d + 1):
            if gv[e] and rho(S, math.gcd(d, e)):
                out[d * e] += fd * gv[e]
    return out


def s_convolve(S: SSet, f: ArithFunc, g: ArithFunc) -> ArithFunc:
    """The convolution as a function object (pointwise evaluator)."""
    h = ArithFunc(lambda n: s_convolve_at(S, f, g, n),
                  name=f"({f.name}*{g.name}|{S.spec})")
    mv = is_multiplicative(S)
    h.multiplicative = bool(mv) and f.multiplicative and g.multiplicative
    return h


# ---------------------------------------------------------------------------
# inverses

def s_inverse(S: SSet, f: ArithFunc, N: int) -> list:
    """Table of the inverse of f under the S-convolution, on 1..N.

    Needs f(1) != 0 and an associative convolution (1 in S and every prime
    rule upward-closed); otherwise inverses are not two-sided and the call
    is refused. Exact rational recursion; entries are ints whenever the
    denominators clear (always when f(1) is +-1).

        g(1) = 1/f(1),   g(n) = -(1/f(1)) * sum_{d S-divisor of n, d < n} g(d) f(n/d)
    """
    f1 = f(1)
    if f1 == 0:
        raise ValueError("f(1) = 0 has no convolution inverse")
    if rho(S, 1) != 1:
        raise ValueError(f"{S.spec!r} does not contain 1; no identity, no inverses")
    ok = is_associative(S)
    if not ok:
        raise ValueError(
            f"{S.spec!r} gives a non-associative convolution; inverses are not "
            f"two-sided (witness triple {associativity_witness(S)})"
        )
    inv1 = Fraction(1, 1) / Fraction(f1)
    g: list = [0] * (N + 1)
    g[1] = inv1
    for n in range(2, N + 1):
        acc = Fraction(0)
        for d in s_divisors(S, n):
            if d < n:
                acc += g[d] * f(n // d)
        g[n] = -inv1 * acc
    for n in range(1, N + 1):
        if isinstance(g[n], Fraction) and g[n].denominator == 1:
            g[n] = int(g[n])
    return g


# ---------------------------------------------------------------------------
# structure witnesses

@dataclass(frozen=True)
class ZeroDivisorPair:
    """Nonzero f, g with f * g identically zero (checked on n <= checked_to).

    Both are the indicator of the least m outside S; the only candidate
    convolution value sits at m^2 and carries the factor rho(m) = 0.
    """

    f: ArithFunc
    g: ArithFunc
    excluded: int
    checked_to: int


def _least_excluded_member(S: SSet) -> int | None:
    if S.general is not None:
        g = S.general
        for m in range(2, g.bound + 1):
            if m not in g.members:
                return m
        return None  # saturated table: nothing excluded within the bound
    ms = S.mult
    cands = []
    for p, r in ms.overrides.items():
        s = r.least_excluded()
        if s is not None:
            cands.append(p ** s)
    if ms.default_rule.least_excluded() is not None:
        p = 2
        while p in ms.overrides:
            p += 1
            while factorize(p)[0][0] != p:
                p += 1
        cands.append(p ** ms.default_rule.least_excluded())
    return min(cands) if cands else None


def indicator(m: int) -> ArithFunc:
    return ArithFunc(lambda n: 1 if n == m else 0, name=f"ind_{m}")


def zero_divisor_pair(S: SSet) -> ZeroDivisorPair | None:
    """Zero divisors of the convolution, or None when S admits none.

    The full set N is the only S whose convolution has no zero divisors;
    every other S excludes some m, and ind_m * ind_m vanishes identically.
    The pair is verified by direct convolution on n <= 4m^2 (clamped to the
    range a table-backed S can answer).
    """
    m = _least_excluded_member(S)
    if m is None:
        return None
    f = indicator(m)
    limit = 4 * m * m
    if S.general is not None:
        limit = min(limit, S.general.bound ** 2)  # gcd queries reach sqrt(n)
    for n in range(1, limit + 1):
        if s_convolve_at(S, f, f, n) != 0:
            raise ConsistencyError(f"ind_{m} * ind_{m} over {S.spec!r} is nonzero at {n}")
    return ZeroDivisorPair(f=f, g=f, excluded=m, checked_to=limit)


def mult_preservation_witness(S: SSet, N: int):
    """Search for (m, d, n, e) with d | m, e | n, gcd(m, n) = 1 where the
    product-splitting rule behind multiplicativity preservation fails:

        rho((de, mn/(de))) != rho((d, m/d)) rho((e, n/e))

    Returns the first witness in ascending (m, n, d, e) order, or None.
    A verified witness exists iff rho is not multiplicative on the scanned
    range; for rule-based sets the scan always comes back empty.
    """
    mv = is_multiplicative(S)
    if not mv and mv.witness is not None and mv.witness != (1, 1):
        M, Nc = mv.witness  # try the square construction first
        cand = (M * M, M, Nc * Nc, Nc)
        if _split_violates(S, *cand):
            return cand
    for m in range(1, N + 1):
        dm = divisors(m)
        for n in range(1, N + 1):
            if math.gcd(m, n) != 1:
                continue
            dn = divisors(n)
            for d in dm:
                for e in dn:
                    if _split_violates(S, m, d, n, e):
                        return (m, d, n, e)
    return None


def _split_violates(S: SSet, m: int, d: int, n: int, e: int) -> bool:
    lhs = rho(S, math.gcd(d * e, (m * n) // (d * e)))
    rhs = rho(S, math.gcd(d, m // d)) * rho(S, math.gcd(e, n // e))
    return lhs != rhs


def associativity_violation_functions(S: SSet):
    """Concrete (f, g, h, n) with ((f*g)*h)(n) != (f*(g*h))(n), built from the
    associativity witness triple; None when the convolution associates.

    With witness (n, d, e) the indicators of e, d/e and n/d disagree at n:
    one bracketing picks up rho((d, n/d)) rho((e, d/e)), the other
    rho((e, n/e)) rho((d/e, n/d)).
    """
    trip = associativity_witness(S)
    if trip is None:
        return None
    n, d, e = trip
    return (indicator(e), indicator(d // e), indicator(n // d), n)


# ---------------------------------------------------------------------------
# random functions for property checks

def random_arith_func(rng: random.Random, N: int, unit: bool = False,
                      name: str = "rand") -> ArithFunc:
    """Random integer-valued table function with values in [-9, 9].

    unit=True forces f(1) != 0 so the function is invertible.
    """
    vals = [0] + [rng.randint(-9, 9) for _ in range(N)]
    if unit:
        while vals[1] == 0:
            vals[1] = rng.randint(-9, 9)
    return ArithFunc.from_table(vals, name=name)


def random_multiplicative_func(rng: random.Random, N: int, name: str = "randmult") -> ArithFunc:
    """Random multiplicative function: prime-power values drawn in [-9, 9]
    (f(1) = 1 by construction), consistent across the table to N."""
    cache: dict[tuple[int, int], int] = {}

    def ppv(p, a):
        if (p, a) not in cache:
            cache[(p, a)] = rng.randint(-9, 9)
        return cache[(p, a)]

    vals = [0] + [eval_multiplicative(ppv, n) for n in range(1, N + 1)]
    func = ArithFunc.from_table(vals, name=name)
    func.multiplicative = True
    return func
