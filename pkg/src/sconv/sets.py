"""Sets of positive integers with decidable membership, used to restrict
which divisor pairs a convolution may use.

A set S is "multiplicative" when 1 is in S and its indicator rho_S is a
multiplicative function; membership of p^a then depends only on (p, a), so S
is described by one exponent rule per prime. Rules:

    all         every exponent a >= 1 in S
    none        no exponent in S
    below k     a in S iff a < k          (k-free local part, k >= 2)
    at_least e  a in S iff a >= e         (e-full local part, e >= 2)
    finite F    a in S iff a in F         (finite exponent set)

Sets that are not of this shape (or not known to be) are held as an explicit
membership table up to a bound; every verdict about them is bound-limited.

Text expressions (--sset in the CLI):

    N           all positive integers
    1           just {1}
    Qk          k-free integers, e.g. Q2 = squarefree
    Lk          k-full integers, e.g. L2 = squarefull
    P{2,3}      products of powers of the listed primes (and 1)
    F{1,2,6}    explicit finite membership list
    FILE:path   explicit membership from a file: first line "bound B",
                then one member per line
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import factorize, multiplicative_table
from .errors import ConsistencyError, LimitError, ParseError

MAX_FINITE_EXPONENT = 64   # finite exponent rules inspected to this depth only
DEFAULT_FINITE_BOUND = 100


@dataclass(frozen=True)
class ExponentRule:
    kind: str  # 'all' | 'none' | 'below' | 'at_least' | 'finite'
    k: int = 0
    members: frozenset[int] = frozenset()

    @staticmethod
    def all_() -> "ExponentRule":
        return ExponentRule("all")

    @staticmethod
    def none_() -> "ExponentRule":
        return ExponentRule("none")

    @staticmethod
    def below(k: int) -> "ExponentRule":
        if k < 1:
            raise ParseError(f"below-rule needs k >= 1, got {k}")
        if k == 1:
            return ExponentRule("none")  # a < 1 never holds
        return ExponentRule("below", k=k)

    @staticmethod
    def at_least(e: int) -> "ExponentRule":
        if e < 1:
            raise ParseError(f"at-least rule needs e >= 1, got {e}")
        if e == 1:
            return ExponentRule("all")  # a >= 1 always holds
        return ExponentRule("at_least", k=e)

    @staticmethod
    def finite(members) -> "ExponentRule":
        ms = frozenset(int(a) for a in members)
        if any(a < 1 for a in ms):
            raise ParseError("finite exponent rule members must be >= 1")
        if not ms:
            return ExponentRule("none")
        if max(ms) > MAX_FINITE_EXPONENT:
            raise LimitError(
                f"finite exponent rule deeper than {MAX_FINITE_EXPONENT} unsupported"
            )
        return ExponentRule("finite", members=ms)

    def contains(self, a: int) -> bool:
        """Is exponent a >= 1 admitted at this prime?"""
        if a < 1:
            raise ValueError("exponent must be >= 1")
        if self.kind == "all":
            return True
        if self.kind == "none":
            return False
        if self.kind == "below":
            return a < self.k
        if self.kind == "at_least":
            return a >= self.k
        return a in self.members

    def upward_closed(self) -> bool:
        """Once an exponent is in, are all larger ones in too? (vacuous for none)."""
        if self.kind in ("all", "none", "at_least"):
            return True
        return False  # below k>=2 contains 1 but not k; finite sets are bounded

    def least_excluded(self) -> int | None:
        """Least a >= 1 not admitted; None when the rule admits everything."""
        if self.kind == "all":
            return None
        if self.kind == "none" or self.kind == "at_least":
            return 1
        if self.kind == "below":
            return self.k
        a = 1
        while a in self.members:
            a += 1
        return a

    def least_included(self) -> int | None:
        if self.kind == "all":
            return 1
        if self.kind == "none":
            return None
        if self.kind == "below":
            return 1
        if self.kind == "at_least":
            return self.k
        return min(self.members)


@dataclass(frozen=True)
class MultiplicativeSSet:
    default_rule: ExponentRule
    overrides: dict[int, ExponentRule] = field(default_factory=dict)

    def rule_at(self, p: int) -> ExponentRule:
        return self.overrides.get(p, self.default_rule)

    def rho_prime_power(self, p: int, a: int) -> int:
        if a == 0:
            return 1
        return 1 if self.rule_at(p).contains(a) else 0


@dataclass(frozen=True)
class GeneralSSet:
    bound: int
    members: frozenset[int]

    def __post_init__(self):
        if self.bound < 1:
            raise ParseError("bound must be >= 1")
        bad = [m for m in self.members if not 1 <= m <= self.bound]
        if bad:
            raise ParseError(f"members outside 1..{self.bound}: {sorted(bad)[:5]}")


@dataclass(frozen=True)
class SSet:
    """A set descriptor: exactly one of (mult, general) is set.

    spec is the canonical text form, reproducible through parse_sset.
    """

    spec: str
    mult: MultiplicativeSSet | None = None
    general: GeneralSSet | None = None

    @property
    def is_general(self) -> bool:
        return self.general is not None


@dataclass(frozen=True)
class Verdict:
    """Result of a structural property check.

    holds      the property as far as it could be decided
    bound      None for an absolute verdict; else verified for inputs <= bound
    witness    a counterexample tuple when holds is False, if one was found
    """

    holds: bool
    bound: int | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class PrimeClassification:
    """How a single prime sits inside a multiplicative set.

    case is one of 'all-in', 'all-out', 'threshold' (no small powers, then
    everything from threshold up), or 'not-upward-closed'. least_excluded is
    the least a with p^a outside S, defined unless the prime is all-in.
    """

    prime: int
    case: str
    threshold: int | None = None
    least_excluded: int | None = None


# ---------------------------------------------------------------------------
# parsing / rendering

_BUILTIN_MULT = {
    "N": lambda: MultiplicativeSSet(ExponentRule.all_()),
    "1": lambda: MultiplicativeSSet(ExponentRule.none_()),
}


def _is_prime(n: int) -> bool:
    return n >= 2 and factorize(n)[0][0] == n


def _parse_int_list(body: str, what: str) -> list[int]:
    if not body:
        raise ParseError(f"empty {what} list")
    out = []
    for tok in body.split(","):
        tok = tok.strip()
        if not tok.isdigit():
            raise ParseError(f"bad {what} entry {tok!r}")
        out.append(int(tok))
    return out


def render_sset(S: SSet) -> str:
    """Canonical text form; parse_sset(render_sset(S)) matches S's semantics."""
    return S.spec


def _canonical_mult_spec(m: MultiplicativeSSet) -> str:
    d = m.default_rule
    ov = {p: r for p, r in m.overrides.items() if r != d}
    if not ov:
        if d.kind == "all":
            return "N"
        if d.kind == "none":
            return "1"
        if d.kind == "below":
            return f"Q{d.k}"
        if d.kind == "at_least":
            return f"L{d.k}"
    if d.kind == "none" and ov and all(r.kind == "all" for r in ov.values()):
        return "P{" + ",".join(str(p) for p in sorted(ov)) + "}"
    # programmatic shape with no text form; describe it (not re-parseable)
    parts = [f"default={d.kind}{d.k or ''}"]
    parts += [f"{p}:{r.kind}{r.k or ''}" for p, r in sorted(ov.items())]
    return "<" + " ".join(parts) + ">"


def make_mult_sset(default_rule: ExponentRule, overrides: dict[int, ExponentRule] | None = None) -> SSet:
    m = MultiplicativeSSet(default_rule, dict(overrides or {}))
    return SSet(spec=_canonical_mult_spec(m), mult=m)


def make_general_sset(members, bound: int, spec: str | None = None) -> SSet:
    g = GeneralSSet(bound=bound, members=frozenset(int(m) for m in members))
    if spec is None:
        spec = "F{" + ",".join(str(m) for m in sorted(g.members)) + "}"
    return SSet(spec=spec, general=g)


def parse_sset(text: str, bound: int | None = None) -> SSet:
    """Parse a set expression (grammar in the module docstring).

    bound overrides the default membership bound of F{...} lists
    (max(100, 2*max member)); it is ignored for the other forms, which are
    either rule-based or carry their own bound (FILE).
    """
    text = text.strip()
    if not text:
        raise ParseError("empty set expression")
    if text in _BUILTIN_MULT:
        return SSet(spec=text, mult=_BUILTIN_MULT[text]())
    if text[0] in "QL" and text[1:].isdigit():
        k = int(text[1:])
        if k < 1:
            raise ParseError(f"{text!r}: index must be >= 1")
        rule = ExponentRule.below(k) if text[0] == "Q" else ExponentRule.at_least(k)
        return SSet(spec=_canonical_mult_spec(MultiplicativeSSet(rule)),
                    mult=MultiplicativeSSet(rule))
    if text.startswith("P{") and text.endswith("}"):
        primes = _parse_int_list(text[2:-1], "prime")
        for p in primes:
            if not _is_prime(p):
                raise ParseError(f"P-list entry {p} is not prime")
        ov = {p: ExponentRule.all_() for p in primes}
        m = MultiplicativeSSet(ExponentRule.none_(), ov)
        return SSet(spec=_canonical_mult_spec(m), mult=m)
    if text.startswith("F{") and text.endswith("}"):
        members = _parse_int_list(text[2:-1], "member")
        b = bound if bound is not None else max(DEFAULT_FINITE_BOUND, 2 * max(members))
        return make_general_sset(members, b)
    if text.startswith("FILE:"):
        path = text[5:]
        try:
            with open(path) as fh:
                lines = [ln.strip() for ln in fh if ln.strip()]
        except OSError as exc:
            raise ParseError(f"cannot read set file {path!r}: {exc}") from exc
        if not lines or not lines[0].lower().startswith("bound"):
            raise ParseError(f"set file {path!r} must start with 'bound B'")
        try:
            b = int(lines[0].split()[1])
        except (IndexError, ValueError) as exc:
            raise ParseError(f"set file {path!r}: bad bound line {lines[0]!r}") from exc
        members = []
        for ln in lines[1:]:
            if not ln.isdigit():
                raise ParseError(f"set file {path!r}: bad member line {ln!r}")
            members.append(int(ln))
        return make_general_sset(members, b, spec=text)
    raise ParseError(f"unrecognized set expression {text!r}")


# ---------------------------------------------------------------------------
# membership

def rho(S: SSet, m: int) -> int:
    """Indicator of S at m (0 or 1). GeneralSSet queries past the bound raise."""
    if m < 1:
        raise ValueError("rho is defined on positive integers")
    if S.general is not None:
        if m > S.general.bound:
            raise LimitError(
                f"membership of {m} unknown: set {S.spec!r} bounded at {S.general.bound}"
            )
        return 1 if m in S.general.members else 0
    if m == 1:
        return 1
    ms = S.mult
    for p, a in factorize(m):
        if not ms.rule_at(p).contains(a):
            return 0
    return 1


def rho_table(S: SSet, limit: int) -> np.ndarray:
    """int64 0/1 table of the indicator on 0..limit (index 0 unused, = 0)."""
    if S.general is not None:
        if limit > S.general.bound:
            raise LimitError(
                f"table to {limit} exceeds bound {S.general.bound} of {S.spec!r}"
            )
        t = np.zeros(limit + 1, dtype=np.int64)
        idx = [m for m in S.general.members if m <= limit]
        if idx:
            t[np.array(idx)] = 1
        return t
    ms = S.mult
    return multiplicative_table(limit, lambda p, a: 1 if ms.rule_at(p).contains(a) else 0)


# ---------------------------------------------------------------------------
# structure

def is_multiplicative(S: SSet) -> Verdict:
    """Is 1 in S and rho_S multiplicative?

    Rule-based sets are multiplicative by construction (absolute verdict).
    Table-backed sets get an exhaustive scan of coprime pairs with product
    inside the bound; the verdict is only valid up to that bound.
    """
    if S.mult is not None:
        return Verdict(True)
    g = S.general
    if 1 not in g.members:
        return Verdict(False, bound=g.bound, witness=(1, 1))
    tab = rho_table(S, g.bound)
    for m in range(2, g.bound + 1):
        for n in range(m, g.bound // m + 1):
            if math.gcd(m, n) == 1 and tab[m * n] != tab[m] * tab[n]:
                return Verdict(False, bound=g.bound, witness=(m, n))
    return Verdict(True, bound=g.bound)


def classify_prime(S: SSet, p: int, depth: int = MAX_FINITE_EXPONENT) -> PrimeClassification:
    """Classify prime p inside a rule-based set; table-backed sets have no
    per-prime structure and are rejected."""
    if S.mult is None:
        raise ValueError("classify_prime needs a rule-based (multiplicative) set")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    r = S.mult.rule_at(p)
    if r.kind == "all":
        return PrimeClassification(p, "all-in")
    if r.kind == "none":
        return PrimeClassification(p, "all-out", least_excluded=1)
    if r.kind == "at_least":
        return PrimeClassification(p, "threshold", threshold=r.k, least_excluded=1)
    if r.kind == "below":
        return PrimeClassification(p, "not-upward-closed", least_excluded=r.k)
    s = r.least_excluded()
    if s > depth:
        raise LimitError(f"finite rule at {p} not classifiable within depth {depth}")
    return PrimeClassification(p, "not-upward-closed", least_excluded=s)


def _rho_of_gcds_ok(tab, n, d, e) -> bool:
    """The associativity identity at one triple (e | d | n):
    rho((d, n/d)) rho((e, d/e)) == rho((e, n/e)) rho((d/e, n/d))."""
    lhs = tab[math.gcd(d, n // d)] * tab[math.gcd(e, d // e)]
    rhs = tab[math.gcd(e, n // e)] * tab[math.gcd(d // e, n // d)]
    return lhs == rhs


def check_assoc_identity(S: SSet, n: int, d: int, e: int) -> bool:
    """Point check of the associativity identity; requires e | d | n."""
    if n % d or d % e:
        raise ValueError("need e | d and d | n")
    r = lambda m: rho(S, m)
    lhs = r(math.gcd(d, n // d)) * r(math.gcd(e, d // e))
    rhs = r(math.gcd(e, n // e)) * r(math.gcd(d // e, n // d))
    return lhs == rhs


ASSOC_SCAN_CAP = 4096


def _assoc_scan(S: SSet, limit: int) -> tuple | None:
    """First (n, d, e) with e | d | n <= limit violating the associativity
    identity, ascending in (n, d, e); None if the scan is clean."""
    tab = rho_table(S, limit)
    divlists: list[list[int]] = [[] for _ in range(limit + 1)]
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            divlists[m].append(d)
    for n in range(1, limit + 1):
        for d in divlists[n]:
            for e in divlists[d]:
                if not _rho_of_gcds_ok(tab, n, d, e):
                    return (n, d, e)
    return None


def is_associative(S: SSet) -> Verdict:
    """Does the S-restricted convolution associate?

    Rule-based sets: absolute verdict, true iff every prime's rule is
    upward-closed (the set is multiplicative by construction). Table-backed
    sets: scan of the associativity identity up to min(bound, 4096).
    """
    if S.mult is not None:
        m = S.mult
        rules = [m.default_rule] + list(m.overrides.values())
        return Verdict(all(r.upward_closed() for r in rules))
    limit = min(S.general.bound, ASSOC_SCAN_CAP)
    w = _assoc_scan(S, limit)
    return Verdict(w is None, bound=limit, witness=w)


def associativity_witness(S: SSet) -> tuple | None:
    """A triple (n, d, e), e | d | n, violating the associativity identity,
    or None when the convolution associates (within bound for table sets).

    For rule-based sets the triple is built from the first non-upward-closed
    prime rule: with j the least admitted exponent and l > j the least
    excluded one, the triple is (p^(l+2j), p^(l+j), p^l) when l < 2j and
    (p^(2l), p^l, p^(l-j)) otherwise. The construction is verified before
    being returned; if verification ever failed, an ascending (j, l) scan and
    then a prime-power triple scan up to p^12 would take over.
    """
    if S.mult is not None:
        m = S.mult
        bad: list[int] = sorted(p for p, r in m.overrides.items() if not r.upward_closed())
        if not m.default_rule.upward_closed():
            p = 2
            while p in m.overrides or not _is_prime(p):
                p += 1
            bad.append(p)
        if not bad:
            return None
        p = min(bad)
        rule = m.rule_at(p)
        j = rule.least_included()
        ell = j + 1
        while rule.contains(ell):  # bounded: the rule is not upward-closed
            ell += 1
        while True:  # j admitted, ell > j excluded; ascending (j, l) on failure
            trip = _proof_triple(p, j, ell)
            if not check_assoc_identity(S, *trip):
                return trip
            nxt = _next_jl(rule, j, ell)
            if nxt is None:
                break
            j, ell = nxt
        for trip in _prime_power_triples(p, 12):
            if not check_assoc_identity(S, *trip):
                return trip
        raise ConsistencyError(f"no violating triple found at prime {p} of {S.spec!r}")
    # table-backed: try the non-multiplicativity construction, then scan
    mv = is_multiplicative(S)
    if not mv and mv.witness is not None and mv.witness != (1, 1):
        M, N = mv.witness  # gcd queries stay <= M*N <= bound
        trip = ((M * N) ** 2, M * N, M)
        if not check_assoc_identity(S, *trip):
            return trip
    limit = min(S.general.bound, ASSOC_SCAN_CAP)
    return _assoc_scan(S, limit)


def _proof_triple(p: int, j: int, ell: int) -> tuple[int, int, int]:
    if ell < 2 * j:
        return (p ** (ell + 2 * j), p ** (ell + j), p ** ell)
    return (p ** (2 * ell), p ** ell, p ** (ell - j))


def _next_jl(rule: ExponentRule, j: int, ell: int):
    """Next (j admitted, l excluded, j < l) pair in ascending lexicographic
    order, bounded by the finite inspection depth."""
    cap = MAX_FINITE_EXPONENT + 2
    ell += 1
    while j <= cap:
        while ell <= cap:
            if rule.contains(j) and not rule.contains(ell):
                return (j, ell)
            ell += 1
        j += 1
        ell = j + 1
    return None


def _prime_power_triples(p: int, max_exp: int):
    for an in range(1, max_exp + 1):
        for ad in range(an + 1):
            for ae in range(ad + 1):
                yield (p ** an, p ** ad, p ** ae)
