"""Tests for set descriptors: parsing, membership, structure verdicts.

Membership oracles are written out longhand here (squarefree test by trial
division, exponent scans) so the package's rule machinery is checked against
something that cannot share its bugs.
"""

import math
import random

import numpy as np
import pytest

from sconv.errors import LimitError, ParseError
from sconv.sets import (
    MAX_FINITE_EXPONENT,
    ExponentRule,
    associativity_witness,
    check_assoc_identity,
    classify_prime,
    is_associative,
    is_multiplicative,
    make_mult_sset,
    parse_sset,
    render_sset,
    rho,
    rho_table,
)

BUILTINS = ["N", "1", "Q2", "Q3", "L2", "L3", "P{2,3}"]


def brute_factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def member_oracle(spec: str, m: int) -> bool:
    """Longhand membership test for the builtin specs."""
    fac = brute_factor(m)
    if spec == "N":
        return True
    if spec == "1":
        return m == 1
    if spec.startswith("Q"):
        k = int(spec[1:])
        return all(e < k for _, e in fac)
    if spec.startswith("L"):
        k = int(spec[1:])
        return all(e >= k for _, e in fac)
    if spec == "P{2,3}":
        return all(p in (2, 3) for p, _ in fac)
    raise AssertionError(spec)


# ---------------------------------------------------------------------------
# parsing


def test_parse_round_trip():
    for spec in BUILTINS + ["F{1,2,3}", "F{1,4}"]:
        S = parse_sset(spec)
        assert S.spec == spec
        assert render_sset(S) == spec
        assert parse_sset(render_sset(S)).spec == spec


def test_q1_canonicalizes_to_unitary():
    assert parse_sset("Q1").spec == "1"


def test_parse_rejects_garbage():
    for bad in ["", "Q0", "L0", "junk", "F{}", "P{}", "F{0}", "Q-1"]:
        with pytest.raises(ParseError):
            parse_sset(bad)


def test_parse_general_bound():
    S = parse_sset("F{1,2,3}")
    assert S.general is not None
    assert S.general.bound == 100
    S = parse_sset("F{1,2,3}", bound=500)
    assert S.general.bound == 500


def test_exponent_rule_canonicalization():
    assert ExponentRule.below(1) == ExponentRule.none_()
    assert ExponentRule.at_least(1) == ExponentRule.all_()
    assert ExponentRule.finite(()) == ExponentRule.none_()


def test_exponent_rule_least_excluded():
    assert ExponentRule.all_().least_excluded() is None
    assert ExponentRule.none_().least_excluded() == 1
    assert ExponentRule.below(2).least_excluded() == 2
    assert ExponentRule.below(3).least_excluded() == 3
    assert ExponentRule.at_least(2).least_excluded() == 1
    assert ExponentRule.finite((2, 3)).least_excluded() == 1
    assert ExponentRule.finite((1, 2)).least_excluded() == 3


# ---------------------------------------------------------------------------
# membership


def test_rho_matches_oracle():
    for spec in BUILTINS:
        S = parse_sset(spec)
        for m in range(1, 400):
            assert rho(S, m) == int(member_oracle(spec, m)), (spec, m)


def test_rho_one_always_member():
    for spec in BUILTINS + ["F{1,4}"]:
        assert rho(parse_sset(spec), 1) == 1


def test_rho_table_matches_pointwise():
    for spec in BUILTINS + ["F{1,2,3}"]:
        S = parse_sset(spec)
        tab = rho_table(S, 100)
        assert tab[0] == 0
        for m in range(1, 101):
            assert tab[m] == rho(S, m), (spec, m)


def test_rho_general_set_beyond_bound():
    S = parse_sset("F{1,2,3}")
    assert rho(S, 2) == 1 and rho(S, 4) == 0
    with pytest.raises(LimitError):
        rho(S, 101)


# ---------------------------------------------------------------------------
# structure verdicts


def test_builtins_multiplicative():
    for spec in BUILTINS:
        v = is_multiplicative(parse_sset(spec))
        assert v.holds and bool(v)
        assert v.bound is None  # rule form: absolute verdict


def test_general_multiplicative_verdicts():
    # {1, 4} agrees with its per-prime closure inside the bound
    v = is_multiplicative(parse_sset("F{1,4}"))
    assert v.holds and v.bound == 100
    # {1, 2, 3} misses the coprime product 6
    v = is_multiplicative(parse_sset("F{1,2,3}"))
    assert not v.holds
    m, n = v.witness
    assert math.gcd(m, n) == 1


def test_associativity_verdicts():
    assoc = {"N": True, "1": True, "Q2": False, "Q3": False,
             "L2": True, "L3": True, "P{2,3}": True}
    for spec, want in assoc.items():
        v = is_associative(parse_sset(spec))
        assert v.holds == want, spec


def test_q2_witness_triple():
    assert associativity_witness(parse_sset("Q2")) == (16, 4, 2)


def test_witness_triples_verified():
    for spec in ["Q2", "Q3"]:
        S = parse_sset(spec)
        trip = associativity_witness(S)
        assert trip is not None
        n, d, e = trip
        assert n % d == 0 and d % e == 0
        assert not check_assoc_identity(S, n, d, e), spec
    for spec in ["N", "1", "L2", "L3", "P{2,3}"]:
        assert associativity_witness(parse_sset(spec)) is None, spec


def test_assoc_identity_holds_on_random_triples():
    rng = random.Random(8191)
    for spec in ["N", "1", "L2", "P{2,3}"]:
        S = parse_sset(spec)
        for _ in range(200):
            e = rng.randrange(1, 12)
            d = e * rng.randrange(1, 12)
            n = d * rng.randrange(1, 12)
            assert check_assoc_identity(S, n, d, e), (spec, n, d, e)


def test_classify_prime_cases():
    cases = {
        ("N", 2): ("all-in", None, None),
        ("1", 2): ("all-out", None, 1),
        ("Q2", 2): ("not-upward-closed", None, 2),
        ("Q3", 5): ("not-upward-closed", None, 3),
        ("L2", 2): ("threshold", 2, 1),
        ("L3", 7): ("threshold", 3, 1),
        ("P{2,3}", 2): ("all-in", None, None),
        ("P{2,3}", 3): ("all-in", None, None),
        ("P{2,3}", 5): ("all-out", None, 1),
    }
    for (spec, p), (case, thr, lex) in cases.items():
        c = classify_prime(parse_sset(spec), p)
        assert (c.case, c.threshold, c.least_excluded) == (case, thr, lex), (spec, p)


def test_make_mult_sset_with_overrides():
    S = make_mult_sset(ExponentRule.all_(), {2: ExponentRule.none_()})
    # membership: m in S iff 2 does not divide m
    for m in range(1, 200):
        assert rho(S, m) == int(m % 2 == 1), m
    assert is_multiplicative(S).holds


def test_finite_rule_depth_cap():
    r = ExponentRule.finite(tuple(range(1, 10)))
    assert r.contains(9) and not r.contains(10)
    assert not r.contains(MAX_FINITE_EXPONENT + 1)
