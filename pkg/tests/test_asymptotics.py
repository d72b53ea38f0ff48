"""Tests for partial-sum reports and maximal-order analysis.

Float targets were frozen from an independent 50-digit computation:
classical zeta values, Euler's constant, and products derived from them.
The witness-sequence check rebuilds the witness integer exactly with
big-int arithmetic and recomputes its ratio from scratch.
"""

import json
import math
import random
from fractions import Fraction

import pytest

from sconv.asymptotics import (
    EULER_GAMMA,
    LOGLOG_FLOOR,
    AsymptoticReport,
    asymptotic_report,
    gronwall_range_max,
    sigma_main_term,
    sigma_maximal_constant,
    sigma_maximal_constant_uniform,
    tau_main_term,
    tau_maximal_ratio,
    witness_sequence,
)
from sconv.errors import LimitError
from sconv.sets import parse_sset

BUILTINS = ["N", "1", "Q2", "Q3", "L2", "L3", "P{2,3}"]

ZETA_2 = 1.6449340668482264
ZETA_3 = 1.2020569031595943
ZETA_Q2_3 = 1.1815649490102569
ZETA_Q3_3 = 1.1996475396471398
ZETA_L2_3 = 1.0193823952102515
E_GAMMA = 1.7810724179901980
E_GAMMA_OVER_ZETA_2 = 1.0827621932609246   # limsup constant, unitary case
E_GAMMA_OVER_ZETA_4 = 1.6456012053655584   # squarefree case
E_GAMMA_OVER_ZETA_6 = 1.7507097502744094   # cubefree case


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
    fac = brute_factor(m)
    if spec == "N":
        return True
    if spec == "1":
        return m == 1
    if spec.startswith("Q"):
        return all(e < int(spec[1:]) for _, e in fac)
    if spec.startswith("L"):
        return all(e >= int(spec[1:]) for _, e in fac)
    raise AssertionError(spec)


def brute_sigma_pp(spec: str, p: int, e: int) -> int:
    return sum(p**b for b in range(e + 1) if member_oracle(spec, p ** min(b, e - b)))


# ---------------------------------------------------------------------------
# main terms


def test_sigma_main_term_constants():
    # leading constant is zeta(2) zeta_S(3) / (2 zeta(3))
    expect = {
        "N": ZETA_2 / 2,
        "1": ZETA_2 / (2 * ZETA_3),
        "Q2": ZETA_2 * ZETA_Q2_3 / (2 * ZETA_3),
        "Q3": ZETA_2 * ZETA_Q3_3 / (2 * ZETA_3),
        "L2": ZETA_2 * ZETA_L2_3 / (2 * ZETA_3),
    }
    for spec, want in expect.items():
        got = sigma_main_term(parse_sset(spec), 10**6) / 10**12
        assert got == pytest.approx(want, abs=5e-9), spec


def test_sigma_main_term_scales_quadratically():
    S = parse_sset("Q2")
    a = sigma_main_term(S, 1000.0)
    b = sigma_main_term(S, 2000.0)
    assert b / a == pytest.approx(4.0, rel=1e-12)


def test_tau_main_term_full_set():
    # for the unrestricted set the series corrections cancel exactly
    for x in [100.0, 10**4, 10**6]:
        want = x * (math.log(x) + 2 * EULER_GAMMA - 1)
        assert tau_main_term(parse_sset("N"), x) == pytest.approx(want, rel=1e-12)


def test_main_term_guards():
    with pytest.raises(ValueError):
        sigma_main_term(parse_sset("N"), 0.5)
    with pytest.raises(ValueError):
        tau_main_term(parse_sset("N"), 1.5)


# ---------------------------------------------------------------------------
# reports


def test_report_invariants_all_builtins():
    for spec in BUILTINS:
        S = parse_sset(spec)
        for fn in ["sigma_S", "tau_S"]:
            r = asymptotic_report(S, fn, 30000, samples=12)
            assert r.fn == fn and r.sset_spec == spec
            assert list(r.xs) == sorted(set(r.xs))
            assert r.xs[-1] == 30000
            for ps, mt, ratio, rem in zip(r.partial_sums, r.main_terms,
                                          r.ratios, r.remainders):
                assert ratio == ps / mt
                assert rem == ps - mt
            assert abs(r.ratios[-1] - 1) < 5e-3, (spec, fn)
            if r.fit_exponent is not None:
                assert math.isfinite(r.fit_exponent)


def test_report_partial_sums_are_exact():
    # spot-check the accumulated sums against the longhand divisor scan
    r = asymptotic_report(parse_sset("Q2"), "sigma_S", 2000, samples=6)
    for x, ps in zip(r.xs, r.partial_sums):
        want = 0
        for n in range(1, x + 1):
            want += sum(d for d in range(1, n + 1)
                        if n % d == 0 and member_oracle("Q2", math.gcd(d, n // d)))
        assert ps == want, x


def test_report_rows_and_serialization(tmp_path):
    r = asymptotic_report(parse_sset("L2"), "tau_S", 5000, samples=5)
    rows = r.rows()
    assert [row["x"] for row in rows] == list(r.xs)
    assert set(rows[0]) == {"x", "partial_sum", "main_term", "ratio", "remainder"}
    jp, cp = tmp_path / "r.json", tmp_path / "r.csv"
    r.to_json(str(jp))
    r.to_csv(str(cp))
    obj = json.loads(jp.read_text())
    assert obj["sset"] == "L2" and obj["fn"] == "tau_S"
    assert len(obj["rows"]) == len(r.xs)
    lines = cp.read_text().strip().splitlines()
    assert len(lines) == len(r.xs) + 1


def test_report_determinism():
    a = asymptotic_report(parse_sset("1"), "sigma_S", 8000, samples=6)
    b = asymptotic_report(parse_sset("1"), "sigma_S", 8000, samples=6)
    assert a == b


def test_report_guards():
    S = parse_sset("N")
    with pytest.raises(LimitError):
        asymptotic_report(S, "sigma_S", 2 * 10**7)
    with pytest.raises(ValueError):
        asymptotic_report(S, "psi", 1000)
    with pytest.raises(ValueError):
        asymptotic_report(S, "tau_S", 1000, samples=1)
    with pytest.raises(ValueError):
        asymptotic_report(S, "tau_S", 50)


def test_report_rejects_bad_rows():
    with pytest.raises(ValueError):
        AsymptoticReport(sset_spec="N", fn="tau_S", x_max=10,
                         xs=(10, 5), partial_sums=(1.0, 1.0),
                         main_terms=(1.0, 1.0), ratios=(1.0, 1.0),
                         remainders=(0.0, 0.0), fit_exponent=None,
                         fit_residual=None, const_err=0.0)


# ---------------------------------------------------------------------------
# maximal order of sigma_S


def test_maximal_constant_full_set_is_e_gamma():
    mc = sigma_maximal_constant(parse_sset("N"))
    assert mc.value == pytest.approx(E_GAMMA, abs=1e-12)
    assert mc.uniform_s is None


def test_maximal_constant_frozen_values():
    cases = {"1": E_GAMMA_OVER_ZETA_2, "Q2": E_GAMMA_OVER_ZETA_4,
             "Q3": E_GAMMA_OVER_ZETA_6}
    for spec, want in cases.items():
        mc = sigma_maximal_constant(parse_sset(spec))
        assert abs(mc.value - want) <= mc.err_bound + 1e-12, spec
        assert mc.err_bound <= 2e-8, spec
        assert float(mc) == mc.value


def test_maximal_constant_uniform_s_detection():
    want = {"1": 1, "Q2": 2, "Q3": 3, "L2": 1, "L3": 1, "N": None, "P{2,3}": None}
    for spec, s in want.items():
        assert sigma_maximal_constant(parse_sset(spec)).uniform_s == s, spec


def test_kfull_sets_share_the_unitary_constant():
    # least excluded exponent is 1 at every prime for both
    a = sigma_maximal_constant(parse_sset("1"))
    b = sigma_maximal_constant(parse_sset("L2"))
    assert a.value == b.value


def test_maximal_constant_cross_convolution():
    # all powers of 2 and 3 allowed, everything else excluded at exponent 1:
    # constant is e^gamma (1 - 2^-2)^-1 (1 - 3^-2)^-1 / zeta(2)
    mc = sigma_maximal_constant(parse_sset("P{2,3}"))
    want = E_GAMMA_OVER_ZETA_2 * (4.0 / 3.0) * (9.0 / 8.0)
    assert abs(mc.value - want) <= mc.err_bound + 1e-9


def test_closed_form_two_path_agreement():
    for spec, s in [("1", 1), ("Q2", 2), ("Q3", 3), ("L2", 1)]:
        product = sigma_maximal_constant(parse_sset(spec)).value
        closed = sigma_maximal_constant_uniform(s)
        assert abs(product - closed) <= 1e-8, spec


def test_uniform_closed_form_values():
    assert sigma_maximal_constant_uniform(1) == pytest.approx(E_GAMMA_OVER_ZETA_2, abs=2e-9)
    assert sigma_maximal_constant_uniform(2) == pytest.approx(E_GAMMA_OVER_ZETA_4, abs=2e-9)
    assert sigma_maximal_constant_uniform(3) == pytest.approx(E_GAMMA_OVER_ZETA_6, abs=2e-9)


def test_maximal_constant_rejects_general_sets():
    with pytest.raises(ValueError):
        sigma_maximal_constant(parse_sset("F{1,2}"))


# ---------------------------------------------------------------------------
# witness sequences


def test_witness_structure_unitary():
    w = witness_sequence(parse_sset("1"), 0.1, 5)
    assert w.t == 3 and w.a is None
    assert w.factorization[0] == (2, 1)
    assert w.log_n >= LOGLOG_FLOOR
    assert all(e == 1 for _, e in w.factorization)


def test_witness_structure_full_set():
    w = witness_sequence(parse_sset("N"), 0.1, 5)
    assert w.t == 3 and w.a == 4
    # all-in primes up to t carry exponent a - 1, tail primes exponent 1
    assert w.factorization[0] == (2, 3) and w.factorization[1] == (3, 3)
    assert w.factorization[-1][1] == 1


def test_witness_ratio_rebuilt_exactly():
    # recompute sigma_S(n)/n with exact big-int arithmetic, then the ratio
    for spec in ["N", "1", "L2"]:
        w = witness_sequence(parse_sset(spec), 0.1, 5)
        sig_over_n = Fraction(1)
        log_n = 0.0
        for p, e in w.factorization:
            sig_over_n *= Fraction(brute_sigma_pp(spec, p, e), p**e)
            log_n += e * math.log(p)
        assert w.log_n == pytest.approx(log_n, rel=1e-12), spec
        assert w.sigma_over_n == pytest.approx(float(sig_over_n), rel=1e-10), spec
        want_ratio = float(sig_over_n) / math.log(log_n)
        assert w.ratio == pytest.approx(want_ratio, rel=1e-10), spec


def test_witness_ratio_near_constant_at_large_k():
    # the ratio approaches the limsup constant from above as k grows
    w = witness_sequence(parse_sset("1"), 0.1, 12)
    c = E_GAMMA_OVER_ZETA_2
    assert 0.75 * c <= w.ratio <= 1.05 * c
    seq = [witness_sequence(parse_sset("1"), 0.1, k).ratio for k in (6, 8, 10, 12)]
    assert all(a > b for a, b in zip(seq, seq[1:]))
    assert all(r > c for r in seq)


def test_witness_guards():
    S1 = parse_sset("1")
    with pytest.raises(ValueError):
        witness_sequence(S1, 0.1, 1)   # no tail primes in (t, e^k]
    with pytest.raises(LimitError):
        witness_sequence(S1, 0.1, 16)
    with pytest.raises(ValueError):
        witness_sequence(S1, 0.0, 5)
    with pytest.raises(ValueError):
        witness_sequence(S1, 1.0, 5)
    with pytest.raises(ValueError):
        witness_sequence(parse_sset("F{1,2}"), 0.1, 5)


# ---------------------------------------------------------------------------
# maximal order of tau, and the Gronwall-style range scan


def test_tau_ratio_small_k_by_hand():
    theta = math.log(2 * 3 * 5 * 7)
    want = 4 * math.log(2) * math.log(theta) / theta
    assert tau_maximal_ratio(4) == pytest.approx(want, rel=1e-12)


def test_tau_ratio_decreasing():
    seq = [tau_maximal_ratio(k) for k in range(10, 70, 10)]
    assert all(a > b for a, b in zip(seq, seq[1:]))
    assert all(r > math.log(2) for r in seq)


def test_tau_ratio_guard():
    with pytest.raises(ValueError):
        tau_maximal_ratio(1)


def test_gronwall_scan_matches_brute():
    def sigma(n: int) -> int:
        return sum(d for d in range(1, n + 1) if n % d == 0)

    best, arg = None, None
    for n in range(5041, 6001):
        r = sigma(n) / (n * math.log(math.log(n)))
        if best is None or r > best:
            best, arg = r, n
    got, got_n = gronwall_range_max(6000)
    assert got_n == arg
    assert got == pytest.approx(best, rel=1e-12)
    assert got < E_GAMMA


def test_gronwall_guards():
    with pytest.raises(ValueError):
        gronwall_range_max(6000, start=10)
