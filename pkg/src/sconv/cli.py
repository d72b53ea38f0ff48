"""Command-line front end.

Subcommands:

    eval        values of tau/sigma/phi/mu/mu_k over a set S
    classify    structure report for a set (multiplicative? associative?)
    verify      invariant suites with first-counterexample reporting
    asymp       partial sums against the main term, with remainder fit
    maxorder    maximal-order constants, witness ratios, primorial ratios
    mu-k-stats  exploratory value statistics of the k-full Moebius function

Exit codes: 0 all requested checks passed, 1 verification failure,
2 usage or parse error, 3 resource/overflow guard tripped.

Machine artifacts (--out) are deterministic: identical invocations produce
bit-identical CSV/JSON (fixed seeds, no timestamps). JSON artifacts carry
{schema_version, command, sset, params, rows}.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import random
import sys

import numpy as np

from .arith import multiplicative_table
from .asymptotics import (
    asymptotic_report,
    sigma_maximal_constant,
    sigma_maximal_constant_uniform,
    tau_maximal_ratio,
    witness_sequence,
)
from .convolve import (
    DEFAULT_SEED,
    ArithFunc,
    associativity_violation_functions,
    random_arith_func,
    random_multiplicative_func,
    s_convolve_at,
    s_convolve_table,
    s_inverse,
    zero_divisor_pair,
)
from .divisor_functions import (
    phi_S_at,
    phi_S_table,
    sigma_S_at,
    sigma_S_table,
    sigma_S_table_via_rho,
    tau_S_at,
    tau_S_table,
    tau_S_table_via_rho,
)
from .errors import ConsistencyError, LimitError, ParseError
from .mobius import (
    mu_k_at,
    mu_k_statistics,
    mu_set_table,
    verify_mobius_identity,
)
from .sets import (
    SSet,
    associativity_witness,
    classify_prime,
    is_associative,
    is_multiplicative,
    parse_sset,
)

SCHEMA_VERSION = 1
RANGE_CAP = 10**7
VERIFY_CAP = 10**5


# ---------------------------------------------------------------------------
# argument plumbing

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write a machine artifact to this path")
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="artifact format (default csv)")
    common.add_argument("--workers", type=int, default=1,
                        help="worker hint; results are identical for any value")

    p = argparse.ArgumentParser(prog="sconv",
                                description="S-convolutions of arithmetical functions")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", parents=[common], help="evaluate a function")
    pe.add_argument("--sset", default="N", help="set spec (N, 1, Qk, Lk, P{..}, F{..}, FILE:path)")
    pe.add_argument("--fn", required=True, choices=("tau", "sigma", "phi", "mu", "mu_k"))
    pe.add_argument("--n", type=int, help="single argument")
    pe.add_argument("--range", dest="rng", help="inclusive range A..B")
    pe.add_argument("--k", type=int, help="k for --fn mu_k")

    pc = sub.add_parser("classify", parents=[common], help="structure of a set")
    pc.add_argument("--sset", required=True)

    pv = sub.add_parser("verify", parents=[common], help="invariant suites")
    pv.add_argument("--sset", required=True)
    pv.add_argument("--suite", default="all",
                    choices=("identities", "algebra", "inversion", "all"))
    pv.add_argument("--n", type=int, default=1000, help="check bound (<= 1e5)")

    pa = sub.add_parser("asymp", parents=[common], help="partial sums vs main term")
    pa.add_argument("--sset", required=True)
    pa.add_argument("--fn", required=True, choices=("tau", "sigma"))
    pa.add_argument("--n", type=int, default=10**6, help="x_max (<= 1e7)")
    pa.add_argument("--samples", type=int, default=24)

    pm = sub.add_parser("maxorder", parents=[common], help="maximal-order reports")
    pm.add_argument("--sset", required=True)
    pm.add_argument("--mode", required=True, choices=("sigma", "tau"))
    pm.add_argument("--k", type=int, help="sigma: top witness index (<= 15); tau: primorial length")
    pm.add_argument("--epsilon", type=float, default=0.1)
    pm.add_argument("--tol", type=float, default=1e-8,
                    help="two-path agreement tolerance for uniform-s sets")

    ps = sub.add_parser("mu-k-stats", parents=[common],
                        help="value statistics of mu_k on prime powers")
    ps.add_argument("--k", type=int, required=True)
    ps.add_argument("--a-max", type=int, default=1000)

    return p


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep or not lo.isdigit() or not hi.isdigit():
        raise ParseError(f"range must look like A..B, got {text!r}")
    a, b = int(lo), int(hi)
    if not 1 <= a <= b:
        raise ParseError(f"need 1 <= A <= B in range, got {text!r}")
    if b > RANGE_CAP:
        raise LimitError(f"range end {b} above cap {RANGE_CAP}")
    return a, b


def _emit(args, command: str, sset: str, params: dict, rows: list[dict],
          fieldnames: list[str]) -> None:
    """Write the machine artifact if --out was given."""
    if not args.out:
        return
    if args.format == "json":
        with open(args.out, "w") as fh:
            json.dump({"schema_version": SCHEMA_VERSION, "command": command,
                       "sset": sset, "params": params, "rows": rows},
                      fh, sort_keys=True)
            fh.write("\n")
    else:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(fieldnames)
            for row in rows:
                w.writerow([_cell(row[c]) for c in fieldnames])


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    return v


# ---------------------------------------------------------------------------
# eval

def _cmd_eval(args) -> int:
    if args.fn == "mu_k":
        if args.k is None:
            raise ParseError("--fn mu_k needs --k")
        if args.k < 1:
            raise ParseError("--k must be >= 1")
    S = parse_sset(args.sset)
    if (args.n is None) == (args.rng is None):
        raise ParseError("give exactly one of --n or --range")
    if args.n is not None:
        if args.n < 1 or args.n > RANGE_CAP:
            raise ParseError(f"--n must lie in 1..{RANGE_CAP}")
        lo = hi = args.n
    else:
        lo, hi = _parse_range(args.rng)

    values = _eval_values(S, args.fn, args.k, lo, hi)
    rows = [{"n": n, "value": v} for n, v in zip(range(lo, hi + 1), values)]
    if lo == hi:
        print(values[0])
    else:
        for row in rows:
            print(row["n"], row["value"])
    _emit(args, "eval", S.spec,
          {"fn": args.fn, "lo": lo, "hi": hi, "k": args.k}, rows, ["n", "value"])
    return 0


def _eval_values(S: SSet, fn: str, k: int | None, lo: int, hi: int) -> list:
    if fn == "mu_k":
        return [mu_k_at(k, n) for n in range(lo, hi + 1)]
    if fn == "mu":
        g = s_inverse(S, ArithFunc.named("I"), hi)
        return g[lo : hi + 1]
    if hi - lo < 1000:  # pointwise beats building a table to hi
        at = {"tau": tau_S_at, "sigma": sigma_S_at, "phi": phi_S_at}[fn]
        return [at(S, n) for n in range(lo, hi + 1)]
    tab = {"tau": tau_S_table, "sigma": sigma_S_table, "phi": phi_S_table}[fn]
    return tab(S, hi).values[lo : hi + 1]


# ---------------------------------------------------------------------------
# classify

def _cmd_classify(args) -> int:
    S = parse_sset(args.sset)
    mv = is_multiplicative(S)
    av = is_associative(S)
    print(f"set: {S.spec}")
    scope = "" if mv.bound is None else f" (checked to {mv.bound})"
    print(f"multiplicative: {'yes' if mv else 'no'}{scope}"
          + ("" if mv else f", witness {mv.witness}"))
    print(f"associative: {'yes' if av else 'no'}")
    rows = []
    if not av:
        w = associativity_witness(S)
        print(f"  witness triple (n, d, e) = {w}")
    if S.mult is not None:
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
            c = classify_prime(S, p)
            rows.append({"p": p, "case": c.case,
                         "threshold": c.threshold, "least_excluded": c.least_excluded})
            extra = ""
            if c.threshold is not None:
                extra = f", threshold {c.threshold}"
            if c.least_excluded is not None:
                extra += f", least excluded exponent {c.least_excluded}"
            print(f"  p={p}: {c.case}{extra}")
    else:
        print(f"  explicit membership up to {S.general.bound}"
              f" ({len(S.general.members)} members)")
    _emit(args, "classify", S.spec,
          {"multiplicative": bool(mv), "associative": bool(av)},
          rows, ["p", "case", "threshold", "least_excluded"])
    return 0


# ---------------------------------------------------------------------------
# verify

def _suite_identities(S: SSet, N: int) -> list[tuple[str, bool, str]]:
    out = []
    v = verify_mobius_identity(S, N)
    out.append(("mobius_sum", bool(v),
                f"sum of mu_S over divisors equals rho_S to {N}" if v
                else f"first failure {v.witness}"))

    ms = np.abs(mu_set_table(S, N))
    tau = multiplicative_table(N, lambda p, a: a + 1)
    bad = np.flatnonzero(ms[1:] > tau[1:])
    out.append(("mu_bound", len(bad) == 0,
                f"|mu_S| <= tau to {N}" if len(bad) == 0
                else f"first failure at n={int(bad[0]) + 1}"))

    t1 = np.asarray(tau_S_table(S, N).values)
    t2 = np.asarray(tau_S_table_via_rho(S, N).values)
    bad = np.flatnonzero(t1[1:] != t2[1:])
    out.append(("tau_identity", len(bad) == 0,
                f"both square-divisor forms match to {N}" if len(bad) == 0
                else f"first failure at n={int(bad[0]) + 1}: {int(t1[bad[0]+1])} vs {int(t2[bad[0]+1])}"))

    s1 = np.asarray(sigma_S_table(S, N).values)
    s2 = np.asarray(sigma_S_table_via_rho(S, N).values)
    bad = np.flatnonzero(s1[1:] != s2[1:])
    out.append(("sigma_identity", len(bad) == 0,
                f"both square-divisor forms match to {N}" if len(bad) == 0
                else f"first failure at n={int(bad[0]) + 1}"))

    p1 = np.asarray(phi_S_table(S, N).values)  # rho_S * phi, self-checked vs direct
    ms_signed = mu_set_table(S, N)
    p2 = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, N + 1):
        md = int(ms_signed[d])
        if md:
            p2[d::d] += md * np.arange(1, N // d + 1, dtype=np.int64)
    bad = np.flatnonzero(p1[1:] != p2[1:])
    out.append(("phi_forms", len(bad) == 0,
                f"mu_S*E and rho_S*phi agree to {N}" if len(bad) == 0
                else f"first failure at n={int(bad[0]) + 1}"))
    return out


def _suite_algebra(S: SSet, N: int) -> list[tuple[str, bool, str]]:
    out = []
    rng = random.Random(DEFAULT_SEED)
    f = random_arith_func(rng, N)
    g = random_arith_func(rng, N)
    h = random_arith_func(rng, N)

    fg = s_convolve_table(S, f, g, N)
    gf = s_convolve_table(S, g, f, N)
    n_bad = next((n for n in range(1, N + 1) if fg[n] != gf[n]), None)
    out.append(("commutative", n_bad is None,
                f"f*g = g*f to {N}" if n_bad is None else f"first failure at n={n_bad}"))

    nd = min(N, 2000)
    lhs = s_convolve_table(S, f, g + h, nd)
    fgd = s_convolve_table(S, f, g, nd)
    fhd = s_convolve_table(S, f, h, nd)
    n_bad = next((n for n in range(1, nd + 1) if lhs[n] != fgd[n] + fhd[n]), None)
    out.append(("distributive", n_bad is None,
                f"f*(g+h) = f*g + f*h to {nd}" if n_bad is None
                else f"first failure at n={n_bad}"))

    delta = ArithFunc.named("delta")
    fd = s_convolve_table(S, f, delta, N)
    fv = f.table(N)
    n_bad = next((n for n in range(1, N + 1) if fd[n] != fv[n]), None)
    out.append(("identity_element", n_bad is None,
                f"f*delta = f to {N}" if n_bad is None else f"first failure at n={n_bad}"))

    na = min(N, 200)
    av = is_associative(S)
    if av:
        fg_t = ArithFunc.from_table(s_convolve_table(S, f, g, na))
        gh_t = ArithFunc.from_table(s_convolve_table(S, g, h, na))
        n_bad = next((n for n in range(1, na + 1)
                      if s_convolve_at(S, fg_t, h, n) != s_convolve_at(S, f, gh_t, n)), None)
        out.append(("associative", n_bad is None,
                    f"(f*g)*h = f*(g*h) to {na}" if n_bad is None
                    else f"first failure at n={n_bad}"))
    else:
        trip = associativity_violation_functions(S)
        if trip is None:
            out.append(("associative", False, "no witness found though structure test failed"))
        else:
            u, v, w, n = trip
            uv = ArithFunc.from_table(s_convolve_table(S, u, v, n))
            vw = ArithFunc.from_table(s_convolve_table(S, v, w, n))
            left = s_convolve_at(S, uv, w, n)
            right = s_convolve_at(S, u, vw, n)
            out.append(("associative", False,
                        f"violated at n={n} by indicator functions: "
                        f"((f*g)*h)({n})={left} != (f*(g*h))({n})={right}, "
                        f"witness triple {associativity_witness(S)}"))

    zd = zero_divisor_pair(S)
    if zd is None:
        out.append(("zero_divisors", True, "none exist: S is the full set"))
    else:
        out.append(("zero_divisors", True,
                    f"indicator of {zd.excluded} squares to zero"
                    f" (checked to {zd.checked_to})"))

    if S.mult is not None:
        nm = min(N, 10**4)
        fm = random_multiplicative_func(rng, nm)
        gm = random_multiplicative_func(rng, nm)
        t = s_convolve_table(S, fm, gm, nm)
        bad = None
        for m in range(2, nm + 1):
            for n in range(m + 1, nm // m + 1):
                if math.gcd(m, n) == 1 and t[m * n] != t[m] * t[n]:
                    bad = (m, n)
                    break
            if bad:
                break
        out.append(("mult_preserved", bad is None,
                    f"f*g multiplicative on coprime products <= {nm}" if bad is None
                    else f"first failure at coprime pair {bad}"))
    return out


def _suite_inversion(S: SSet, N: int) -> list[tuple[str, bool, str]]:
    out = []
    nb = min(N, 4096)
    try:
        g = s_inverse(S, ArithFunc.named("I"), nb)
    except ValueError as exc:
        out.append(("inverse_of_I", False, str(exc)))
        return out
    conv = s_convolve_table(S, ArithFunc.from_table(g), ArithFunc.named("I"), nb)
    n_bad = next((n for n in range(2, nb + 1) if conv[n] != 0), None)
    ok = conv[1] == 1 and n_bad is None
    out.append(("inverse_of_I", ok,
                f"I^(-1) * I = delta to {nb}" if ok else f"first failure at n={n_bad or 1}"))

    rng = random.Random(DEFAULT_SEED + 1)
    nr = min(N, 512)
    f = random_arith_func(rng, nr, unit=True)
    gi = s_inverse(S, f, nr)
    conv = s_convolve_table(S, ArithFunc.from_table(gi), f, nr)
    n_bad = next((n for n in range(2, nr + 1) if conv[n] != 0), None)
    ok = conv[1] == 1 and n_bad is None
    out.append(("inverse_random_unit", ok,
                f"f^(-1) * f = delta to {nr} for a seeded unit" if ok
                else f"first failure at n={n_bad or 1}"))
    return out


def _cmd_verify(args) -> int:
    if not 1 <= args.n <= VERIFY_CAP:
        raise ParseError(f"--n must lie in 1..{VERIFY_CAP}")
    S = parse_sset(args.sset)
    checks: list[tuple[str, bool, str]] = []
    if args.suite in ("identities", "all"):
        checks += _suite_identities(S, args.n)
    if args.suite in ("algebra", "all"):
        checks += _suite_algebra(S, args.n)
    if args.suite in ("inversion", "all"):
        checks += _suite_inversion(S, args.n)

    failed = 0
    for name, ok, detail in checks:
        print(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
        failed += not ok
    print(f"suite {args.suite}: {len(checks) - failed} passed, {failed} failed")
    _emit(args, "verify", S.spec, {"suite": args.suite, "n": args.n},
          [{"check": c, "ok": ok, "detail": d} for c, ok, d in checks],
          ["check", "ok", "detail"])
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# asymp / maxorder / mu-k-stats

def _cmd_asymp(args) -> int:
    S = parse_sset(args.sset)
    fn = "tau_S" if args.fn == "tau" else "sigma_S"
    rep = asymptotic_report(S, fn, args.n, samples=args.samples)
    print(f"{fn} over {S.spec}, x_max={args.n}"
          f" (main-term constant error <= {rep.const_err:.3g})")
    print(f"{'x':>10} {'partial_sum':>16} {'main_term':>16} {'ratio':>10} {'remainder':>14}")
    for row in rep.rows():
        print(f"{row['x']:>10} {row['partial_sum']:>16} {row['main_term']:>16.6g}"
              f" {row['ratio']:>10.6f} {row['remainder']:>14.6g}")
    if rep.fit_exponent is not None:
        print(f"empirical remainder exponent {rep.fit_exponent:.3f}"
              f" (rms residual {rep.fit_residual:.3f}; informational only)")
    _emit(args, "asymp", S.spec,
          {"fn": fn, "x_max": args.n, "samples": args.samples,
           "const_err": rep.const_err, "fit_exponent": rep.fit_exponent,
           "fit_residual": rep.fit_residual},
          rep.rows(), ["x", "partial_sum", "main_term", "ratio", "remainder"])
    return 0


def _cmd_maxorder(args) -> int:
    S = parse_sset(args.sset)
    if args.mode == "tau":
        k = args.k if args.k is not None else 10**5
        if k < 2:
            raise ParseError("--k must be >= 2 for the primorial ratio")
        r = tau_maximal_ratio(k)
        print(f"primorial ratio at k={k}: {r:.6f} (tends to ln 2 = {math.log(2):.6f})")
        _emit(args, "maxorder", S.spec, {"mode": "tau", "k": k},
              [{"k": k, "ratio": r, "limit": math.log(2)}], ["k", "ratio", "limit"])
        return 0

    k_top = args.k if args.k is not None else 12
    if not 2 <= k_top <= 15:
        raise ParseError("--k must lie in 2..15 for witness sequences")
    if not 0.0 < args.epsilon < 1.0:
        raise ParseError("--epsilon must lie in (0, 1)")
    mc = sigma_maximal_constant(S)
    print(f"limsup constant for {S.spec}: {mc.value:.10f} (err <= {mc.err_bound:.3g})")
    status = 0
    if mc.uniform_s is not None:
        closed = sigma_maximal_constant_uniform(mc.uniform_s)
        diff = abs(mc.value - closed)
        agree = diff <= args.tol
        print(f"uniform s={mc.uniform_s}: closed form {closed:.10f},"
              f" |difference| = {diff:.3g} {'<=' if agree else '>'} {args.tol:g}")
        if not agree:
            status = 1
    rows = []
    for kk in range(2, k_top + 1):
        try:
            w = witness_sequence(S, args.epsilon, kk)
        except ValueError:
            continue  # k too small for this epsilon
        rows.append({"k": kk, "t": w.t, "a": w.a, "log_n": w.log_n,
                     "sigma_over_n": w.sigma_over_n, "ratio": w.ratio})
    print(f"{'k':>3} {'t':>3} {'a':>4} {'log_n':>12} {'sigma/n':>10} {'ratio':>10}")
    for row in rows:
        a_txt = "-" if row["a"] is None else row["a"]
        print(f"{row['k']:>3} {row['t']:>3} {a_txt:>4} {row['log_n']:>12.3f}"
              f" {row['sigma_over_n']:>10.6f} {row['ratio']:>10.6f}")
    _emit(args, "maxorder", S.spec,
          {"mode": "sigma", "epsilon": args.epsilon, "k": k_top,
           "constant": mc.value, "constant_err": mc.err_bound,
           "uniform_s": mc.uniform_s},
          rows, ["k", "t", "a", "log_n", "sigma_over_n", "ratio"])
    return status


def _cmd_mu_k_stats(args) -> int:
    stats = mu_k_statistics(args.k, args.a_max)
    longest = max((ln for _, ln in stats.sign_runs), default=0)
    zero_share = sum(ln for s, ln in stats.sign_runs if s == 0) / stats.a_max
    print(f"mu_{args.k} on prime powers p^1..p^{args.a_max}:")
    print(f"  {len(stats.values)} distinct values,"
          f" min {min(stats.values)}, max {max(stats.values)}")
    print(f"  {len(stats.sign_runs)} sign runs, longest {longest},"
          f" zero share {zero_share:.4f}")
    rows = [{"value": v, "first_a": stats.first_occurrence[v]} for v in stats.values]
    for row in rows[:10]:
        print(f"  value {row['value']} first at a={row['first_a']}")
    if len(rows) > 10:
        print(f"  ... {len(rows) - 10} more")
    _emit(args, "mu-k-stats", "-", {"k": args.k, "a_max": args.a_max},
          rows, ["value", "first_a"])
    return 0


# ---------------------------------------------------------------------------

_DISPATCH = {
    "eval": _cmd_eval,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
    "asymp": _cmd_asymp,
    "maxorder": _cmd_maxorder,
    "mu-k-stats": _cmd_mu_k_stats,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    try:
        return _DISPATCH[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
