"""Average orders: partial sums against their predicted main terms.

Summing sigma_S up to x grows like a constant times x^2; summing tau_S
like A x (ln x + B). The constants come from values and derivatives of
the set's Dirichlet series, evaluated with certified tails. The report
tabulates partial sums, main terms, and their ratio on a geometric grid.
"""

from sconv import asymptotic_report, parse_sset, sigma_main_term, tau_main_term


def show(spec: str, fn: str, x_max: int) -> None:
    r = asymptotic_report(parse_sset(spec), fn, x_max, samples=8)
    print(f"\n{fn} over S={spec}, x up to {x_max}:")
    print("        x    partial sum      main term     ratio")
    for x, ps, mt, ratio in zip(r.xs, r.partial_sums, r.main_terms, r.ratios):
        print(f"{x:9d} {ps:14.0f} {mt:14.1f} {ratio:11.6f}")
    if r.fit_exponent is not None:
        print(f"  remainder decay fit: |R(x)| ~ x^{r.fit_exponent:.2f} "
              f"(informational; constants carry +-{r.const_err:.1e})")


def main() -> None:
    for spec in ["N", "Q2"]:
        show(spec, "sigma_S", 10**5)
    show("1", "tau_S", 10**5)

    x = 10**5
    print("\nmain terms alone at x = 1e5:")
    for spec in ["N", "1", "Q2", "L2"]:
        S = parse_sset(spec)
        print(f"  S={spec:4s} sigma: {sigma_main_term(S, x):16.1f}   "
              f"tau: {tau_main_term(S, x):14.1f}")


if __name__ == "__main__":
    main()
