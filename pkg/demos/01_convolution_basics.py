"""Restricted divisor sums in action.

A divisor d of n is admitted when gcd(d, n/d) lands in a chosen set S.
S = all integers gives the ordinary divisors, S = {1} the unitary ones;
k-free and k-full choices interpolate between them. This script shows how
tau_S and sigma_S respond as S shrinks.
"""

from sconv import parse_sset, s_divisors, sigma_S_at, tau_S_at

SPECS = ["N", "1", "Q2", "L2", "P{2,3}"]


def main() -> None:
    n = 720  # 2^4 3^2 5, divisor-rich
    print(f"admitted divisors of {n}:")
    for spec in SPECS:
        S = parse_sset(spec)
        ds = s_divisors(S, n)
        print(f"  S={spec:7s} count={len(ds):3d}  {ds}")

    print("\ntau_S and sigma_S on 1..20 (columns follow the set list):")
    header = "  n  " + "".join(f"{spec:>12s}" for spec in SPECS)
    print(header)
    for n in range(1, 21):
        cells = []
        for spec in SPECS:
            S = parse_sset(spec)
            cells.append(f"{tau_S_at(S, n):4d}/{sigma_S_at(S, n):<6d}")
        print(f"{n:3d}  " + "".join(f"{c:>12s}" for c in cells))

    print("\nnote: on squarefree n every gcd(d, n/d) is 1, so all columns agree;")
    print("the restriction only bites at n with repeated prime factors.")


if __name__ == "__main__":
    main()
