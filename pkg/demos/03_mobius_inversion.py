"""Mobius functions of a set, and the k-full Mobius recurrence.

mu_S is the Dirichlet convolution of the set's indicator with the
classical Mobius function; summing it over divisors recovers the
indicator. For k-full sets the convolution inverse of the constant-1
function is multiplicative with prime-power values given by a short
linear recurrence, whose values grow once k reaches 3.
"""

import numpy as np

from sconv import (
    mu_k_at,
    mu_k_prime_power,
    mu_k_statistics,
    mu_set_table,
    parse_sset,
    rho_table,
    s_inverse,
)
from sconv.convolve import ArithFunc

SPECS = ["N", "1", "Q2", "L2"]


def main() -> None:
    print("mu_S on 1..16:")
    for spec in SPECS:
        tab = mu_set_table(parse_sset(spec), 16)
        print(f"  S={spec:4s} {tab[1:].tolist()}")
    print("  (S=N collapses to the unit impulse, S={1} to classical mu)")

    print("\ninversion identity, checked by sweep on 1..2000:")
    for spec in SPECS:
        S = parse_sset(spec)
        mu = mu_set_table(S, 2000)
        acc = np.zeros(2001, dtype=np.int64)
        for d in range(1, 2001):
            if mu[d]:
                acc[d::d] += mu[d]
        same = bool(np.array_equal(acc[1:], rho_table(S, 2000)[1:]))
        print(f"  S={spec:4s} sum of mu_S over divisors == indicator: {same}")

    print("\nprime-power values of the k-full Mobius function:")
    for k in [2, 3]:
        vals = [mu_k_prime_power(k, a) for a in range(1, 14)]
        print(f"  k={k}: a=1..13 -> {vals}")
    st = mu_k_statistics(3, 60)
    print(f"  k=3 values reached by a <= 60: min={st.values[0]}, max={st.values[-1]}")

    print("\nthe same function, found independently as a convolution inverse:")
    inv = s_inverse(parse_sset("L2"), ArithFunc.named("I"), 64)
    direct = [mu_k_at(2, n) for n in range(1, 65)]
    print(f"  inverse of 1 under the 2-full convolution matches mu_2 on 1..64: "
          f"{inv[1:] == direct}")


if __name__ == "__main__":
    main()
