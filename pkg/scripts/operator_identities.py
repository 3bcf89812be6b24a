"""Compare the n-fold composition of the operators with its closed form on
random seeded bases and report the number of nonzero terms involved.

    python3 scripts/operator_identities.py [--nmax 5] [--seeds 10] [--degree 12]
"""
import argparse
import random
import time

from ppart import operators


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=5)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--degree", type=int, default=12)
    args = ap.parse_args()
    reg = operators.operator_registry(args.degree)
    print(f"{'seed':>4} {'n':>2} {'terms F':>8} {'terms out':>9} {'equal':>6} {'ms':>7}")
    for s in range(args.seeds):
        F = operators.random_base_series(random.Random(s), reg, q_power=2)
        for n in range(2, args.nmax + 1):
            t0 = time.perf_counter()
            lhs = operators.compose_bar(F, n).series
            rhs = operators.thm12_rhs(F, n)
            ms = 1000 * (time.perf_counter() - t0)
            print(f"{s:>4} {n:>2} {len(F):>8} {len(lhs):>9} {str(lhs == rhs):>6} {ms:>7.1f}")


if __name__ == "__main__":
    main()
