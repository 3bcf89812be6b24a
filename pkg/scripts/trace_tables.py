"""Distribution of the diagonal traces of r x c plane partitions of a given
size, from enumeration and from the trace-refined product.

    python3 scripts/trace_tables.py [--r 2] [--c 3] [--size 4]
"""
import argparse
from collections import Counter

from ppart import formulas, poset
from ppart.series import closed_eval


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--c", type=int, default=3)
    ap.add_argument("--size", type=int, default=4)
    args = ap.parse_args()
    r, c, N = args.r, args.c, args.size
    zs = formulas.gansner_vars(r, c)
    counts = Counter()
    for pi in poset.iter_plane_partitions(r, c, N):
        if sum(map(sum, pi)) == N:
            tv = poset.k_trace(pi)
            counts[tuple(tv[int(z[1:])] for z in zs)] += 1
    series = closed_eval(formulas.gansner(r, c), formulas.gansner_registry(r, c, N))
    from_product = {e[:-1]: coef for e, coef in series.items() if e[-1] == N}
    print("traces (" + ", ".join(zs) + ")   enumerated  product")
    for key in sorted(set(counts) | set(from_product)):
        print(f"{str(key):<24} {counts.get(key, 0):>10} {from_product.get(key, 0):>8}")
    print(f"total {sum(counts.values())} plane partitions of {N} in a {r} x {c} box")


if __name__ == "__main__":
    main()
