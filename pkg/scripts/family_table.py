"""Print p, e(P) and the first PF coefficients for every family on the grid.

    python3 scripts/family_table.py [--grid 3] [--terms 10]
"""
import argparse

from ppart import catalog, formulas, poset
from ppart.series import closed_eval, q_registry


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid", type=int, default=3)
    ap.add_argument("--terms", type=int, default=10)
    args = ap.parse_args()
    print(f"{'family':<20} {'p':>3} {'e(P)':>10}  PF coefficients q^0..q^{args.terms - 1}")
    for fam in catalog.family_grid(args.grid):
        P = catalog.named(fam)
        pf = closed_eval(formulas.pf_closed(fam), q_registry(args.terms - 1)).coefficients()
        e = formulas.e_closed(fam)
        assert e == poset.count_linear_extensions(P)
        print(f"{str(fam):<20} {P.p:>3} {e:>10}  {' '.join(map(str, pf))}")


if __name__ == "__main__":
    main()
