"""For each ordering of the generators, compare the mu2-route differential
with Squier's explicit formula subset by subset.

Prints how often they are equal, equal only up to a global sign, or
different, and checks that homology never changes.

    python3 scripts/compare_orders.py systems/A3.cox [systems/B3.cox ...]
"""
import argparse
import itertools
from collections import Counter

from artinhom.coxeter import load_system
from artinhom.monoid import ArtinMonoid
from artinhom.squier import compare_squier_vs_mu2


def verdict(row):
    if row.equal:
        return "equal"
    if row.equal_up_to_sign:
        return "sign"
    return "different"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("systems", nargs="+")
    args = ap.parse_args()
    for path in args.systems:
        M = ArtinMonoid(load_system(path))
        s = M.system
        tally: Counter = Counter()
        homologies = set()
        for order in itertools.permutations(range(s.rank)):
            rep = compare_squier_vs_mu2(M, order)
            homologies.add(str(rep.mu2_homology))
            homologies.add(str(rep.squier_homology))
            for row in rep.rows:
                tally[(len(row.subset), verdict(row))] += 1
            sign_rows = [s.format_subset(r.subset) for r in rep.rows if verdict(r) == "sign"]
            print(f"{path}: order {''.join(s.generators[i] for i in order)}: "
                  f"sign flips on {', '.join(sign_rows) or 'none'}; global sign {rep.global_sign}")
        for (k, v), n in sorted(tally.items()):
            print(f"  |J| = {k}: {v:9} x{n}")
        print(f"  homology over all orders: {' | '.join(sorted(homologies))}")


if __name__ == "__main__":
    main()
