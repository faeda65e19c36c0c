"""Compare Monte Carlo independence probabilities of greedy J_n outputs with the closed-form bound.

The bound is only claimed for large n, so violations at these sizes are
expected and reported rather than treated as errors.

    python scripts/jn_probability_mc.py --n 100 400 --trials 20000
"""

import argparse
import csv
import math
import sys

from berge_ramsey.construct import indep_prob_bound_jn, jn_density, jn_supplier
from berge_ramsey.indep import indep_prob_mc


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[100, 400])
    ap.add_argument("--trials", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "edges", "density_ratio", "s", "estimate", "std_error", "bound", "within_3sigma"])
    for n in args.n:
        H = jn_supplier(n, args.seed)
        dens = jn_density(H)["ratio"]
        s_values = sorted({s for s in (6, 8, 10, int(math.sqrt(n) / 2), int(math.sqrt(n)), 2 * int(math.sqrt(n))) if 0 < s <= n})
        for s in s_values:
            est = indep_prob_mc(H, s, args.trials, args.seed + s)
            bound = indep_prob_bound_jn(n, s)
            ok = est.estimate <= bound + 3 * est.std_error
            w.writerow([n, len(H), f"{dens:.3f}", s, f"{est.estimate:.5f}", f"{est.std_error:.5f}", f"{bound:.5f}", ok])


if __name__ == "__main__":
    main()
