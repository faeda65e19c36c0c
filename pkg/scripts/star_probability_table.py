"""Exact and Monte Carlo independence probabilities of star systems against the closed-form bound.

    python scripts/star_probability_table.py --trials 100000
"""

import argparse
import csv
import math
import sys

from berge_ramsey.construct import StarSystemSpec, indep_prob_bound_star, star_system
from berge_ramsey.indep import indep_prob_mc


def exact(spec: StarSystemSpec, s: int) -> float:
    # class of size c >= r: C(c, j) independent j-sets when j < r, else C(c - 1, j)
    ways = [1] + [0] * s
    for cls in spec.classes():
        c = len(cls)
        per = [math.comb(c, j) if (c < spec.r or j < spec.r) else math.comb(c - 1, j) for j in range(s + 1)]
        ways = [sum(ways[a] * per[t - a] for a in range(t + 1)) for t in range(s + 1)]
    return ways[s] / math.comb(spec.d, s)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=100000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["d", "m", "r", "s", "exact", "mc", "mc_std_error", "bound"])
    for d, m, r in ((12, 2, 3), (12, 3, 3), (20, 4, 3)):
        spec = StarSystemSpec(r, d, m)
        H = star_system(spec)
        for s in range(d + 1):
            est = indep_prob_mc(H, s, args.trials, args.seed + s)
            w.writerow([d, m, r, s, f"{exact(spec, s):.5f}", f"{est.estimate:.5f}", f"{est.std_error:.5f}",
                        f"{indep_prob_bound_star(d, m, r, s):.5f}"])


if __name__ == "__main__":
    main()
