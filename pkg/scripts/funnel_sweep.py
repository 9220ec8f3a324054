"""Guard counts and palette sizes of the two funnel algorithms over random funnels.

Writes one CSV row per funnel: family, seed, n, |simple|, |optimal|, palette,
lower bound.
"""

import argparse
import csv
import random
import sys
import time

from cfguard.funnels import (
    colour_funnel, colour_lower_bound, guard_funnel_optimal, guard_funnel_simple,
)
from cfguard.instances import GenConfig, random_deep_funnel, random_funnel


def sample(family, seed, n_max):
    rng = random.Random(seed)
    n = rng.randint(4, n_max)
    if family == "deep":
        return random_deep_funnel(GenConfig(seed=seed, kind="deep", k=n // 2, m=n - n // 2))
    k = rng.randint(2, n - 2)
    return random_funnel(GenConfig(seed=seed, kind="funnel", k=k, m=n - k))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", choices=("funnel", "deep"), default="funnel")
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--n-max", type=int, default=200)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh)
    w.writerow(["family", "seed", "n", "simple", "optimal", "palette", "lower_bound", "secs"])
    for seed in range(args.count):
        t0 = time.time()
        F = sample(args.family, seed, args.n_max)
        a1, a2 = guard_funnel_simple(F), guard_funnel_optimal(F)
        pal = colour_funnel(F).palette_size()
        w.writerow([args.family, seed, F.polygon.n, len(a1), len(a2), pal,
                    colour_lower_bound(len(a2)), "%.3f" % (time.time() - t0)])
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
