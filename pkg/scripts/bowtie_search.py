"""Vertex-to-vertex colour search on the bowl gadget and the bowtie with bowls.

Prints the node counts and timings of the exhaustive backtracking runs.
"""

import argparse
import time

from cfguard.geometry import mpq
from cfguard.instances import bowtie_with_bowls, gallery
from cfguard.verification import v2v_min_colours, v2v_verify


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--skip-bowtie", action="store_true")
    ap.add_argument("--budget", type=int, default=10 ** 9)
    args = ap.parse_args(argv)

    B = gallery("bowl")
    doors = [B.index_of((mpq(6), mpq(-30))), B.index_of((mpq(-6), mpq(-30)))]
    t0 = time.time()
    r = v2v_min_colours(B, 2, args.budget, fixed={d: 0 for d in doors})
    print("bowl, doors unguarded, <= 2 colours: %s  nodes=%d  %.1fs"
          % ("impossible" if r.value is None else r.value, r.nodes, time.time() - t0))
    if args.skip_bowtie:
        return
    P = bowtie_with_bowls()
    for c in (2, 3):
        t0 = time.time()
        r = v2v_min_colours(P, c, args.budget)
        ok = r.colouring is not None and v2v_verify(P, r.colouring).ok
        print("bowtie, <= %d colours: %s  nodes=%d  verified=%s  %.1fs"
              % (c, r.value, r.nodes, ok, time.time() - t0), flush=True)


if __name__ == "__main__":
    main()
