"""Colour random simple polygons and record every verification failure.

For each failing seed the witness point, the guards it sees and the pieces of
the decomposition are written out; --svg-dir renders the failing instances.
"""

import argparse
import json
import os
import random

from cfguard.cli import format_point
from cfguard.decomposition import Kind, colour_simple_polygon, decompose
from cfguard.instances import GenConfig, random_simple_polygon
from cfguard.svg import write_svg
from cfguard.verification import OK, v2p_verify


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--n-max", type=int, default=60)
    ap.add_argument("--svg-dir", default=None)
    args = ap.parse_args(argv)
    failures = []
    for seed in range(args.count):
        n = random.Random(seed).randint(3, args.n_max)
        P = random_simple_polygon(GenConfig(seed=seed, n=n))
        T = decompose(P, 0)
        g = colour_simple_polygon(P, 0, T)
        r = v2p_verify(P, g)
        if r.verdict == OK:
            continue
        nodes = T.nodes()
        failures.append({
            "seed": seed, "n": P.n, "verdict": r.verdict,
            "witness": format_point(r.witness) if r.witness is not None else None,
            "visible": {str(v): g.assignments[v] for v in r.visible or ()},
            "forward_pieces": sum(v.kind is Kind.FORWARD for v in nodes),
        })
        if args.svg_dir:
            os.makedirs(args.svg_dir, exist_ok=True)
            write_svg(os.path.join(args.svg_dir, "seed%d.svg" % seed), P, g,
                      [v.region.vertices for v in nodes], "seed %d" % seed)
    print(json.dumps({"checked": args.count, "failures": failures}, indent=1))


if __name__ == "__main__":
    main()
