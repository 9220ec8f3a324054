"""Render every gallery polygon with the colouring its family admits."""

import argparse
import os

from cfguard.decomposition import colour_simple_polygon, decompose
from cfguard.funnels import classify_funnel, colour_funnel
from cfguard.instances import GALLERY_IDS, gallery, gallery_base
from cfguard.svg import write_svg
from cfguard.verification import v2v_min_colours


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="figures")
    args = ap.parse_args(argv)
    os.makedirs(args.out_dir, exist_ok=True)
    for name in GALLERY_IDS:
        if name == "bowtie_bowls":
            continue                     # the search takes minutes; see bowtie_search.py
        P = gallery(name)
        F = classify_funnel(P)
        pieces = ()
        if F is not None:
            g = colour_funnel(F)
        elif name.startswith("fig7") or name == "bowl":
            g = v2v_min_colours(P, 3).colouring
        else:
            e = gallery_base(name, P)
            T = decompose(P, e)
            g = colour_simple_polygon(P, e, T)
            pieces = [v.region.vertices for v in T.nodes()]
        path = os.path.join(args.out_dir, name + ".svg")
        write_svg(path, P, g, pieces, name)
        print(path, len(g.assignments), "guards", g.palette_size(), "colours")


if __name__ == "__main__":
    main()
