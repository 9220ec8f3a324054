"""Command-line front end.

Exit codes: 0 success / OK, 1 verification FAIL, 2 bad input or flags,
3 the polygon does not meet the mode's precondition, 4 inconclusive
(sampled) verification.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

from .decomposition import DecompositionError, Kind, colour_simple_polygon, decompose
from .funnels import (
    ColouredGuarding, NotAFunnel, classify_funnel, colour_funnel, guard_funnel_optimal,
    guard_funnel_simple,
)
from .geometry import GeometryError, PolygonError, SimplePolygon, mpq
from .instances import GALLERY_BASE, GALLERY_IDS, GenConfig, gallery, gallery_base, generate
from .svg import write_svg
from .verification import FAIL, INCONCLUSIVE, OK, OverlayTooLarge, v2p_verify, v2v_verify
from .weakvis import NotWeaklyVisible, colour_weak_visibility, max_funnels

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


class PreconditionError(Exception):
    pass


# ---------------------------------------------------------------- rationals

def parse_rational(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError("coordinates must be integers or 'p/q' strings, got %r" % (x,))
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, str):
        try:
            return mpq(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError("bad rational %r" % (x,)) from None
    raise InputError("bad coordinate %r" % (x,))


def format_rational(q):
    q = mpq(q)
    if q.denominator == 1:
        return int(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def format_point(p):
    return [format_rational(p[0]), format_rational(p[1])]


# ---------------------------------------------------------------- files

@dataclass
class PolygonFile:
    vertices: list
    base: tuple = None
    name: str = None

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict) or "vertices" not in doc:
            raise InputError("polygon file needs a 'vertices' list")
        vs = doc["vertices"]
        if not isinstance(vs, list) or any(not isinstance(v, list) or len(v) != 2 for v in vs):
            raise InputError("'vertices' must be a list of [x, y] pairs")
        pts = [(parse_rational(x), parse_rational(y)) for x, y in vs]
        base = doc.get("base")
        if base is not None:
            if (not isinstance(base, list) or len(base) != 2
                    or not all(isinstance(i, int) and 0 <= i < len(pts) for i in base)):
                raise InputError("'base' must be a pair of vertex indices")
            base = tuple(base)
        return cls(pts, base, doc.get("name"))

    def to_json(self):
        doc = {"vertices": [format_point(p) for p in self.vertices]}
        if self.base is not None:
            doc["base"] = list(self.base)
        if self.name is not None:
            doc["name"] = self.name
        return doc

    def polygon(self):
        """(SimplePolygon, base edge index in the normalised polygon or None)."""
        try:
            P = SimplePolygon(self.vertices)
        except (PolygonError, GeometryError) as ex:
            raise InputError("invalid polygon: %s" % ex) from None
        if self.base is None:
            return P, None
        a, b = (P.index_of(self.vertices[i]) for i in self.base)
        if (a + 1) % P.n == b:
            return P, a
        if (b + 1) % P.n == a:
            return P, b
        raise InputError("'base' %r is not a polygon edge" % (list(self.base),))

    @classmethod
    def of(cls, P, base_edge=None, name=None):
        base = None if base_edge is None else (base_edge % P.n, (base_edge + 1) % P.n)
        return cls(list(P.vertices), base, name)


@dataclass
class GuardingFile:
    guards: list                      # [(vertex, colour)]
    algorithm: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def palette_size(self):
        return len({c for _, c in self.guards})

    @classmethod
    def from_json(cls, doc):
        try:
            gs = [(int(g["vertex"]), int(g["colour"])) for g in doc["guards"]]
        except (KeyError, TypeError, ValueError):
            raise InputError("guarding file needs 'guards': [{vertex, colour}]") from None
        out = cls(gs, doc.get("algorithm", ""), doc.get("stats", {}))
        if "palette_size" in doc and doc["palette_size"] != out.palette_size:
            raise InputError("palette_size does not match the guards")
        return out

    def to_json(self):
        return {"guards": [{"vertex": v, "colour": c} for v, c in self.guards],
                "palette_size": self.palette_size, "algorithm": self.algorithm,
                "stats": self.stats}

    def guarding(self, n):
        if any(not 0 <= v < n for v, _ in self.guards):
            raise InputError("guard vertex index out of range")
        if len({v for v, _ in self.guards}) != len(self.guards):
            raise InputError("a vertex carries two guards")
        return ColouredGuarding.from_pairs(self.guards)

    @classmethod
    def of(cls, g, algorithm, stats=None):
        return cls(sorted(g.assignments.items()), algorithm, dict(stats or {}))


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as ex:
        raise InputError("cannot read %s: %s" % (path, ex.strerror)) from None
    except json.JSONDecodeError as ex:
        raise InputError("%s is not valid JSON: %s" % (path, ex)) from None


def _dump(doc):
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _write_json(path, doc):
    text = _dump(doc)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def read_polygon(path):
    return PolygonFile.from_json(_read_json(path))


def read_guarding(path):
    return GuardingFile.from_json(_read_json(path))


# ---------------------------------------------------------------- commands

def _funnel(P, base):
    try:
        F = classify_funnel(P, base)
    except NotAFunnel as ex:
        raise PreconditionError(str(ex)) from None
    if F is None:
        raise PreconditionError("polygon is not a funnel")
    return F


def cmd_colour(args):
    P, base = read_polygon(args.input).polygon()
    if args.base is not None:
        base = args.base % P.n
    pieces = ()
    if args.mode == "funnel":
        F = _funnel(P, base)
        g = colour_funnel(F)
        stats = {"n": P.n, "guards": len(g.assignments), "base": F.base[0]}
        alg = "funnel-ruler"
    elif args.mode == "weakvis":
        e = 0 if base is None else base
        try:
            mf = max_funnels(P, e)
        except NotWeaklyVisible as ex:
            raise PreconditionError(str(ex)) from None
        g = colour_weak_visibility(P, e, mfs=mf)
        stats = {"n": P.n, "guards": len(g.assignments), "base": e, "max_funnels": mf.m}
        alg = "weak-visibility"
    else:
        e = 0 if base is None else base
        T = decompose(P, e)
        g = colour_simple_polygon(P, e, T)
        nodes = T.nodes()
        stats = {"n": P.n, "guards": len(g.assignments), "base": e, "pieces": len(nodes),
                 "forward": sum(v.kind is Kind.FORWARD for v in nodes)}
        pieces = [v.region.vertices for v in nodes]
        alg = "simple-polygon"
    _write_json(args.out, GuardingFile.of(g, alg, stats).to_json())
    if args.svg:
        write_svg(args.svg, P, g, pieces, title=args.mode)
    return EXIT_OK


def _report_json(r, P):
    doc = {"verdict": r.verdict}
    if r.witness is not None:
        if isinstance(r.witness, int):
            # vertex viewers report the viewer's index
            doc["witness_vertex"] = r.witness
            doc["witness"] = format_point(P[r.witness])
        else:
            doc["witness"] = format_point(r.witness)
        doc["witness_kind"] = r.witness_kind
        doc["visible_guards"] = list(r.visible or ())
    if r.stats:
        doc["stats"] = {k: v for k, v in r.stats.items()
                        if isinstance(v, (int, float, str, bool))}
    return doc


def cmd_verify(args):
    P, _ = read_polygon(args.polygon).polygon()
    g = read_guarding(args.guarding).guarding(P.n)
    if args.viewers == "vertices":
        r = v2v_verify(P, g)
    else:
        r = v2p_verify(P, g, exact_only=args.exact_only)
    _write_json(args.out, _report_json(r, P))
    return {OK: EXIT_OK, FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(
        r.verdict, EXIT_INCONCLUSIVE)


def cmd_gen(args):
    cfg = GenConfig(seed=args.seed, kind=args.kind, n=args.n, k=args.k, m=args.m,
                    spread=args.spread)
    P, base = generate(cfg)
    name = "%s-seed%d" % (args.kind, args.seed)
    _write_json(args.out, PolygonFile.of(P, base, name).to_json())
    return EXIT_OK


def cmd_gallery(args):
    if args.list or args.name is None:
        for name in GALLERY_IDS:
            print(name)
        return EXIT_OK
    P = gallery(args.name)
    base = gallery_base(args.name, P) if args.name in GALLERY_BASE else None
    _write_json(args.out, PolygonFile.of(P, base, args.name).to_json())
    return EXIT_OK


def tree_json(P, T):
    nodes = T.nodes()
    ids = {id(v): k for k, v in enumerate(nodes)}
    out = []
    for v in nodes:
        out.append({
            "id": ids[id(v)],
            "kind": v.kind.value,
            "side": v.side.value,
            "depth": v.depth,
            "parent": None if v.parent is None else ids[id(v.parent)],
            "children": [ids[id(c)] for c in v.children],
            "region": [format_point(p) for p in v.region.vertices],
            "polygon_vertices": [P.index_of(p) for p in v.region.vertices],
            "base_edge": v.base_edge,
            "chain": list(v.chain),
        })
    return {"e0": T.e0, "n": P.n, "nodes": out}


def cmd_decompose(args):
    P, base = read_polygon(args.input).polygon()
    e = args.base if args.base is not None else (0 if base is None else base)
    T = decompose(P, e % P.n)
    _write_json(args.out, tree_json(P, T))
    if args.svg:
        write_svg(args.svg, P, None, [v.region.vertices for v in T.nodes()], "decomposition")
    return EXIT_OK


def cmd_funnel_guards(args):
    P, base = read_polygon(args.input).polygon()
    if args.base is not None:
        base = args.base % P.n
    F = _funnel(P, base)
    a1, a2 = guard_funnel_simple(F), guard_funnel_optimal(F)
    _write_json(args.out, {"base": F.base[0], "apex": F.apex,
                           "simple": a1, "optimal": a2})
    return EXIT_OK


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, "%s: error: %s\n" % (self.prog, message))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--exact-only", action="store_true",
                        help="never fall back to sampling when the exact overlay is too large")
    p = _Parser(prog="cfguard", description="Conflict-free vertex guarding of polygons.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("colour", parents=[common], help="compute a coloured guarding")
    c.add_argument("input")
    c.add_argument("--mode", choices=("funnel", "weakvis", "simple"), default="simple")
    c.add_argument("--base", type=int, default=None, help="base edge index")
    c.add_argument("--out", default="-")
    c.add_argument("--svg", default=None)
    c.set_defaults(func=cmd_colour)

    v = sub.add_parser("verify", parents=[common], help="check a coloured guarding")
    v.add_argument("polygon")
    v.add_argument("guarding")
    v.add_argument("--viewers", choices=("points", "vertices"), default="points")
    v.add_argument("--out", default="-")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", parents=[common], help="random instance")
    g.add_argument("--kind", choices=("funnel", "deep", "weakvis", "simple"), default="simple")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=int, default=20)
    g.add_argument("--k", type=int, default=4)
    g.add_argument("--m", type=int, default=4)
    g.add_argument("--spread", type=int, default=1000)
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_gen)

    gl = sub.add_parser("gallery", parents=[common], help="polygons drawn after the figures")
    gl.add_argument("--name", choices=GALLERY_IDS)
    gl.add_argument("--list", action="store_true")
    gl.add_argument("--out", default="-")
    gl.set_defaults(func=cmd_gallery)

    d = sub.add_parser("decompose", parents=[common], help="dump the decomposition tree")
    d.add_argument("input")
    d.add_argument("--base", type=int, default=None)
    d.add_argument("--out", default="-")
    d.add_argument("--svg", default=None)
    d.set_defaults(func=cmd_decompose)

    f = sub.add_parser("funnel-guards", parents=[common],
                       help="raw guard sets of the two funnel guarding algorithms")
    f.add_argument("input")
    f.add_argument("--base", type=int, default=None)
    f.add_argument("--out", default="-")
    f.set_defaults(func=cmd_funnel_guards)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as ex:
        print("cfguard: %s" % ex, file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, DecompositionError, OverlayTooLarge) as ex:
        print("cfguard: %s" % ex, file=sys.stderr)
        return EXIT_PRECONDITION
    except (GeometryError, ValueError) as ex:
        print("cfguard: %s" % ex, file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
