"""Decomposition of a simple polygon into weak visibility pieces, and the
recursive three-palette colouring on top of it.

Pieces are either ORDINARY (visibility polygon of a cut whose ends are both
polygon vertices) or FORWARD (a cut with an end inside an edge: the piece is
bounded by the cut and the geodesic between the two vertices next to it, and
its children hang off that geodesic).
"""

from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .funnels import ColouredGuarding, ruler
from .geometry import (
    GeometryError, Location, SimplePolygon, area, boundary_position, cross,
    midpoint, point_location, shortest_path_tree, visibility_polygon_edge,
)
from .weakvis import colour_weak_visibility, log2_ceil, max_funnels, palette_bound


class Kind(Enum):
    ORDINARY = "ordinary"
    FORWARD = "forward"


class Side(Enum):
    ROOT = "root"
    LEFT = "left"
    RIGHT = "right"


class DecompositionError(GeometryError):
    pass


@dataclass(eq=False)
class DecompNode:
    kind: Kind
    region: SimplePolygon
    base_edge: int                   # region edge index of the base (region on its left)
    chain: tuple = ()                # FORWARD: polygon indices of the geodesic, in ring order
    children: list = field(default_factory=list)
    side: Side = Side.ROOT
    parent: "DecompNode" = None
    cut: tuple = None                # the parent's edge (s, t) this node hangs off
    depth: int = 0

    @property
    def base(self):
        return self.region.edge(self.base_edge)


@dataclass
class DecompTree:
    polygon: SimplePolygon
    root: DecompNode
    e0: int

    def nodes(self):
        """BFS order."""
        out, q = [], deque([self.root])
        while q:
            v = q.popleft()
            out.append(v)
            q.extend(v.children)
        return out

    def total_area(self):
        return sum(v.region.area() for v in self.nodes())


def _poly(ring):
    return SimplePolygon(ring, allow_degenerate=True, normalise=False)


def _on_boundary(P, a, b):
    return point_location(P, midpoint(a, b)) == Location.BOUNDARY


def _pocket_ring(P, s, t):
    """s, the boundary of P counter-clockwise from s to t, then t."""
    ks, ts = boundary_position(P, s)
    kt, tt = boundary_position(P, t)
    n = P.n
    ring = [s]
    j = (ks + 1) % n
    # walk vertices strictly after s and strictly before t
    while True:
        if j == kt and tt == 0:
            break
        ring.append(P[j])
        if j == kt:
            break
        j = (j + 1) % n
        if len(ring) > n + 2:
            raise DecompositionError("pocket walk did not terminate")
    ring.append(t)
    return ring


def _side(W, s, t):
    """LEFT/RIGHT for the piece beyond W's edge s -> t."""
    b0, b1 = W.base
    bx, by = b1[0] - b0[0], b1[1] - b0[1]
    ys = -by * s[0] + bx * s[1]
    yt = -by * t[0] + bx * t[1]
    if ys == yt:
        raise DecompositionError("cut edge is parallel to the base")
    # child lies right of s->t; with s->t pointing down it is left of the upward line
    return Side.LEFT if yt < ys else Side.RIGHT


def classify_side(W, child):
    if child.cut is None or child.parent is not W:
        raise DecompositionError("node is not a child of W")
    if W.kind is Kind.FORWARD:
        return W.side
    return _side(W, *child.cut)


def _ordinary(H, base_edge):
    R = visibility_polygon_edge(H, base_edge)
    # the region starts at the far end of the base; find the base again
    a, b = H.edge(base_edge)
    for k in range(R.n):
        if R[k] == a and R[k + 1] == b:
            return R, k
    raise DecompositionError("base edge lost in visibility region")


def _forward(P, H):
    """H: pocket ring polygon whose last edge is the base chord t -> s."""
    base = H.n - 1
    U, eb = _ordinary(H, base)
    t, s = U.edge(eb)
    x = U[eb - 1]            # before t
    y = U[eb + 2]            # after s
    ix, iy = P.index_of(x), P.index_of(y)
    if ix is None or iy is None:
        raise DecompositionError("vertices next to a forward cut are not polygon vertices")
    ux, uy = U.index_of(x), U.index_of(y)
    path = shortest_path_tree(U, uy).path(ux)       # x ... y
    chain = [U[k] for k in reversed(path)]          # y ... x
    idx = []
    for p in chain:
        i = P.index_of(p)
        if i is None:
            raise DecompositionError("geodesic turns at a non-vertex %r" % (p,))
        idx.append(i)
    ring = [t, s] + chain
    return _poly(ring), 0, tuple(idx)


def decompose(P, e0=0):
    """Hierarchical decomposition from edge e0 (BFS construction order)."""
    e0 %= P.n
    R, k = _ordinary(P, e0)
    root = DecompNode(Kind.ORDINARY, R, k)
    q = deque([root])
    while q:
        W = q.popleft()
        if W.kind is Kind.ORDINARY:
            cuts = [(W.region[k], W.region[k + 1]) for k in range(W.region.n)
                    if k != W.base_edge]
        else:
            ring = W.region.vertices
            cuts = [(ring[k], ring[k + 1]) for k in range(1, W.region.n - 1)]
        for s, t in cuts:
            if _on_boundary(P, s, t):
                continue
            H = _poly(_pocket_ring(P, s, t))
            side = W.side if W.kind is Kind.FORWARD else _side(W, s, t)
            if W.kind is Kind.FORWARD or (P.index_of(s) is not None
                                          and P.index_of(t) is not None):
                R, k = _ordinary(H, H.n - 1)
                child = DecompNode(Kind.ORDINARY, R, k, side=side, parent=W, cut=(s, t),
                                   depth=W.depth + 1)
            else:
                U1, k, chain = _forward(P, H)
                child = DecompNode(Kind.FORWARD, U1, k, chain, side=side, parent=W,
                                   cut=(s, t), depth=W.depth + 1)
            W.children.append(child)
            q.append(child)
    tree = DecompTree(P, root, e0)
    if tree.total_area() != P.area():
        raise DecompositionError("pieces do not cover the polygon exactly")
    return tree


# ---------------------------------------------------------------- invariants

def check_node(P, v):
    """Structural claims for one piece; returns a list of problems (empty = fine)."""
    bad = []
    R = v.region
    if v.kind is Kind.FORWARD:
        ring = R.vertices
        chain = ring[2:]
        if any(P.index_of(p) is None for p in chain):
            bad.append("forward chain has a non-vertex")
        for a, b, c in zip(chain, chain[1:], chain[2:]):
            if cross(a, b, c) > 0:
                bad.append("forward chain is not concave at %r" % (b,))
    else:
        a, b = v.base
        if v.parent is not None and (P.index_of(a) is None or P.index_of(b) is None):
            bad.append("ordinary base end is not a vertex")
        extra = [k for k in range(R.n) if P.index_of(R[k]) is None]
        if extra:
            apices = set(max_funnels(R, v.base_edge).apices)
            for k in extra:
                if k not in apices:
                    bad.append("non-vertex %r is not a max funnel apex" % (R[k],))
    return bad


# ---------------------------------------------------------------- colouring

@dataclass
class Palette:
    C: int          # size of A (weak visibility colours)
    B: int          # size of B (chain colours)

    def offset(self, c):
        return (c - 1) * (self.C + self.B)

    @property
    def total(self):
        return 3 * (self.C + self.B)


def _plan_palette(P, tree):
    n = P.n
    C = 0
    Bneed = 1
    for v in tree.nodes():
        if v.kind is Kind.ORDINARY:
            v._mfs = max_funnels(v.region, v.base_edge)
            C = max(C, palette_bound(n, v._mfs.m))
        else:
            Bneed = max(Bneed, max(ruler(i) for i in range(1, len(v.chain) + 1)))
    return Palette(C, max((n.bit_length() - 1), Bneed))


def colour_simple_polygon(P, e0=0, tree=None):
    """Conflict-free vertex guarding of a simple polygon with three palette copies."""
    if tree is None:
        tree = decompose(P, e0)
    pal = _plan_palette(P, tree)
    n = P.n
    out = {}

    def rec(v, c):
        if v.kind is Kind.FORWARD:
            for ch in v.children:
                rec(ch, c)
            base = pal.offset(c) + pal.C
            for i, g in enumerate(v.chain, 1):
                out[g] = base + ruler(i)
            return
        a, b = [k for k in (1, 2, 3) if k != c]
        for ch in v.children:
            rec(ch, a if ch.side is Side.LEFT else b)
        g = colour_weak_visibility(v.region, v.base_edge, n_global=n,
                                   offset=pal.offset(c), mfs=v._mfs)
        for k, col in g.assignments.items():
            i = P.index_of(v.region[k])
            if i is None:
                raise DecompositionError("guard on a non-vertex")
            out[i] = col

    rec(tree.root, 1)
    palette = tuple(range(1, pal.total + 1))
    return ColouredGuarding(out, palette)


def colour_bound(n, C):
    """3 (C + floor(log2 n))"""
    return 3 * (C + n.bit_length() - 1)
