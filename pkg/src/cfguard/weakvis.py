"""Max funnels of a weak visibility polygon and their two-level ruler colouring.

Every vertex w of a polygon weakly visible from its base u->v spans a funnel
whose chains are the geodesics w->u and w->v.  The inclusion-maximal ones are
the max funnels; they get colour sets by the ruler sequence in left-to-right
order, and inside a funnel each chain is ruler-coloured from its own half set.
"""

from dataclasses import dataclass, field

from .funnels import ColouredGuarding, Funnel, funnel_from_chains, ruler
from .geometry import (
    GeometryError, SimplePolygon, cross, is_weakly_visible, shortest_path_tree,
    twice_area,
)

__all__ = [
    "ColourSet", "MaxFunnelSet", "NotWeaklyVisible", "colour_weak_visibility",
    "is_weakly_visible", "log2_ceil", "max_funnels", "palette_bound",
]


class NotWeaklyVisible(GeometryError):
    pass


def log2_ceil(n):
    return max(1, (n - 1).bit_length())


@dataclass
class ColourSet:
    j: int
    left: tuple
    right: tuple

    @property
    def colours(self):
        return self.left + self.right


def colour_set(j, K, offset=0):
    """The j-th colour set (1-based) with halves of K colours each."""
    base = offset + (j - 1) * 2 * K
    return ColourSet(j, tuple(range(base + 1, base + K + 1)),
                     tuple(range(base + K + 1, base + 2 * K + 1)))


@dataclass
class MaxFunnelSet:
    polygon: SimplePolygon
    base: tuple                    # (u, v) vertex indices, P[u] -> P[v] is the base edge
    funnels: list                  # Funnel objects, host maps back into polygon
    apices: list                   # polygon index of each apex, left to right
    chains: list                   # (left chain, right chain) in polygon indices, bottom-up
    membership: dict = field(default_factory=dict)   # vertex -> funnel positions (0-based)
    association: dict = field(default_factory=dict)  # vertex -> funnel position

    @property
    def m(self):
        return len(self.funnels)

    def set_index(self, i):
        """Colour-set index of the funnel at 0-based position i."""
        return ruler(i + 1)


def max_funnels(P, e):
    """Max funnels of P over the base edge e, ordered left to right."""
    n = P.n
    e %= n
    if not is_weakly_visible(P, e):
        raise NotWeaklyVisible("polygon is not weakly visible from edge %d" % e)
    u, v = e, (e + 1) % n
    Tu = shortest_path_tree(P, u)
    Tv = shortest_path_tree(P, v)
    paths = {}
    sets = {}
    for w in range(n):
        if w in (u, v):
            continue
        pu, pv = Tu.path(w), Tv.path(w)
        paths[w] = (pu, pv)
        sets[w] = frozenset(pu) | frozenset(pv)
    if not sets:
        raise GeometryError("degenerate base")
    # inclusion-maximal vertex sets; equal sets arise when a vertex lies on the
    # straight continuation of another one's chain and the convex one is the apex
    cand = [w for w in sets if not any(sets[w] < sets[x] for x in sets if x != w)]
    groups = {}
    for w in cand:
        groups.setdefault(sets[w], []).append(w)
    apices = []
    for S, ws in groups.items():
        good = []
        for w in ws:
            a, b = paths[w][0][1], paths[w][1][1]
            # funnel polygon runs u, v, ..., b, w, a, ...; apex must not be reflex
            if cross(P[b], P[w], P[a]) >= 0:
                good.append(w)
        if len(good) != 1:
            raise GeometryError("ambiguous max funnel apex among %r" % (ws,))
        apices.append(good[0])
    # clockwise from u = decreasing polygon index starting at u
    apices.sort(key=lambda w: (u - w) % n)

    funnels, chains = [], []
    membership = {}
    for i, w in enumerate(apices):
        pu, pv = paths[w]
        left = list(reversed(pu))           # u ... w
        right = list(reversed(pv))          # v ... w
        chains.append((tuple(left), tuple(right)))
        ring = [u] + right + list(reversed(left[1:-1]))
        L = [0] + [len(ring) - k for k in range(1, len(left) - 1)] + [len(right)]
        R = list(range(1, len(right) + 1))
        pts = [P[k] for k in ring]
        if len(set(pts)) < len(pts) or twice_area(pts) == 0:
            # the apex lies on the base line beyond u or v: a flat funnel, kept
            # for its chains only
            funnels.append(Funnel(None, tuple(L), tuple(R), L[-1], (0, 1), tuple(ring)))
        else:
            sub = SimplePolygon(pts, allow_degenerate=True, normalise=False,
                                validate=False)
            funnels.append(funnel_from_chains(sub, L, R, host=tuple(ring)))
        for k in set(left) | set(right):
            membership.setdefault(k, []).append(i)
    missing = [k for k in range(n) if k not in membership]
    if missing:
        raise GeometryError("vertices outside every max funnel: %r" % missing)
    assoc = {}
    for k, fs in membership.items():
        best = max(ruler(i + 1) for i in fs)
        top = [i for i in fs if ruler(i + 1) == best]
        if len(top) != 1:
            raise GeometryError("association of vertex %d is not unique: funnels %r"
                                % (k, fs))
        assoc[k] = top[0]
    return MaxFunnelSet(P, (u, v), funnels, apices, chains, membership, assoc)


def palette_bound(n, m):
    """2 ceil(log2 n) (1 + floor(log2 m))"""
    return 2 * log2_ceil(n) * m.bit_length()


def colour_weak_visibility(P, e, n_global=None, offset=0, mfs=None):
    """Conflict-free guarding of a polygon weakly visible from edge e.

    Colours are offset + 1 ... offset + palette_bound(n_global, m).  Chain
    vertices associated with a funnel are ruler-coloured bottom-up inside that
    funnel's half set; apices never get a guard.
    """
    if mfs is None:
        mfs = max_funnels(P, e)
    n = P.n if n_global is None else n_global
    K = log2_ceil(n)
    apex_set = set(mfs.apices)
    out = {}
    for i, (left, right) in enumerate(mfs.chains):
        cs = colour_set(mfs.set_index(i), K, offset)
        for half, chain in ((cs.left, left), (cs.right, right)):
            idx = 0
            for k in chain:
                if k in apex_set or mfs.association[k] != i:
                    continue
                idx += 1
                r = ruler(idx)
                if r > K:
                    raise GeometryError("chain too long for %d ruler colours" % K)
                out[k] = half[r - 1]
    ell = mfs.m.bit_length()
    palette = tuple(range(offset + 1, offset + 2 * K * ell + 1))
    return ColouredGuarding(out, palette)
