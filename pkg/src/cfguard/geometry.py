"""Exact planar primitives, visibility and geodesics inside simple polygons.

Coordinates are gmpy2 rationals.  The heavy loops (one vertex against all
edges) run on numpy floats first and only fall back to exact arithmetic when
the float sign is not certified, so every answer is still exact.
"""

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
import heapq

import gmpy2
import numpy as np
from gmpy2 import mpq

Rational = type(mpq(0))
_ZERO = mpq(0)
_HALF = mpq(1, 2)

# relative bound for the float orientation filter; the true rounding error of
# the expression below is under 64 ulp * Mx * My, this is ~14x that
_FILTER = 1e-13


class GeometryError(ValueError):
    pass


class PolygonError(GeometryError):
    pass


class Orientation(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class Location(IntEnum):
    EXTERIOR = 0
    BOUNDARY = 1
    INTERIOR = 2


def to_rational(x):
    if isinstance(x, Rational):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            a, b = s.split("/")
            b = int(b)
            if b == 0:
                raise ValueError("zero denominator in %r" % x)
            return mpq(int(a), b)
        return mpq(int(s))
    if isinstance(x, float):
        return mpq(x)
    raise TypeError("cannot read %r as a rational" % (x,))


def to_point(p):
    return (to_rational(p[0]), to_rational(p[1]))


def fmt_rational(q):
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def vcross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def sign(x):
    return (x > 0) - (x < 0)


def orientation(p, q, r):
    return Orientation(sign(cross(p, q, r)))


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def lerp(a, b, t):
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def midpoint(a, b):
    return ((a[0] + b[0]) * _HALF, (a[1] + b[1]) * _HALF)


def on_segment(p, a, b):
    """p on the closed segment ab"""
    if cross(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def seg_param(a, b, p):
    """parameter of p along a->b (p assumed on the line)"""
    d = sub(b, a)
    return dot(sub(p, a), d) / dot(d, d)


def line_intersection(a, b, c, d):
    """Intersection point of lines ab and cd, None if parallel."""
    den = vcross(sub(b, a), sub(d, c))
    if den == 0:
        return None
    t = vcross(sub(c, a), sub(d, c)) / den
    return lerp(a, b, t)


def segment_intersection(a, b, c, d):
    """Closed segment intersection: None, a point, or a (p, q) overlap pair."""
    o1, o2 = sign(cross(a, b, c)), sign(cross(a, b, d))
    o3, o4 = sign(cross(c, d, a)), sign(cross(c, d, b))
    if o1 * o2 > 0 or o3 * o4 > 0:
        return None
    if o1 == 0 and o2 == 0:
        # collinear
        if a == b:
            return a if on_segment(a, c, d) else None
        tc, td = seg_param(a, b, c), seg_param(a, b, d)
        lo = max(_ZERO, min(tc, td))
        hi = min(mpq(1), max(tc, td))
        if lo > hi:
            return None
        p, q = lerp(a, b, lo), lerp(a, b, hi)
        return p if p == q else (p, q)
    return line_intersection(a, b, c, d)


def twice_area(pts):
    s = _ZERO
    n = len(pts)
    for i in range(n):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return s


def area(pts):
    return twice_area(pts) * _HALF


# ---------------------------------------------------------------- float filter

def _orient_f(ax, ay, bx, by, cx, cy):
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    mx = np.maximum(np.maximum(np.abs(ax), np.abs(bx)), np.abs(cx))
    my = np.maximum(np.maximum(np.abs(ay), np.abs(by)), np.abs(cy))
    thr = _FILTER * mx * my
    s = np.where(det > thr, 1, np.where(det < -thr, -1, 2)).astype(np.int8)
    return s


def _fix(s, exact):
    """Replace uncertain entries (2) using exact(idx_tuple)."""
    bad = np.argwhere(s == 2)
    for idx in bad:
        t = tuple(int(i) for i in idx)
        s[t] = exact(t)
    return s


def _fl(p):
    return float(p[0]), float(p[1])


# ---------------------------------------------------------------- polygon

class SimplePolygon:
    """Closed simple polygon, vertices stored counter-clockwise.

    ``tags`` is optional provenance for derived regions: for every vertex a
    pair (edge index of the host polygon, parameter along that edge).
    """

    def __init__(self, vertices, allow_degenerate=False, normalise=True,
                 validate=True, tags=None):
        pts = [to_point(v) for v in vertices]
        if len(pts) < 3:
            raise PolygonError("polygon needs at least 3 vertices")
        a2 = twice_area(pts)
        if a2 == 0:
            raise PolygonError("polygon has zero area")
        self.reversed = False
        if a2 < 0:
            if not normalise:
                raise PolygonError("vertices are clockwise")
            pts.reverse()
            self.reversed = True
            if tags is not None:
                tags = list(reversed(tags))
        self.vertices = tuple(pts)
        self.n = len(pts)
        self.allow_degenerate = allow_degenerate
        self.tags = tuple(tags) if tags is not None else None
        self._cache = {}
        if validate:
            _validate(self)

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return self.vertices[i % self.n]

    def __eq__(self, other):
        return isinstance(other, SimplePolygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "SimplePolygon(n=%d)" % self.n

    def edge(self, k):
        return self.vertices[k % self.n], self.vertices[(k + 1) % self.n]

    def area(self):
        return area(self.vertices)

    def index_of(self, p):
        idx = self._cache.get("index")
        if idx is None:
            idx = {v: i for i, v in enumerate(self.vertices)}
            self._cache["index"] = idx
        return idx.get(p)

    @property
    def fx(self):
        a = self._cache.get("fx")
        if a is None:
            a = np.array([float(p[0]) for p in self.vertices])
            self._cache["fx"] = a
            self._cache["fy"] = np.array([float(p[1]) for p in self.vertices])
        return a

    @property
    def fy(self):
        self.fx
        return self._cache["fy"]


def _validate(P):
    pts = P.vertices
    n = P.n
    if len(set(pts)) != n:
        raise PolygonError("repeated vertex")
    for i in range(n):
        o = cross(pts[i - 1], pts[i], pts[(i + 1) % n])
        if o == 0:
            back = dot(sub(pts[i], pts[i - 1]), sub(pts[(i + 1) % n], pts[i])) < 0
            if back or not P.allow_degenerate:
                raise PolygonError("collinear consecutive vertices at %d" % i)
    # non-adjacent edges must be disjoint
    fx, fy = P.fx, P.fy
    ax, ay = fx[:, None], fy[:, None]
    bx, by = np.roll(fx, -1)[:, None], np.roll(fy, -1)[:, None]
    cx, cy = fx[None, :], fy[None, :]
    s = _orient_f(ax, ay, bx, by, cx, cy)     # s[k, j] = orient(e_k, p_j)
    s = _fix(s, lambda t: sign(cross(pts[t[0]], pts[(t[0] + 1) % n], pts[t[1]])))
    s2 = np.roll(s, -1, axis=1)               # orient(e_k, p_{j+1})
    side = s * s2                             # edge j relative to line of e_k
    cand = (side <= 0) & (side.T <= 0)
    k, j = np.nonzero(np.triu(cand, 1))
    for a, b in zip(k.tolist(), j.tolist()):
        if b == a + 1 or (a == 0 and b == n - 1):
            continue
        if segment_intersection(*P.edge(a), *P.edge(b)) is not None:
            raise PolygonError("edges %d and %d intersect" % (a, b))


def polygon(vertices, **kw):
    return SimplePolygon(vertices, **kw)


def _region(points, tags, host):
    """Derived region: no re-validation, collinear vertices tolerated."""
    return SimplePolygon(points, allow_degenerate=True, normalise=False,
                         validate=False, tags=tags)


# ---------------------------------------------------------------- sign tables

def edge_point_signs(P):
    """E[k, j] = orient(P[k], P[k+1], P[j]), exact."""
    E = P._cache.get("E")
    if E is None:
        pts, n = P.vertices, P.n
        fx, fy = P.fx, P.fy
        E = _orient_f(fx[:, None], fy[:, None], np.roll(fx, -1)[:, None],
                      np.roll(fy, -1)[:, None], fx[None, :], fy[None, :])
        E = _fix(E, lambda t: sign(cross(pts[t[0]], pts[(t[0] + 1) % n], pts[t[1]])))
        P._cache["E"] = E
    return E


def line_signs(P, a, b):
    """orient(a, b, P[j]) for every vertex j, exact."""
    pts = P.vertices
    fa, fb = _fl(a), _fl(b)
    s = _orient_f(fa[0], fa[1], fb[0], fb[1], P.fx, P.fy)
    return _fix(s, lambda t: sign(cross(a, b, pts[t[0]])))


def edge_signs(P, c):
    """orient(P[k], P[k+1], c) for every edge k, exact."""
    pts, n = P.vertices, P.n
    fc = _fl(c)
    nxt = P._cache.get("next_f")
    if nxt is None:
        nxt = P._cache["next_f"] = (np.roll(P.fx, -1), np.roll(P.fy, -1))
    s = _orient_f(P.fx, P.fy, nxt[0], nxt[1], fc[0], fc[1])
    return _fix(s, lambda t: sign(cross(pts[t[0]], pts[(t[0] + 1) % n], c)))


def convexity(P):
    """sign of the turn at every vertex: 1 convex, -1 reflex, 0 straight."""
    c = P._cache.get("conv")
    if c is None:
        E = edge_point_signs(P)
        n = P.n
        c = np.array([E[(i - 1) % n, (i + 1) % n] for i in range(n)], dtype=np.int8)
        P._cache["conv"] = c
    return c


def is_reflex(P, i):
    return bool(convexity(P)[i % P.n] < 0)


def is_convex_vertex(P, i):
    return bool(convexity(P)[i % P.n] > 0)


# ---------------------------------------------------------------- location

def point_location_exact(P, p):
    pts, n = P.vertices, P.n
    inside = False
    x, y = p
    for k in range(n):
        a, b = pts[k], pts[(k + 1) % n]
        if on_segment(p, a, b):
            return Location.BOUNDARY
        if (a[1] > y) != (b[1] > y):
            o = cross(a, b, p)
            if (o > 0) == (b[1] > a[1]):
                inside = not inside
    return Location.INTERIOR if inside else Location.EXTERIOR


def point_location(P, p, es=None):
    """Crossing-number classification, exact.  es: edge_signs(P, p) if known."""
    p = to_point(p)
    pts, n = P.vertices, P.n
    if es is None:
        es = edge_signs(P, p)
    x, y = p
    fy = P.fy
    # boundary: collinear with an edge and inside its box
    for k in np.nonzero(es == 0)[0].tolist():
        a, b = pts[k], pts[(k + 1) % n]
        if (min(a[0], b[0]) <= x <= max(a[0], b[0])
                and min(a[1], b[1]) <= y <= max(a[1], b[1])):
            return Location.BOUNDARY
    yf = float(y)
    tol = _FILTER * (abs(yf) + np.abs(fy) + 1e-300)
    above = np.where(fy - yf > tol, 1, np.where(fy - yf < -tol, 0, 2)).astype(np.int8)
    for j in np.nonzero(above == 2)[0].tolist():
        above[j] = 1 if pts[j][1] > y else 0
    above1 = np.roll(above, -1)
    straddle = above != above1
    up = above1 > above
    crossing = straddle & ((es > 0) == up)
    return Location.INTERIOR if int(crossing.sum()) % 2 else Location.EXTERIOR


def contains(P, p):
    return point_location(P, p) != Location.EXTERIOR


# ---------------------------------------------------------------- wedges

def _in_wedge(e1, d, e2, strict):
    """d inside the ccw wedge from e1 to e2 (interior-angle wedge)."""
    c12 = vcross(e1, e2)
    a, b = vcross(e1, d), vcross(d, e2)
    if c12 > 0:
        return (a > 0 and b > 0) if strict else (a >= 0 and b >= 0 and not _opposite(d, e1) and not _opposite(d, e2))
    if c12 < 0:
        # reflex: complement of the convex wedge from e2 to e1
        if strict:
            return not (-b >= 0 and -a >= 0 and not (vcross(e2, d) == 0 and dot(e2, d) < 0)
                        and not (vcross(d, e1) == 0 and dot(d, e1) < 0))
        return not (-b > 0 and -a > 0)
    # straight angle (collinear neighbours)
    if dot(e1, e2) > 0:
        raise GeometryError("spike vertex")
    return a > 0 if strict else (a > 0 or (a == 0))


def _opposite(d, e):
    return vcross(d, e) == 0 and dot(d, e) < 0


def wedge_contains(P, i, d, strict=True):
    """Direction d at vertex i points into the polygon (strictly or closed)."""
    v = P[i]
    return _in_wedge(sub(P[i + 1], v), d, sub(P[i - 1], v), strict)


# ---------------------------------------------------------------- sees

def sees_exact(P, a, b):
    """Reference implementation of closed-set visibility (slow)."""
    a, b = to_point(a), to_point(b)
    if point_location_exact(P, a) == Location.EXTERIOR or \
            point_location_exact(P, b) == Location.EXTERIOR:
        raise GeometryError("point outside polygon")
    if a == b:
        return True
    ts = {_ZERO, mpq(1)}
    pts, n = P.vertices, P.n
    for k in range(n):
        c, d = pts[k], pts[(k + 1) % n]
        x = segment_intersection(a, b, c, d)
        if x is None:
            continue
        if isinstance(x[0], tuple):
            ts.add(seg_param(a, b, x[0]))
            ts.add(seg_param(a, b, x[1]))
            continue
        o1, o2 = sign(cross(a, b, c)), sign(cross(a, b, d))
        o3, o4 = sign(cross(c, d, a)), sign(cross(c, d, b))
        if o1 * o2 < 0 and o3 * o4 < 0:
            return False
        ts.add(seg_param(a, b, x))
    ts = sorted(ts)
    for t0, t1 in zip(ts, ts[1:]):
        m = lerp(a, b, (t0 + t1) * _HALF)
        if point_location_exact(P, m) == Location.EXTERIOR:
            return False
    return True


def sees(P, a, b):
    """True iff the closed segment ab lies in P (grazing allowed)."""
    a, b = to_point(a), to_point(b)
    ea = edge_signs(P, a)
    eb = edge_signs(P, b)
    if (point_location(P, a, ea) == Location.EXTERIOR
            or point_location(P, b, eb) == Location.EXTERIOR):
        raise GeometryError("point outside polygon")
    if a == b:
        return True
    pts, n = P.vertices, P.n
    ls = line_signs(P, a, b)
    ls1 = np.roll(ls, -1)
    prod1 = ls * ls1
    prod2 = ea * eb
    if np.any((prod1 < 0) & (prod2 < 0)):
        return False
    touch = ~((prod1 > 0) | (prod2 > 0))
    ts = {_ZERO, mpq(1)}
    overlap = False
    for k in np.nonzero(touch)[0].tolist():
        x = segment_intersection(a, b, pts[k], pts[(k + 1) % n])
        if x is None:
            continue
        if isinstance(x[0], tuple):
            overlap = True
            ts.add(seg_param(a, b, x[0]))
            ts.add(seg_param(a, b, x[1]))
        else:
            ts.add(seg_param(a, b, x))
    ts = sorted(ts)
    if len(ts) == 2 and not overlap:
        ia, ib = P.index_of(a), P.index_of(b)
        if ia is not None:
            return wedge_contains(P, ia, sub(b, a), strict=True)
        if ib is not None:
            return wedge_contains(P, ib, sub(a, b), strict=True)
    for t0, t1 in zip(ts, ts[1:]):
        if point_location(P, lerp(a, b, (t0 + t1) * _HALF)) == Location.EXTERIOR:
            return False
    return True


def visible_vertices(P, i):
    """Boolean array: which vertices the vertex i sees."""
    cache = P._cache.setdefault("rows", {})
    row = cache.get(i)
    if row is not None:
        return row
    pts, n = P.vertices, P.n
    E = edge_point_signs(P)
    fx, fy = P.fx, P.fy
    pi = pts[i]
    O = _orient_f(fx[i], fy[i], fx[:, None], fy[:, None], fx[None, :], fy[None, :])
    O = _fix(O, lambda t: sign(cross(pi, pts[t[0]], pts[t[1]])))   # O[j, m] = orient(pi, pj, pm)
    O1 = np.roll(O, -1, axis=1)
    idx = np.arange(n)
    ip, inx = (i - 1) % n, (i + 1) % n
    s3 = E[:, i][None, :]               # orient(e_k, pi)
    s4 = E.T                            # s4[j, k] = orient(e_k, pj)
    p1 = O * O1
    p2 = s3 * s4
    proper = (p1 < 0) & (p2 < 0)
    disjoint = (p1 > 0) | (p2 > 0)
    jj = idx[:, None]
    kk = idx[None, :]
    incident = (kk == ip) | (kk == i) | (kk == jj) | (kk == (jj - 1) % n)
    proper &= ~incident
    touch = ~disjoint & ~proper & ~incident
    # collinear overlap with edges at i or at j
    touch_any = touch.any(axis=1)
    touch_any |= (O[:, ip] == 0) | (O[:, inx] == 0)
    touch_any |= (O[idx, (idx - 1) % n] == 0) | (O[idx, (idx + 1) % n] == 0)
    blocked = proper.any(axis=1)
    conv = int(convexity(P)[i])
    a = E[i, :]            # cross(e1, d)
    b = O[:, ip]           # cross(d, e2)
    if conv > 0:
        inside = (a > 0) & (b > 0)
    elif conv < 0:
        inside = ~((b <= 0) & (a <= 0))
    else:
        inside = a > 0
    row = np.zeros(n, dtype=bool)
    for j in range(n):
        if j == i or j == ip or j == inx:
            row[j] = True
        elif blocked[j]:
            row[j] = False
        elif touch_any[j]:
            row[j] = sees(P, pi, pts[j])
        else:
            row[j] = bool(inside[j])
    cache[i] = row
    return row


def visibility_graph(P):
    """n x n boolean matrix, reflexive."""
    M = P._cache.get("vg")
    if M is None:
        M = np.array([visible_vertices(P, i) for i in range(P.n)])
        P._cache["vg"] = M
    return M


# ---------------------------------------------------------------- rays

def ray_exit(P, w, d, skip=()):
    """Walk from the boundary vertex w along direction d (pointing into P).

    Returns (point, edge index, parameter) of the first point where the ray
    leaves P.  Grazing contacts at reflex vertices are passed through.
    """
    pts, n = P.vertices, P.n
    far = (w[0] + d[0], w[1] + d[1])
    ls = line_signs(P, w, far)
    ls1 = np.roll(ls, -1)
    cand = np.nonzero(ls * ls1 <= 0)[0].tolist()
    dd = dot(d, d)
    events = []
    for k in cand:
        a, b = pts[k], pts[(k + 1) % n]
        if a == w or b == w:
            continue
        sa, sb = int(ls[k]), int(ls[(k + 1) % n])
        if sa == 0 and sb == 0:
            for j in (k, (k + 1) % n):
                t = dot(sub(pts[j], w), d) / dd
                if t > 0:
                    events.append((t, 1, j))
            continue
        if sa == 0:
            t = dot(sub(a, w), d) / dd
            if t > 0:
                events.append((t, 1, k))
            continue
        if sb == 0:
            t = dot(sub(b, w), d) / dd
            if t > 0:
                events.append((t, 1, (k + 1) % n))
            continue
        den = vcross(d, sub(b, a))
        t = vcross(sub(a, w), sub(b, a)) / den
        if t > 0:
            events.append((t, 0, k))
    events.sort(key=lambda e: (e[0], e[1]))
    for t, kind, k in events:
        if kind == 0:
            a, b = P.edge(k)
            p = (w[0] + d[0] * t, w[1] + d[1] * t)
            return p, k, seg_param(a, b, p)
        if not wedge_contains(P, k, d, strict=False):
            return pts[k], k, _ZERO
        # pass through (grazing or running along an edge)
    raise GeometryError("ray never leaves the polygon")


# ---------------------------------------------------------------- visibility polygons

def _boundary_key(start, n, k, t):
    return ((k - start) % n, t)


def _assemble(P, start, items):
    """items: dict boundary position (k, t) -> point; returns region polygon."""
    n = P.n
    keys = sorted(items, key=lambda kt: _boundary_key(start, n, kt[0], kt[1]))
    pts = [items[k] for k in keys]
    # drop exact duplicates that may arise from hits landing on vertices
    out, tags = [], []
    for k, p in zip(keys, pts):
        if out and out[-1] == p:
            continue
        out.append(p)
        tags.append(k)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
        tags.pop()
    return _region(out, tags, P)


def _add_hit(items, P, hit):
    p, k, t = hit
    if t == 0:
        items[(k, _ZERO)] = P[k]
    elif t == 1:
        items[((k + 1) % P.n, _ZERO)] = P[k + 1]
    else:
        items[(k, t)] = p


def visibility_polygon_vertex(P, v):
    """Region of all points of P visible from vertex v."""
    n = P.n
    v %= n
    row = visible_vertices(P, v)
    pv = P[v]
    items = {}
    for w in np.nonzero(row)[0].tolist():
        items[(w, _ZERO)] = P[w]
        if w == v:
            continue
        d = sub(P[w], pv)
        if wedge_contains(P, w, d, strict=True):
            _add_hit(items, P, ray_exit(P, P[w], d))
    return _assemble(P, v, items)


@dataclass
class ShortestPathTree:
    source: int
    parent: tuple
    length: tuple

    def path(self, w):
        """vertex indices from w back to the source"""
        out = [w]
        while self.parent[out[-1]] is not None:
            out.append(self.parent[out[-1]])
        return out


_CTX = gmpy2.context(precision=256)


def _length(a, b):
    with gmpy2.context(_CTX):
        return gmpy2.sqrt(gmpy2.mpfr(dot(sub(a, b), sub(a, b))))


def shortest_path_tree(P, s):
    """Geodesic tree from vertex s over the visibility graph.

    Lengths are 256-bit floats; a vertex lying exactly on the straight
    continuation of a geodesic becomes the parent (ties are resolved towards
    the nearest predecessor, which is exact by construction: ties only occur
    between collinear routes).
    """
    cache = P._cache.setdefault("spt", {})
    if s in cache:
        return cache[s]
    n = P.n
    s %= n
    G = visibility_graph(P)
    pts = P.vertices
    with gmpy2.context(_CTX):
        inf = gmpy2.mpfr("inf")
        dist = [inf] * n
        dist[s] = gmpy2.mpfr(0)
        done = [False] * n
        heap = [(dist[s], s)]
        while heap:
            dv, v = heapq.heappop(heap)
            if done[v]:
                continue
            done[v] = True
            for w in np.nonzero(G[v])[0].tolist():
                if done[w]:
                    continue
                nd = dv + _length(pts[v], pts[w])
                if nd < dist[w]:
                    dist[w] = nd
                    heapq.heappush(heap, (nd, w))
        tol = gmpy2.mpfr(2) ** -180
        parent = [None] * n
        for w in range(n):
            if w == s:
                continue
            best = None
            for a in np.nonzero(G[w])[0].tolist():
                if a == w:
                    continue
                if abs(dist[a] + _length(pts[a], pts[w]) - dist[w]) <= tol * (1 + dist[w]):
                    if best is None or dist[a] > dist[best]:
                        best = a
            parent[w] = best
    t = ShortestPathTree(s, tuple(parent), tuple(float(x) for x in dist))
    cache[s] = t
    return t


@dataclass
class PolyPath:
    points: tuple

    def __len__(self):
        return len(self.points)

    def length(self):
        return float(sum(_length(a, b) for a, b in zip(self.points, self.points[1:])))


def geodesic(P, a, b):
    """Euclidean shortest path inside P between two points."""
    a, b = to_point(a), to_point(b)
    for p in (a, b):
        if point_location(P, p) == Location.EXTERIOR:
            raise GeometryError("point outside polygon")
    ia, ib = P.index_of(a), P.index_of(b)
    if ia is not None and ib is not None:
        T = shortest_path_tree(P, ib)
        return PolyPath(tuple(P[i] for i in T.path(ia)))
    if sees(P, a, b):
        return PolyPath((a, b))
    # general points: Dijkstra over a, b and the vertices
    n = P.n
    G = visibility_graph(P)
    nodes = list(P.vertices) + [a, b]
    A, B = n, n + 1
    adj = {A: [], B: []}
    for j in range(n):
        if sees(P, a, P[j]):
            adj[A].append(j)
        if sees(P, b, P[j]):
            adj[B].append(j)
    with gmpy2.context(_CTX):
        dist = {A: gmpy2.mpfr(0)}
        prev = {}
        heap = [(dist[A], A)]
        seen = set()
        while heap:
            dv, v = heapq.heappop(heap)
            if v in seen:
                continue
            seen.add(v)
            if v == B:
                break
            if v == A:
                nbrs = adj[A]
            else:
                nbrs = np.nonzero(G[v])[0].tolist()
                if v in adj[B]:
                    nbrs = nbrs + [B]
            for w in nbrs:
                if w in seen or w == v:
                    continue
                nd = dv + _length(nodes[v], nodes[w])
                if w not in dist or nd < dist[w]:
                    dist[w] = nd
                    prev[w] = v
                    heapq.heappush(heap, (nd, w))
    if B not in prev:
        raise GeometryError("no path")
    out = [B]
    while out[-1] != A:
        out.append(prev[out[-1]])
    return PolyPath(tuple(nodes[i] for i in reversed(out)))


def _weakly_sees_vertex(P, e, w, Tp, Tq):
    """Vertex w sees some point of edge e=(p, q)."""
    p, q = e, (e + 1) % P.n
    if w in (p, q):
        return True
    path_p = Tp.path(w)
    path_q = Tq.path(w)
    # common prefix starting at w
    k = 0
    while k + 1 < len(path_p) and k + 1 < len(path_q) and path_p[k + 1] == path_q[k + 1]:
        k += 1
    pts = P.vertices
    for j in range(1, k):
        if cross(pts[path_p[0]], pts[path_p[j]], pts[path_p[j + 1]]) != 0:
            return False
        if dot(sub(pts[path_p[j]], pts[path_p[0]]), sub(pts[path_p[j + 1]], pts[path_p[j]])) <= 0:
            return False
    if k == 0:
        return True
    a = path_p[k]
    if a in (p, q):
        return True
    d = sub(pts[a], pts[w])
    u1 = sub(pts[path_p[k + 1]], pts[a])
    u2 = sub(pts[path_q[k + 1]], pts[a])
    s = sign(vcross(u1, u2))
    c1, c2 = sign(vcross(u1, d)), sign(vcross(d, u2))
    if s > 0:
        return c1 >= 0 and c2 >= 0
    if s < 0:
        return c1 <= 0 and c2 <= 0
    return c1 == 0 and dot(u1, d) > 0


def weakly_visible_vertices(P, e):
    e %= P.n
    Tp = shortest_path_tree(P, e)
    Tq = shortest_path_tree(P, (e + 1) % P.n)
    return [_weakly_sees_vertex(P, e, w, Tp, Tq) for w in range(P.n)]


def visibility_polygon_edge(P, e):
    """Weak visibility region of edge e = (P[e], P[e+1])."""
    n = P.n
    e %= n
    p, q = e, (e + 1) % n
    Tp = shortest_path_tree(P, p)
    Tq = shortest_path_tree(P, q)
    pts = P.vertices
    items = {}
    for w in range(n):
        if not _weakly_sees_vertex(P, e, w, Tp, Tq):
            continue
        items[(w, _ZERO)] = pts[w]
        if w in (p, q):
            continue
        dirs = []
        for T in (Tp, Tq):
            dirs.append(sub(pts[w], pts[T.parent[w]]))
        for idx, d in enumerate(dirs):
            if not wedge_contains(P, w, d, strict=True):
                continue
            other = dirs[1 - idx]
            # the pocket lies on the side of the boundary at w
            nb = None
            for j in (w - 1, w + 1):
                s = sign(vcross(d, sub(P[j], pts[w])))
                if s != 0:
                    nb = s
                    break
            so = sign(vcross(d, other))
            if so != 0 and so == nb:
                continue
            _add_hit(items, P, ray_exit(P, pts[w], d))
    return _assemble(P, q, items)


def boundary_position(P, x):
    """(edge index, parameter) of a boundary point x; vertices get t = 0."""
    x = to_point(x)
    i = P.index_of(x)
    if i is not None:
        return i, _ZERO
    es = edge_signs(P, x)
    for k in np.nonzero(es == 0)[0].tolist():
        a, b = P.edge(k)
        if on_segment(x, a, b):
            return k, seg_param(a, b, x)
    raise GeometryError("point not on boundary")


def is_weakly_visible(P, e):
    """True iff every point of P sees some point of edge e."""
    W = visibility_polygon_edge(P, e)
    return W.n == P.n and set(W.vertices) == set(P.vertices)
