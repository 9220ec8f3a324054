"""Exact certificates for guardings and small brute-force oracles.

Point viewers are checked on an overlay arrangement: the edges of P and of
every guard's visibility polygon are split at all mutual intersections, faces
are traced, and each face gets the set of guards whose region contains it by
toggling across edges from the unbounded face.  Because visibility regions are
closed, edges and vertices of the overlay are checked too.
"""

from dataclasses import dataclass, field
from functools import cmp_to_key
from itertools import combinations
import os
import random

import numpy as np

from .funnels import ColouredGuarding
from .geometry import (
    GeometryError, Location, area, cross, dot, midpoint, mpq, point_location,
    seg_param, segment_intersection, sees, sub, to_point, twice_area, vcross,
    visibility_graph, visibility_polygon_vertex,
)

OK, FAIL, INCONCLUSIVE = "OK", "FAIL", "INCONCLUSIVE-SAMPLED"
UNKNOWN = "UNKNOWN"

__all__ = [
    "FAIL", "INCONCLUSIVE", "OK", "UNKNOWN", "OverlayTooLarge", "SearchResult",
    "VerificationReport", "VisibilityOverlay", "build_overlay", "cell_budget",
    "coverage_verify", "min_guards_bruteforce", "v2p_min_colours_bruteforce",
    "v2p_verify", "v2v_min_colours", "v2v_verify", "visibility_graph",
]


class OverlayTooLarge(GeometryError):
    pass


def cell_budget():
    return int(float(os.environ.get("CFGUARD_CELL_BUDGET", "5e6")))


@dataclass
class VerificationReport:
    verdict: str
    witness: object = None          # Point, or vertex index for vertex viewers
    witness_kind: str = None        # face / edge / vertex / point / viewer-vertex
    visible: tuple = ()             # guards visible from the witness
    census: dict = field(default_factory=dict)   # colour -> count at the witness
    stats: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.verdict == OK


# ---------------------------------------------------------------- overlay

def _half(d):
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def _angle_cmp(d1, d2):
    h1, h2 = _half(d1), _half(d2)
    if h1 != h2:
        return h1 - h2
    c = vcross(d1, d2)
    return -1 if c > 0 else (1 if c < 0 else 0)


@dataclass
class VisibilityOverlay:
    """Planar overlay of P with the visibility regions of a set of viewers."""
    polygon: object
    sources: tuple                  # vertex index of region bit k+1
    vertices: list                  # points
    edges: list                     # (a, b) canonical, a < b
    toggle: list                    # parity mask per edge
    owners: list                    # mask of regions whose boundary contains the edge
    faces: list                     # list of point cycles
    face_mask: list
    edge_faces: list                # (left face, right face) of a -> b
    outer: int

    def inside_faces(self):
        return [f for f, m in enumerate(self.face_mask) if m & 1]

    def edge_mask(self, k):
        lf, rf = self.edge_faces[k]
        return (self.face_mask[lf] | self.face_mask[rf] | self.owners[k]) >> 1

    def face_visible(self, f):
        return self.face_mask[f] >> 1

    def vertex_masks(self):
        out = {}
        for k, (a, b) in enumerate(self.edges):
            m = self.edge_mask(k)
            out[a] = out.get(a, 0) | m
            out[b] = out.get(b, 0) | m
        return out

    def cell_count(self):
        return len(self.vertices) + len(self.edges) + len(self.faces)

    def face_point(self, f):
        """A rational point strictly inside face f."""
        cyc = self.faces[f]
        segs = list(zip(cyc, cyc[1:] + cyc[:1]))
        for a, b in segs:
            if a == b:
                continue
            m = midpoint(a, b)
            d = sub(b, a)
            nrm = (-d[1], d[0])         # the face is on the left
            best = None
            for c, e in segs:
                den = vcross(nrm, sub(e, c))
                if den == 0:
                    continue
                t = vcross(sub(c, m), sub(e, c)) / den
                s = vcross(sub(c, m), nrm) / den
                if t > 0 and 0 <= s <= 1 and (best is None or t < best):
                    best = t
            if best is not None:
                p = (m[0] + nrm[0] * best / 2, m[1] + nrm[1] * best / 2)
                return p
        raise GeometryError("face without interior point")

    def face_area(self, f):
        return area(self.faces[f])


def _region_segments(P, sources):
    segs = []
    pts = P.vertices
    for k in range(P.n):
        segs.append((pts[k], pts[(k + 1) % P.n], 1))
    for j, g in enumerate(sources):
        V = visibility_polygon_vertex(P, g)
        bit = 1 << (j + 1)
        for k in range(V.n):
            a, b = V[k], V[k + 1]
            if a != b:
                segs.append((a, b, bit))
    return segs


def build_overlay(P, sources, budget=None):
    budget = cell_budget() if budget is None else budget
    segs = _region_segments(P, list(sources))
    S = len(segs)
    ax = np.array([float(s[0][0]) for s in segs])
    ay = np.array([float(s[0][1]) for s in segs])
    bx = np.array([float(s[1][0]) for s in segs])
    by = np.array([float(s[1][1]) for s in segs])
    lox, hix = np.minimum(ax, bx), np.maximum(ax, bx)
    loy, hiy = np.minimum(ay, by), np.maximum(ay, by)
    eps = 1e-9 * (1 + max(np.abs(ax).max(), np.abs(ay).max(), np.abs(bx).max(),
                          np.abs(by).max()))
    splits = [{s[0], s[1]} for s in segs]
    npts = 0
    for i in range(S):
        cand = np.nonzero((lox[i + 1:] <= hix[i] + eps) & (hix[i + 1:] >= lox[i] - eps)
                          & (loy[i + 1:] <= hiy[i] + eps) & (hiy[i + 1:] >= loy[i] - eps))[0]
        a, b, _ = segs[i]
        for j in (cand + i + 1).tolist():
            c, d, _ = segs[j]
            x = segment_intersection(a, b, c, d)
            if x is None:
                continue
            if isinstance(x[0], tuple):
                for p in x:
                    splits[i].add(p)
                    splits[j].add(p)
            else:
                splits[i].add(x)
                splits[j].add(x)
            npts += 1
        if npts > budget:
            raise OverlayTooLarge("overlay exceeds cell budget %d" % budget)
    edges = {}
    for (a, b, bit), sp in zip(segs, splits):
        ordered = sorted(sp, key=lambda p: seg_param(a, b, p))
        for p, q in zip(ordered, ordered[1:]):
            if p == q:
                continue
            key = (p, q) if p < q else (q, p)
            ent = edges.get(key)
            if ent is None:
                ent = edges[key] = [0, 0]
            ent[0] ^= bit
            ent[1] |= bit
    elist = list(edges)
    vset = {}
    adj = {}
    for a, b in elist:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if len(adj) + 2 * len(elist) > budget:
        raise OverlayTooLarge("overlay exceeds cell budget %d" % budget)
    for v, nb in adj.items():
        nb.sort(key=cmp_to_key(lambda p, q, v=v: _angle_cmp(sub(p, v), sub(q, v))))
        vset[v] = {w: i for i, w in enumerate(nb)}
    # trace faces: face on the left of each half-edge
    hface = {}
    faces = []
    for a, b in elist:
        for h in ((a, b), (b, a)):
            if h in hface:
                continue
            fid = len(faces)
            cyc = []
            u, v = h
            while (u, v) not in hface:
                hface[(u, v)] = fid
                cyc.append(u)
                nb = adj[v]
                w = nb[(vset[v][u] - 1) % len(nb)]
                u, v = v, w
            faces.append(cyc)
    fa = [twice_area(c) for c in faces]
    outer = [f for f, a2 in enumerate(fa) if a2 < 0]
    if len(outer) != 1:
        raise GeometryError("overlay is not connected (%d outer cycles)" % len(outer))
    outer = outer[0]
    eidx = {e: k for k, e in enumerate(elist)}
    edge_faces = [(hface[(a, b)], hface[(b, a)]) for a, b in elist]
    toggle = [edges[e][0] for e in elist]
    owners = [edges[e][1] for e in elist]
    fmask = [None] * len(faces)
    fmask[outer] = 0
    # faces adjacent through edges
    fadj = [[] for _ in faces]
    for k, (lf, rf) in enumerate(edge_faces):
        fadj[lf].append((rf, toggle[k]))
        fadj[rf].append((lf, toggle[k]))
    stack = [outer]
    while stack:
        f = stack.pop()
        for g, t in fadj[f]:
            m = fmask[f] ^ t
            if fmask[g] is None:
                fmask[g] = m
                stack.append(g)
            elif fmask[g] != m:
                raise GeometryError("inconsistent face labels")
    del eidx
    return VisibilityOverlay(P, tuple(sources), list(adj), elist, toggle, owners,
                             faces, fmask, edge_faces, outer)


# ---------------------------------------------------------------- verdicts

def _unique_colour(colours):
    cnt = {}
    for c in colours:
        cnt[c] = cnt.get(c, 0) + 1
    return any(v == 1 for v in cnt.values()), cnt


def _mask_guards(mask, sources):
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(sources[k])
        mask >>= 1
        k += 1
    return out


def _census(g, visible):
    cnt = {}
    for v in visible:
        c = g.assignments[v]
        cnt[c] = cnt.get(c, 0) + 1
    return cnt


def _recheck_point(P, g, pt, want_ok_fn):
    vis = [v for v in g.guards if sees(P, P[v], pt)]
    return vis, want_ok_fn(vis)


def _cells(ov):
    """Yield (kind, visible mask, locator) for every cell inside P."""
    for f in ov.inside_faces():
        yield "face", ov.face_visible(f), f
    for k in range(len(ov.edges)):
        lf, rf = ov.edge_faces[k]
        if (ov.face_mask[lf] | ov.face_mask[rf]) & 1:
            yield "edge", ov.edge_mask(k), k
    for v, m in ov.vertex_masks().items():
        yield "vertex", m, v


def _locate(ov, kind, ref):
    if kind == "face":
        return ov.face_point(ref)
    if kind == "edge":
        return midpoint(*ov.edges[ref])
    return ref


def _exact_check(P, g, good, spot=24, seed=0):
    guards = g.guards
    ov = build_overlay(P, guards)
    tot = sum(ov.face_area(f) for f in ov.inside_faces())
    if tot != P.area():
        raise GeometryError("overlay faces do not tile the polygon")
    cache = {}
    stats = {"faces": len(ov.faces), "edges": len(ov.edges), "vertices": len(ov.vertices)}
    rng = random.Random(seed)
    faces = ov.inside_faces()
    for f in rng.sample(faces, min(spot, len(faces))):
        pt = ov.face_point(f)
        vis = set(v for v in guards if sees(P, P[v], pt))
        if vis != set(_mask_guards(ov.face_visible(f), ov.sources)):
            raise GeometryError("overlay disagrees with direct visibility at %r" % (pt,))
    for kind, m, ref in _cells(ov):
        r = cache.get(m)
        if r is None:
            r = cache[m] = good([g.assignments[v] for v in _mask_guards(m, ov.sources)])
        if r:
            continue
        pt = _locate(ov, kind, ref)
        vis, ok = _recheck_point(P, g, pt, lambda vs: good([g.assignments[v] for v in vs]))
        if ok:
            raise GeometryError("witness %r does not recheck" % (pt,))
        return VerificationReport(FAIL, pt, kind, tuple(vis), _census(g, vis), stats)
    return VerificationReport(OK, stats=stats)


def _sample_point(P, rng):
    xs = [p[0] for p in P.vertices]
    ys = [p[1] for p in P.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    while True:
        p = (x0 + (x1 - x0) * mpq(rng.randrange(1 << 20), 1 << 20),
             y0 + (y1 - y0) * mpq(rng.randrange(1 << 20), 1 << 20))
        if point_location(P, p) != Location.EXTERIOR:
            return p


def _sampled_check(P, g, good, samples=2000, seed=0):
    rng = random.Random(seed)
    pts = list(P.vertices) + [midpoint(*P.edge(k)) for k in range(P.n)]
    pts += [_sample_point(P, rng) for _ in range(samples)]
    for pt in pts:
        vis = [v for v in g.guards if sees(P, P[v], pt)]
        if not good([g.assignments[v] for v in vis]):
            return VerificationReport(FAIL, pt, "point", tuple(vis), _census(g, vis),
                                      {"samples": len(pts)})
    return VerificationReport(INCONCLUSIVE, stats={"samples": len(pts)})


def _guarded(P, g, good, exact_only):
    if not g.assignments:
        pt = P[0]
        return VerificationReport(FAIL, pt, "vertex", (), {})
    try:
        return _exact_check(P, g, good)
    except OverlayTooLarge:
        if exact_only:
            raise
        return _sampled_check(P, g, good)


def _conflict_free(colours):
    return _unique_colour(colours)[0]


def v2p_verify(P, g, exact_only=False):
    """Every point of P sees a guard whose colour is unique among the guards it sees."""
    return _guarded(P, g, _conflict_free, exact_only)


def coverage_verify(P, guards, exact_only=False):
    """Every point of P sees at least one guard."""
    g = ColouredGuarding({v % P.n: 1 for v in guards}, (1,))
    return _guarded(P, g, lambda cs: len(cs) > 0, exact_only)


def v2v_verify(P, g):
    """Every vertex sees (closed neighbourhood) a uniquely coloured guard."""
    G = visibility_graph(P)
    for v in range(P.n):
        vis = [w for w in g.guards if G[v][w]]
        ok, cnt = _unique_colour([g.assignments[w] for w in vis])
        if not ok:
            return VerificationReport(FAIL, v, "viewer-vertex", tuple(vis), cnt)
    return VerificationReport(OK)


# ---------------------------------------------------------------- search

@dataclass
class SearchResult:
    value: object                    # int, or UNKNOWN
    colouring: ColouredGuarding = None
    nodes: int = 0


def _solve_cf(nvars, cons, c, budget, fixed=None, order=None):
    """Backtracking over values {0 = no guard, 1..c} so that every constraint
    (a set of variables) has some colour used exactly once.

    Returns (assignment or None, nodes, exhausted).  A constraint is alive while
    some colour has count 1, or count 0 with an undecided variable left; an
    assignment that kills a constraint is undone at once.  Colours are opened
    in order (symmetry breaking).  When the undecided variables fall apart
    into groups that share no constraint, each group is solved on its own and
    the outcome is memoised on the state of the constraints it touches.
    """
    fixed = fixed or {}
    var_cons = [[] for _ in range(nvars)]
    for ci, S in enumerate(cons):
        for x in S:
            var_cons[x].append(ci)
    if order is None:
        order = sorted(range(nvars), key=lambda x: -len(var_cons[x]))
    order = [x for x in order if x not in fixed]
    pos = {x: i for i, x in enumerate(order)}
    vnb = [0] * nvars
    for S in cons:
        m = 0
        for x in S:
            m |= 1 << x
        for x in S:
            vnb[x] |= m
    cnt = [[0] * (c + 1) for _ in cons]
    free = [len(S) for S in cons]
    val = [None] * nvars
    nodes = [0]
    trail = []
    cache = {}

    def alive(ci):
        row = cnt[ci]
        if free[ci] > 0:
            return any(row[k] <= 1 for k in range(1, c + 1))
        return any(row[k] == 1 for k in range(1, c + 1))

    def assign(x, a):
        val[x] = a
        ok = True
        for ci in var_cons[x]:
            free[ci] -= 1
            cnt[ci][a] += 1
            if ok and not alive(ci):
                ok = False
        return ok

    def undo(x):
        a = val[x]
        for ci in var_cons[x]:
            free[ci] += 1
            cnt[ci][a] -= 1
        val[x] = None

    def unwind(mark):
        while len(trail) > mark:
            undo(trail.pop())

    for x, a in fixed.items():
        if not assign(x, a):
            return None, 0, False
    top = max([0] + list(fixed.values()))

    def bits(m):
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def split(mask):
        comps = []
        while mask:
            low = mask & -mask
            comp, front = low, low
            while front:
                grow = 0
                for y in bits(front):
                    grow |= vnb[y]
                front = grow & mask & ~comp
                comp |= front
            comps.append(comp)
            mask &= ~comp
        return comps

    def first(mask):
        return min(bits(mask), key=pos.__getitem__)

    def solve(mask, used):
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Budget()
        if not mask:
            return True, used
        comps = split(mask)
        if len(comps) > 1:
            mark = len(trail)
            comps.sort(key=lambda m: pos[first(m)])
            for comp in comps:
                ok, used = solve_group(comp, used)
                if not ok:
                    unwind(mark)
                    return False, used
            return True, used
        x = first(mask)
        rest = mask & ~(1 << x)
        for a in range(0, min(c, used + 1) + 1):
            if assign(x, a):
                trail.append(x)
                ok, u = solve(rest, max(used, a))
                if ok:
                    return True, u
                trail.pop()
            undo(x)
        return False, used

    def solve_group(comp, used):
        touched = sorted({ci for x in bits(comp) for ci in var_cons[x]})
        # free counts are fixed by comp; counts above 2 behave like 2
        key = (comp, used, tuple(min(k, 2) for ci in touched for k in cnt[ci][1:]))
        hit = cache.get(key, False)
        if hit is None:
            return False, used
        if hit is not False:
            sol, u = hit
            for x, a in sol:
                assign(x, a)
                trail.append(x)
            return True, u
        mark = len(trail)
        ok, u = solve(comp, used)
        if ok:
            cache[key] = (tuple((x, val[x]) for x in trail[mark:]), u)
        else:
            cache[key] = None
        return ok, u

    mask0 = 0
    for x in order:
        mask0 |= 1 << x
    try:
        found, _ = solve(mask0, top)
    except _Budget:
        return None, nodes[0], True
    return (list(val) if found else None), nodes[0], False


class _Budget(Exception):
    pass


def v2v_min_colours(P, c_max, budget=10 ** 7, fixed=None):
    """Smallest c <= c_max with a conflict-free V2V colouring (UNKNOWN on budget)."""
    G = visibility_graph(P)
    cons = [tuple(np.nonzero(G[v])[0].tolist()) for v in range(P.n)]
    order = sorted(range(P.n), key=lambda x: -len(cons[x]))
    total = 0
    for c in range(1, c_max + 1):
        sol, nodes, exhausted = _solve_cf(P.n, cons, c, budget - total, fixed, order)
        total += nodes
        if exhausted:
            return SearchResult(UNKNOWN, None, total)
        if sol is not None:
            g = ColouredGuarding.from_pairs((v, a) for v, a in enumerate(sol) if a)
            return SearchResult(c, g, total)
    return SearchResult(None, None, total)


def _cell_masks(P, budget=None):
    """Distinct visible-vertex sets over all cells of the all-vertex overlay."""
    ov = build_overlay(P, list(range(P.n)), budget)
    masks = {m for _, m, _ in _cells(ov)}
    return sorted(masks), ov


def _bits(m):
    out, k = [], 0
    while m:
        if m & 1:
            out.append(k)
        m >>= 1
        k += 1
    return out


def min_guards_bruteforce(F_or_P, cap=24):
    """Minimum number of vertex guards covering every point (exhaustive)."""
    P = getattr(F_or_P, "polygon", F_or_P)
    if P.n > cap:
        raise GeometryError("brute force capped at %d vertices" % cap)
    masks, _ = _cell_masks(P)
    # any superset constraint is implied by a subset one
    ms = sorted(set(masks), key=lambda m: bin(m).count("1"))
    keep = []
    for m in ms:
        if not any((k & m) == k for k in keep):
            keep.append(m)
    for k in range(1, P.n + 1):
        for S in combinations(range(P.n), k):
            sm = 0
            for v in S:
                sm |= 1 << v
            if all(m & sm for m in keep):
                return k
    return None


def v2p_min_colours_bruteforce(P, c_max=4, cap=10, budget=10 ** 7):
    """Minimum palette over all vertex guard colourings passing the V2P check."""
    P = getattr(P, "polygon", P)
    if P.n > cap:
        raise GeometryError("brute force capped at %d vertices" % cap)
    masks, _ = _cell_masks(P)
    cons = [tuple(_bits(m)) for m in masks]
    for c in range(1, c_max + 1):
        sol, nodes, exhausted = _solve_cf(P.n, cons, c, budget)
        if exhausted:
            return UNKNOWN
        if sol is not None:
            return c
    return None
