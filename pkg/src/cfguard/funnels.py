"""Funnels: recognition, upper/lower tangents, guard paths and ruler colouring.

A funnel is stored on top of its CCW polygon.  With base edge P[b] -> P[b+1]
the left chain is P[b], P[b-1], ... up to the apex and the right chain is
P[b+1], P[b+2], ... up to the apex.  Points on a chain are addressed by a
position (k, t): the point C[k] + t (C[k+1] - C[k]) with 0 <= t < 1, so
"below" and "above" never look at y coordinates and work in any rotation.
"""

from dataclasses import dataclass, field
from enum import Enum
import heapq

import numpy as np

from .geometry import (
    GeometryError, SimplePolygon, convexity, cross, line_intersection,
    line_signs, lerp, seg_param, sees, segment_intersection, sub, to_point,
    vcross, visible_vertices,
)

LEFT, RIGHT = 0, 1


class NotAFunnel(GeometryError):
    pass


NOT_A_FUNNEL = None


class CutKind(Enum):
    SEGMENT = "segment"
    VEE = "vee"


@dataclass(frozen=True)
class Cut:
    kind: CutKind
    q: tuple            # end on the left chain
    p: tuple            # end on the right chain
    qpos: tuple         # chain position of q on L
    ppos: tuple         # chain position of p on R
    t: tuple = None     # junction of a VEE

    def points(self):
        if self.kind is CutKind.VEE:
            return (self.q, self.t, self.p)
        if self.q == self.p:
            return (self.q,)
        return (self.q, self.p)


@dataclass(frozen=True)
class ColouredGuarding:
    assignments: dict
    palette: tuple

    @classmethod
    def from_pairs(cls, pairs, palette=None):
        a = dict(pairs)
        pal = tuple(sorted(set(a.values()) if palette is None else palette))
        return cls(a, pal)

    @property
    def guards(self):
        return sorted(self.assignments)

    def palette_size(self):
        return len(set(self.assignments.values()))


@dataclass(eq=False)
class Funnel:
    polygon: SimplePolygon
    left_chain: tuple
    right_chain: tuple
    apex: int
    base: tuple
    host: tuple = None          # polygon index -> host polygon index, for sub-funnels
    _c: dict = field(default_factory=dict, repr=False)

    @property
    def n(self):
        return self.polygon.n

    def chain(self, side):
        return self.left_chain if side == LEFT else self.right_chain

    def chain_points(self, side):
        key = ("pts", side)
        if key not in self._c:
            self._c[key] = [self.polygon[i] for i in self.chain(side)]
        return self._c[key]

    def apex_point(self):
        return self.polygon[self.apex]

    def locate(self, v):
        """(side, index) of polygon vertex v; the apex reports the left chain."""
        v %= self.n
        loc = self._c.get("loc")
        if loc is None:
            loc = {}
            for s in (RIGHT, LEFT):
                for k, i in enumerate(self.chain(s)):
                    loc[i] = (s, k)
            self._c["loc"] = loc
        return loc[v]

    def vertex(self, side, k):
        return self.chain(side)[k]

    def top(self, side):
        return len(self.chain(side)) - 1


def _make_funnel(P, b, host=None):
    n = P.n
    left = [b % n]
    i = b
    right = [(b + 1) % n]
    j = b + 1
    conv = convexity(P)
    while True:
        j += 1
        right.append(j % n)
        if conv[j % n] > 0:
            break
    apex = j % n
    while True:
        i -= 1
        left.append(i % n)
        if i % n == apex:
            break
    return Funnel(P, tuple(left), tuple(right), apex, (b % n, (b + 1) % n), host)


def classify_funnel(P, base=None):
    """Funnel structure of P, or NOT_A_FUNNEL (None).

    When several edges join two convex vertices (triangles, darts) the one
    with the smallest start index is taken as the base unless ``base`` says
    otherwise.
    """
    if not isinstance(P, SimplePolygon):
        P = SimplePolygon(P)
    conv = convexity(P)
    n = P.n
    if int((conv > 0).sum()) != 3 or int((conv == 0).sum()) != 0:
        return NOT_A_FUNNEL
    cands = [i for i in range(n) if conv[i] > 0 and conv[(i + 1) % n] > 0]
    if not cands:
        return NOT_A_FUNNEL
    if base is not None:
        if base % n not in cands:
            return NOT_A_FUNNEL
        b = base % n
    else:
        b = cands[0]
    return _make_funnel(P, b)


def funnel_from_chains(P, left, right, host=None):
    """Funnel over explicit chains (used for possibly degenerate max funnels)."""
    return Funnel(P, tuple(left), tuple(right), left[-1], (left[0], right[0]), host)


# ---------------------------------------------------------------- positions

def _pos_lt(a, b):
    return a < b


def chain_position(F, side, pt):
    """Position (k, t) of a boundary point on the given chain."""
    C = F.chain_points(side)
    for k in range(len(C) - 1):
        a, b = C[k], C[k + 1]
        if pt == a:
            return (k, 0)
        x = segment_intersection(a, b, pt, pt)
        if x is not None:
            if pt == b:
                return (k + 1, 0)
            return (k, seg_param(a, b, pt))
    if pt == C[-1]:
        return (len(C) - 1, 0)
    raise GeometryError("point not on chain")


def _vertex_not_above(k, pos):
    """chain vertex k is at or below the chain point at pos"""
    return k <= pos[0]


def _vertex_strictly_below(k, pos):
    return k < pos[0] or (k == pos[0] and pos[1] > 0)


def _vertex_at_or_above(k, pos):
    return k > pos[0] or (k == pos[0] and pos[1] == 0)


# ---------------------------------------------------------------- tangents

def _ray_hit_chain(F, side, origin, d):
    """First point where the ray origin + s d (s > 0) meets the given chain."""
    P = F.polygon
    chain = F.chain(side)
    C = F.chain_points(side)
    far = (origin[0] + d[0], origin[1] + d[1])
    sg = line_signs(P, origin, far)[list(chain)]
    best = None
    dd = d[0] * d[0] + d[1] * d[1]
    for k in range(len(C) - 1):
        s0, s1 = int(sg[k]), int(sg[k + 1])
        if s0 * s1 > 0:
            continue
        a, b = C[k], C[k + 1]
        if s0 == 0 and s1 == 0:
            cands = [(a, (k, 0)), (b, (k + 1, 0))]
        elif s0 == 0:
            cands = [(a, (k, 0))]
        elif s1 == 0:
            cands = [(b, (k + 1, 0))]
        else:
            x = line_intersection(origin, far, a, b)
            cands = [(x, (k, seg_param(a, b, x)))]
        for x, pos in cands:
            s = ((x[0] - origin[0]) * d[0] + (x[1] - origin[1]) * d[1]) / dd
            if s > 0 and (best is None or s < best[0]):
                best = (s, x, pos)
    if best is None:
        raise GeometryError("upper tangent misses the opposite chain")
    return best[1], best[2]


def _apex_cut(F):
    a = F.apex_point()
    return Cut(CutKind.SEGMENT, a, a, (F.top(LEFT), 0), (F.top(RIGHT), 0))


def ups_token(F, side, k):
    """ups of the k-th vertex of a chain (0-based)."""
    key = ("ups", side, k)
    c = F._c.get(key)
    if c is not None:
        return c
    top = F.top(side)
    if k >= top - 1:
        # successor is the apex (or the vertex is the apex): zero-length cut
        c = _apex_cut(F)
    else:
        C = F.chain_points(side)
        o = C[k + 1]
        x, pos = _ray_hit_chain(F, 1 - side, o, sub(C[k + 1], C[k]))
        if side == LEFT:
            c = Cut(CutKind.SEGMENT, o, x, (k + 1, 0), pos)
        else:
            c = Cut(CutKind.SEGMENT, x, o, pos, (k + 1, 0))
    F._c[key] = c
    return c


def _chain_vertex(F, v):
    side, k = F.locate(v)
    return side, k


def ups(F, v):
    """Upper tangent segment of chain vertex v (a polygon index)."""
    side, k = _chain_vertex(F, v)
    if v % F.n == F.apex:
        raise GeometryError("ups is undefined at the apex")
    return ups_token(F, side, k)


def _cut_contains(c, x):
    if c.kind is CutKind.VEE:
        return (segment_intersection(c.q, c.t, x, x) is not None
                or segment_intersection(c.t, c.p, x, x) is not None)
    return segment_intersection(c.q, c.p, x, x) is not None


def _cut_has_apex(F, c):
    return _cut_contains(c, F.apex_point())


def ups_pair_token(F, i, j):
    key = ("upair", i, j)
    c = F._c.get(key)
    if c is not None:
        return c
    a = ups_token(F, LEFT, i)
    b = ups_token(F, RIGHT, j)
    x = segment_intersection(a.q, a.p, b.q, b.p)
    if x is not None and not isinstance(x[0], tuple):
        c = Cut(CutKind.VEE, b.q, a.p, b.qpos, a.ppos, x)
    elif x is not None:
        # collinear overlap: both cuts lie on one line, take the upper end
        c = a if b.qpos <= a.qpos else b
    else:
        c = a if a.qpos > b.qpos else b
    F._c[key] = c
    return c


def ups_pair(F, li, rj):
    si, i = _chain_vertex(F, li)
    sj, j = _chain_vertex(F, rj)
    if li % F.n == F.apex or rj % F.n == F.apex:
        raise GeometryError("ups is undefined at the apex")
    if si != LEFT:
        raise GeometryError("first vertex must be on the left chain")
    if sj != RIGHT:
        raise GeometryError("second vertex must be on the right chain")
    return ups_pair_token(F, i, j)


def los(F, v):
    """Segment from v to the lowest vertex of the opposite chain that v sees.

    The apex looks at the right chain.
    """
    v %= F.n
    if v in F.base:
        raise GeometryError("los is undefined on the base")
    if v == F.apex:
        opp = F.right_chain[:-1]
    else:
        side, _ = F.locate(v)
        opp = F.chain(1 - side)
    row = visible_vertices(F.polygon, v)
    for w in opp:
        if row[w]:
            return (v, w)
    raise GeometryError("vertex sees nothing on the opposite chain")


# ---------------------------------------------------------------- guarding

def _sees_cut(F, v, c):
    P = F.polygon
    pv = P[v]
    return all(sees(P, pv, x) for x in c.points())


def _base_cut(F):
    P = F.polygon
    return Cut(CutKind.SEGMENT, P[F.base[0]], P[F.base[1]], (0, 0), (0, 0))


def _node_cut(F, z):
    if z == "x":
        return _base_cut(F)
    if z[0] == "P":
        return ups_pair_token(F, z[1], z[2])
    side = LEFT if z[0] == "L" else RIGHT
    return ups_token(F, side, z[1])


def _token(F, side, k):
    # the apex is one vertex; it always gets the left-chain token
    if side == RIGHT and k == F.top(RIGHT):
        return ("L", F.top(LEFT))
    return ("L" if side == LEFT else "R", k)


def _single_steps(F, s):
    """i', j' for the cut s: topmost vertices on each chain seeing all of s."""
    out = []
    for side, pos in ((LEFT, s.qpos), (RIGHT, s.ppos)):
        k = pos[0]
        if k + 1 <= F.top(side) and _sees_cut(F, F.vertex(side, k + 1), s):
            k += 1
        out.append(_token(F, side, k))
    return out


def _pair_step(F, s):
    """(i'', j''): topmost left vertex strictly below ups(p) and right below ups(q)."""
    jp = s.ppos[0]
    iq = s.qpos[0]
    if jp >= F.top(RIGHT) or iq >= F.top(LEFT):
        return None
    up = ups_token(F, RIGHT, jp)
    uq = ups_token(F, LEFT, iq)
    i2 = up.qpos[0] if up.qpos[1] > 0 else up.qpos[0] - 1
    j2 = uq.ppos[0] if uq.ppos[1] > 0 else uq.ppos[0] - 1
    i2 = min(i2, F.top(LEFT) - 1)
    j2 = min(j2, F.top(RIGHT) - 1)
    if i2 < 0 or j2 < 0:
        return None
    return ("P", i2, j2)


def _build_graph(F, with_pairs):
    edges = {}
    seen = {"x"}
    work = ["x"]
    while work:
        t = work.pop()
        s = _node_cut(F, t)
        # both guarding variants walk the same single steps; share them
        steps = F._c.setdefault("steps", {})
        if t not in steps:
            steps[t] = _single_steps(F, s)
        succ = list(steps[t])
        if with_pairs:
            pz = _pair_step(F, s)
            if pz is not None:
                succ.append(pz)
        out = edges.setdefault(t, {})
        for z in succ:
            w = 2 if z[0] == "P" else 1
            out[z] = min(out.get(z, w), w)
            if z in seen:
                continue
            seen.add(z)
            if _cut_has_apex(F, _node_cut(F, z)):
                edges.setdefault(z, {})["y"] = 0
            else:
                work.append(z)
    return edges


def _tok_key(z):
    if z == "y":
        return ()
    if z[0] == "P":
        return ((0, z[1]), (1, z[2]))
    return ((0 if z[0] == "L" else 1, z[1]),)


def _best_path(edges):
    """Minimum-weight x->y path; ties broken towards the smallest guard tokens."""
    rev = {}
    for a, out in edges.items():
        for b, w in out.items():
            rev.setdefault(b, []).append((a, w))
    dist = {"y": 0}
    heap = [(0, 0, "y")]
    cnt = 1
    while heap:
        d, _, v = heapq.heappop(heap)
        if d > dist.get(v, d):
            continue
        for a, w in rev.get(v, ()):
            nd = d + w
            if nd < dist.get(a, float("inf")):
                dist[a] = nd
                heapq.heappush(heap, (nd, cnt, a))
                cnt += 1
    if "x" not in dist:
        raise GeometryError("guard digraph has no x-y path")
    path = []
    v = "x"
    while v != "y":
        opts = [z for z, w in edges[v].items() if z in dist and w + dist[z] == dist[v]]
        v = min(opts, key=_tok_key)
        path.append(v)
    return path[:-1]


def _tokens_to_vertices(F, path):
    out = []
    for z in path:
        if z[0] == "P":
            out.append(F.vertex(LEFT, z[1]))
            out.append(F.vertex(RIGHT, z[2]))
        else:
            out.append(F.vertex(LEFT if z[0] == "L" else RIGHT, z[1]))
    return out


def guard_funnel_simple(F):
    """Guards along a shortest path of the single-step digraph, bottom-up."""
    key = "alg1"
    if key not in F._c:
        F._c[key] = _tokens_to_vertices(F, _best_path(_build_graph(F, False)))
    return list(F._c[key])


def guard_funnel_optimal(F):
    """Minimum vertex guard set via the digraph with left/right guard pairs."""
    key = "alg2"
    if key not in F._c:
        F._c[key] = _tokens_to_vertices(F, _best_path(_build_graph(F, True)))
    return list(F._c[key])


# ---------------------------------------------------------------- colouring

def ruler(i):
    """Exponent of the largest power of two dividing 2i."""
    if i < 1:
        raise ValueError("ruler index starts at 1")
    return (i & -i).bit_length()


def colour_funnel(F):
    guards = guard_funnel_simple(F)
    a = {g: ruler(k + 1) for k, g in enumerate(guards)}
    return ColouredGuarding(a, tuple(sorted(set(a.values()))))


def colour_lower_bound(m):
    if m < 1:
        raise ValueError("m >= 1")
    return (m + 3).bit_length() - 1 - 3


# ---------------------------------------------------------------- intervals

@dataclass(frozen=True)
class Interval:
    """Region between a lower cut (the base when ``lower_vertex`` is None) and
    an upper los segment (q, z), or the apex when ``upper`` is None."""
    lower_vertex: int = None
    upper: tuple = None
    guards: tuple = ()

    def lower_cut(self, F):
        if self.lower_vertex is None:
            return _base_cut(F)
        return ups(F, self.lower_vertex)


def interval_is_valid(F, lower_vertex=None, upper=None):
    """Lower cut ups(p) (p not the apex or next to it) or the base; upper cut
    los(q) (q off the base) or the apex; the upper cut lies above the lower."""
    if lower_vertex is None:
        lo = ((0, 0), (0, 0))
    else:
        p = lower_vertex % F.n
        near = {F.apex, F.vertex(LEFT, F.top(LEFT) - 1), F.vertex(RIGHT, F.top(RIGHT) - 1)}
        if p in near:
            return False
        c = ups(F, p)
        lo = (c.qpos, c.ppos)
    if upper is None:
        return True
    q, z = upper
    if q % F.n in F.base:
        return False
    ends = {}
    for v in (q, z):
        v %= F.n
        if v == F.apex:
            ends[LEFT] = (F.top(LEFT), 0)
            ends.setdefault(RIGHT, (F.top(RIGHT), 0))
        else:
            side, k = F.locate(v)
            ends[side] = (k, 0)
    if len(ends) != 2:
        return False
    hi = (ends[LEFT], ends[RIGHT])
    return hi[0] >= lo[0] and hi[1] >= lo[1] and hi != lo


def make_interval(F, lower_vertex=None, upper=None, A=None):
    if not interval_is_valid(F, lower_vertex, upper):
        raise GeometryError("upper cut must lie above the lower cut")
    if A is None:
        A = guard_funnel_simple(F)
    Q = Interval(lower_vertex, upper)
    g = tuple(a for a in A if in_interval(F, Q, a))
    return Interval(lower_vertex, upper, g)


def _lower_ok(F, Q, side, k):
    if Q.lower_vertex is None:
        return True
    c = ups(F, Q.lower_vertex)
    if c.q == c.p == F.apex_point():
        return False
    pos = c.qpos if side == LEFT else c.ppos
    return _vertex_at_or_above(k, pos)


def in_interval(F, Q, v):
    v %= F.n
    if Q.lower_vertex is not None:
        c = ups(F, Q.lower_vertex)
        if c.q == c.p == F.apex_point():
            return False
    if v == F.apex:
        return Q.upper is None or Q.upper[1] == F.apex
    side, k = F.locate(v)
    if not _lower_ok(F, Q, side, k):
        return False
    if Q.upper is None:
        return True
    q, z = Q.upper
    q_side, q_k = F.locate(q) if q != F.apex else (None, None)
    z_side, z_k = F.locate(z)
    if q == F.apex:
        # los of the apex ends on the right chain
        if side == RIGHT:
            return k <= z_k
        return True
    if side == q_side:
        return k < q_k
    return k <= z_k


def shadow_vertices(F, Q):
    """Vertices between the lower cut ups(w) and los of w's successor."""
    if Q.lower_vertex is None:
        return set()
    side, k = F.locate(Q.lower_vertex)
    if k + 1 >= F.top(side):
        return set()
    c = ups(F, Q.lower_vertex)
    succ = F.vertex(side, k + 1)
    _, z = los(F, succ)
    opp = 1 - side
    _, zk = F.locate(z)
    if z == F.apex:
        zk = F.top(opp)
    end = c.ppos if opp == RIGHT else c.qpos
    return {F.vertex(opp, j) for j in range(zk, F.top(opp) + 1)
            if _vertex_strictly_below(j, end)}


def interval_vertices(F, Q):
    return {v for v in range(F.n) if in_interval(F, Q, v)}


def _safe_radius2(P, o):
    """Squared distance from o to the nearest line through two vertices of P
    that misses o."""
    pts = P.vertices
    fx, fy = P.fx, P.fy
    ox, oy = float(o[0]), float(o[1])
    dx = fx[None, :] - fx[:, None]
    dy = fy[None, :] - fy[:, None]
    cr = dx * (oy - fy[:, None]) - dy * (ox - fx[:, None])
    ln = dx * dx + dy * dy
    with np.errstate(divide="ignore", invalid="ignore"):
        d2 = np.where(ln > 0, cr * cr / ln, np.inf)
    n = P.n
    iu = np.triu_indices(n, 1)
    vals = d2[iu]
    order = np.argsort(vals)
    # the float estimate only ranks candidates; the answer is exact
    best = None
    for idx in order[:64].tolist():
        a, b = pts[iu[0][idx]], pts[iu[1][idx]]
        c = cross(a, b, o)
        if c == 0:
            continue
        d = sub(b, a)
        v = c * c / (d[0] * d[0] + d[1] * d[1])
        if best is None or v < best:
            best = v
    if best is None or len(order) > 64:
        for i in range(n):
            for j in range(i + 1, n):
                a, b = pts[i], pts[j]
                c = cross(a, b, o)
                if c == 0:
                    continue
                d = sub(b, a)
                v = c * c / (d[0] * d[0] + d[1] * d[1])
                if best is None or v < best:
                    best = v
    return best


def interval_observer(F, Q):
    """A point on the lower cut that sees all of Q and nothing else outside
    Q and its shadow (exact, slightly pushed off the degenerate lines)."""
    if Q.upper is None:
        raise GeometryError("observer for an apex-bounded interval is not supported")
    P = F.polygon
    q, z = Q.upper
    c = Q.lower_cut(F)
    a, b = c.q, c.p
    if a == b:
        raise GeometryError("degenerate lower cut")
    o = line_intersection(P[q], P[z], a, b)
    if o is None or segment_intersection(a, b, o, o) is None:
        raise GeometryError("lower tangent of q misses the lower cut")
    if o == a or o == b:
        # every point of the cut near its end sees q: nothing to perturb into
        raise GeometryError("lower tangent of q meets the lower cut at its end")
    z_side = RIGHT if z == F.apex else F.locate(z)[0]
    u = sub(b, a) if z_side == RIGHT else sub(a, b)
    # normal pointing to the side of the cut that contains the apex
    nrm = (-u[1], u[0])
    apx = F.apex_point()
    if vcross(u, sub(apx, a)) * vcross(u, nrm) < 0:
        nrm = (-nrm[0], -nrm[1])
    r2 = _safe_radius2(P, o)
    uu = u[0] * u[0] + u[1] * u[1]
    lam = type(o[0])(1)
    while lam * lam * uu * 16 > r2:
        lam /= 2
    mu = lam / 1024
    return (o[0] + lam * u[0] + mu * nrm[0], o[1] + lam * u[1] + mu * nrm[1])


def interval_sections(F, Q, p, A=None):
    """Lower and upper section of Q at the chain vertex p; a section whose
    cuts do not bound a region is None."""
    if A is None:
        A = guard_funnel_simple(F)
    lo_up = los(F, p)
    lower = upper = None
    if interval_is_valid(F, Q.lower_vertex, lo_up):
        lower = make_interval(F, Q.lower_vertex, lo_up, A)
    if interval_is_valid(F, p, Q.upper):
        upper = make_interval(F, p, Q.upper, A)
    return lower, upper
