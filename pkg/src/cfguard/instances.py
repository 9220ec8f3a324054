"""Gallery polygons read off the figures (coordinates x100) and random generators."""

from dataclasses import dataclass
import math
import random
from fractions import Fraction

from .geometry import (
    GeometryError, PolygonError, SimplePolygon, cross, mpq, segment_intersection,
    to_rational, visibility_graph,
)
from .funnels import classify_funnel

_FIG2 = [(193, 471), (500, 500), (872, 676), (1061, 821), (1301, 1071),
         (1437, 1250), (1625, 1699), (1683, 1437), (1733, 1305), (1922, 1080),
         (2210, 849), (2350, 758), (2800, 510), (2900, 471)]

_FIG3_LEFT = [(-2300, 0), (-1850, 50), (-1600, 100), (-940, 280), (-730, 420),
              (-350, 700), (-200, 850), (-50, 1300)]

_FIG4 = [(-500, 0), (-390, 10), (-346, 20), (-297, 32), (-262, 43), (-253, 46),
         (-210, 70), (-165, 96), (-153, 104), (-103, 154), (-66, 202), (-62, 212),
         (-32, 308), (-19, 370), (-14, 407), (-3, 554), (3, 800), (26, 651),
         (67, 409), (82, 342), (99, 279), (124, 223), (141, 192), (160, 168),
         (180, 143), (205, 116), (223, 97), (256, 71), (283, 57), (319, 42),
         (394, 21), (433, 11), (500, 0)]

_FIG5 = [(0, 0), (600, 90), (790, 200), (800, 600), (700, 800), (430, 900),
         (500, 1150), (780, 950), (1100, 800), (1500, 850), (1500, 1150),
         (1450, 1300), (1650, 1200), (1800, 1300), (1900, 1000), (1950, 900),
         (2300, 800), (2400, 1050), (2420, 1200), (2600, 1100), (3100, 1000),
         (2860, 800), (2720, 600), (2500, 150), (3100, 0)]

# pocket chain 2..23 of the forward-partition figure; vertex 1 of the figure
# lies inside the edge A-2, and B-G is the starting edge
_FIG6_CHAIN = [(150, 150), (50, 250), (-100, 300), (-500, 400), (-100, 400),
               (220, 480), (340, 660), (300, 830), (180, 965), (-300, 1030),
               (-35, 1055), (230, 1130), (400, 1360), (460, 1480), (405, 1600),
               (350, 1700), (250, 1800), (-100, 1750), (160, 1880), (220, 1940),
               (350, 2100), (250, 2400)]
_FIG6_REST = [(1200, 1400), (1200, 1800), (1400, 2000), (2400, 2000), (2400, -250),
              (1030, -250)]

_FIG6B = [(360, 400), (520, 420), (350, 470), (660, 440), (400, 500), (640, 500),
          (350, 600), (580, 580), (400, 700), (520, 660), (440, 760), (800, 400),
          (1060, 680), (1100, 500), (1250, 750), (1600, 700), (1500, 800),
          (1100, 900), (1620, 800), (1650, 400), (1550, 650), (1000, 400),
          (1100, 380), (1200, 400), (1150, 350), (1200, 300), (1000, 360)]

_FIG7A = [(0, 0), (250, -20), (200, 0), (100, 200), (100, 160), (-40, -20)]
_FIG7B = [(0, 0), (100, 20), (200, 20), (300, 0), (300, 200), (200, 180),
          (100, 180), (0, 200)]

BOWL = [(6, -30), (-6, -30), (-190, 100), (-190, 133), (-197, 166), (-210, 200),
        (-110, 200), (-89, 166), (-64, 133), (-30, 100), (-10, 90), (10, 90),
        (30, 100), (64, 133), (89, 166), (110, 200), (210, 200), (197, 166),
        (190, 133), (190, 100)]

# bowtie S: t, r1, r2, q1, q2, r3, r4, t', s4, s3, q3, q4, s2, s1
BOWTIE = [(0, -30), (-200, -83), (-400, -150), (-450, -40), (-450, 40),
          (-400, 150), (-200, 83), (0, 30), (200, 83), (400, 150), (450, 40),
          (450, -40), (400, -150), (200, -83)]
BOWTIE_NAMES = ["t", "r1", "r2", "q1", "q2", "r3", "r4", "t'", "s4", "s3",
                "q3", "q4", "s2", "s1"]

GALLERY_IDS = ("fig2", "fig3", "fig4", "fig5", "fig6fwd", "fig6b", "fig7a",
               "fig7b", "bowl", "bowtie_bowls")

# starting edge for the decomposition figures, as (from, to) points
GALLERY_BASE = {
    "fig5": ((0, 0), (3100, 0)),
    "fig6fwd": ((1200, 1800), (1400, 2000)),
    "fig6b": ((1620, 800), (1650, 400)),
}


class RequirementsViolated(GeometryError):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


def _fig3():
    left = list(_FIG3_LEFT)
    right = [(-x, y) for x, y in reversed(left)]
    return left + [(0, 1700)] + right


def gallery(name):
    """Exact polygon for a gallery id."""
    if name == "fig2":
        return SimplePolygon(_FIG2)
    if name == "fig3":
        return SimplePolygon(_fig3())
    if name == "fig4":
        return SimplePolygon(_FIG4)
    if name == "fig5":
        return SimplePolygon(_FIG5)
    if name == "fig6fwd":
        return SimplePolygon(_FIG6_CHAIN + _FIG6_REST)
    if name == "fig6b":
        return SimplePolygon(_FIG6B)
    if name == "fig7a":
        return SimplePolygon(_FIG7A)
    if name == "fig7b":
        return SimplePolygon(_FIG7B)
    if name == "bowl":
        return SimplePolygon(BOWL)
    if name == "bowtie_bowls":
        return bowtie_with_bowls()
    raise KeyError("unknown gallery id %r" % (name,))


def gallery_base(name, P=None):
    """Edge index of the distinguished base edge of a gallery polygon (or 0)."""
    if P is None:
        P = gallery(name)
    if name not in GALLERY_BASE:
        return 0
    a, b = (tuple(map(mpq, p)) for p in GALLERY_BASE[name])
    ia, ib = P.index_of(a), P.index_of(b)
    if (ia + 1) % P.n == ib:
        return ia
    return ib


# ---------------------------------------------------------------- random instances

@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    kind: str = "simple"
    n: int = 20          # total vertex target (weakvis / simple)
    k: int = 4           # left chain size incl. base corner and apex (funnel)
    m: int = 4           # right chain size (funnel)
    spread: int = 1000   # coordinate range
    retries: int = 200


def _rng(cfg):
    return random.Random(cfg.seed)


def _angle_dirs(rng, count, lo, hi, scale):
    """count integer directions with strictly sorted distinct angles in (lo, hi)."""
    while True:
        angs = sorted(rng.uniform(lo, hi) for _ in range(count))
        dirs = [(round(math.cos(a) * scale), round(math.sin(a) * scale)) for a in angs]
        ok = all(dirs[i][0] * dirs[i + 1][1] - dirs[i][1] * dirs[i + 1][0] > 0
                 for i in range(count - 1))
        if ok and all(d[1] > 0 for d in dirs):
            return dirs


def _funnel_from_dirs(width, ldirs, lsteps, rdirs, rsteps):
    """Polygon from base (0,0)-(width,0) and two edge-direction lists (last edge is
    cut off at the intersection of the two final edge lines)."""
    L = [(mpq(0), mpq(0))]
    for (dx, dy), s in zip(ldirs[:-1], lsteps):
        x, y = L[-1]
        L.append((x + dx * s, y + dy * s))
    R = [(mpq(width), mpq(0))]
    for (dx, dy), s in zip(rdirs[:-1], rsteps):
        x, y = R[-1]
        R.append((x + dx * s, y + dy * s))
    a, da = L[-1], ldirs[-1]
    b, db = R[-1], rdirs[-1]
    den = da[0] * db[1] - da[1] * db[0]
    if den == 0:
        return None
    t = ((b[0] - a[0]) * db[1] - (b[1] - a[1]) * db[0]) / den
    u = ((b[0] - a[0]) * da[1] - (b[1] - a[1]) * da[0]) / den
    if t <= 0 or u <= 0:
        return None
    apex = (a[0] + da[0] * t, a[1] + da[1] * t)
    return L + [apex] + list(reversed(R))


def _steps(rng, count, width, scale):
    # each chain spans at most about a third of the base width
    w = [rng.randint(1, 8) for _ in range(count)]
    tot = sum(w)
    return [mpq(x * width, 3 * tot * scale) for x in w]


def random_funnel(cfg):
    """Random funnel with |L| = cfg.k and |R| = cfg.m (both counting the apex)."""
    if cfg.k < 2 or cfg.m < 2:
        raise ValueError("chain sizes must be at least 2")
    rng = _rng(cfg)
    scale = max(64, 8 * (cfg.k + cfg.m) ** 2)
    for _ in range(cfg.retries):
        width = rng.randint(cfg.spread // 2, cfg.spread)
        th = rng.uniform(0.35, 1.45)
        ldirs = _angle_dirs(rng, cfg.k - 1, 0.02, th, scale)
        rdirs = _angle_dirs(rng, cfg.m - 1, math.pi - rng.uniform(0.35, 1.45),
                            math.pi - 0.02, scale)[::-1]
        lsteps = _steps(rng, len(ldirs), width, scale)
        rsteps = _steps(rng, len(rdirs), width, scale)
        pts = _funnel_from_dirs(width, ldirs, lsteps, rdirs, rsteps)
        if pts is None:
            continue
        try:
            P = SimplePolygon(pts)
        except PolygonError:
            continue
        F = classify_funnel(P, base=P.index_of(pts[0]))
        if F is not None and len(F.left_chain) == cfg.k and len(F.right_chain) == cfg.m:
            return F
    raise GeometryError("random_funnel: retries exhausted for %r" % (cfg,))


def random_deep_funnel(cfg):
    """Funnel whose chains sit on the curve y = 1/|x| - 1 with random geometric
    spacing, closed by an apex high on the axis.  Every guard covers a bounded
    height ratio, so the optimum grows linearly with the chain sizes."""
    if cfg.k < 2 or cfg.m < 2:
        raise ValueError("chain sizes must be at least 2")
    rng = _rng(cfg)

    def heights(count):
        a = [mpq(1)]
        for _ in range(count - 1):
            a.append(a[-1] * mpq(rng.randint(25, 60), 10))
        return a
    L, R = heights(cfg.k - 1), heights(cfg.m - 1)
    apex = (mpq(0), 3 * max(L[-1], R[-1]))
    pts = [(-1 / h, h - 1) for h in L] + [apex] + [(1 / h, h - 1) for h in reversed(R)]
    P = SimplePolygon(pts)
    F = classify_funnel(P, base=P.index_of(pts[0]))
    if F is None:
        raise GeometryError("deep funnel construction failed for %r" % (cfg,))
    return F


_TINY_DIRS = [(4, 1), (2, 1), (1, 1), (1, 2), (1, 4), (0, 1), (-1, 4), (-1, 2)]


def tiny_funnels(max_n=9, width=12):
    """Exhaustive family of small funnels on a discretised direction grid.

    Left chain edges use an ascending subsequence of _TINY_DIRS with unit steps,
    the right chain the mirrored set; the apex closes the last two edge lines.
    Yields every distinct valid funnel with at most max_n vertices.
    """
    from itertools import combinations
    D = _TINY_DIRS
    M = [(-x, y) for x, y in D]
    seen = set()
    for nl in range(1, max_n - 1):
        for nr in range(1, max_n - nl):
            if nl + nr + 1 > max_n:
                continue
            for ls in combinations(range(len(D)), nl):
                for rs in combinations(range(len(M)), nr):
                    ld = [D[i] for i in ls]
                    rd = [M[i] for i in rs]
                    pts = _funnel_from_dirs(width, ld, [1] * nl, rd, [1] * nr)
                    if pts is None:
                        continue
                    key = tuple(pts)
                    if key in seen:
                        continue
                    seen.add(key)
                    try:
                        P = SimplePolygon(pts)
                    except PolygonError:
                        continue
                    F = classify_funnel(P, base=P.index_of(pts[0]))
                    if F is not None:
                        yield F


def random_weak_visibility_polygon(cfg):
    """Radial terrain over the base (0,0)-(W,0).

    Chain vertices sit on rays from a hub O below the base, in angular order,
    each beyond the base line, so every point sees the base along its ray to O.
    Returns (polygon, base edge index).
    """
    if cfg.n < 3:
        raise ValueError("need n >= 3")
    rng = _rng(cfg)
    W = cfg.spread
    for _ in range(cfg.retries):
        h = rng.choice([W // 50 + 1, W // 8, W // 2, 4 * W])
        ox = rng.randint(W // 4, 3 * W // 4)
        xs = sorted(rng.sample(range(1, W), cfg.n - 2), reverse=True)
        chain = []
        for x in xs:
            s = 1 + mpq(rng.randint(1, 64), 16) * (mpq(W, 2 * h) if h < W else 1)
            chain.append((ox + (x - ox) * s, -h + h * s))
        pts = [(mpq(0), mpq(0)), (mpq(W), mpq(0))] + chain
        try:
            P = SimplePolygon(pts)
        except PolygonError:
            continue
        return P, 0
    raise GeometryError("random_weak_visibility_polygon: retries exhausted")


def _segments_cross(a, b, c, d):
    return segment_intersection(a, b, c, d) is not None


def random_simple_polygon(cfg):
    """Random integer points in general position, untangled by 2-opt moves."""
    n = cfg.n
    if n < 3:
        raise ValueError("need n >= 3")
    rng = _rng(cfg)
    R = cfg.spread
    for _ in range(cfg.retries):
        pts = []
        while len(pts) < n:
            p = (rng.randint(0, R), rng.randint(0, R))
            if p in pts:
                continue
            if any(cross(a, b, p) == 0 for i, a in enumerate(pts) for b in pts[i + 1:]):
                continue
            pts.append(p)
        order = list(range(n))
        while True:
            changed = False
            for i in range(n):
                a, b = pts[order[i]], pts[order[(i + 1) % n]]
                for j in range(i + 2, n):
                    if (j + 1) % n == i:
                        continue
                    c, d = pts[order[j]], pts[order[(j + 1) % n]]
                    if _segments_cross(a, b, c, d):
                        order[i + 1:j + 1] = reversed(order[i + 1:j + 1])
                        changed = True
                        break
                if changed:
                    break
            if not changed:
                break
        try:
            return SimplePolygon([pts[i] for i in order])
        except PolygonError:
            continue
    raise GeometryError("random_simple_polygon: retries exhausted")


def generate(cfg):
    """Dispatch on cfg.kind; returns (polygon, base edge index or None)."""
    if cfg.kind == "deep":
        F = random_deep_funnel(cfg)
        return F.polygon, F.base[0]
    if cfg.kind == "funnel":
        F = random_funnel(cfg)
        return F.polygon, F.base[0]
    if cfg.kind == "weakvis":
        return random_weak_visibility_polygon(cfg)
    if cfg.kind == "simple":
        return random_simple_polygon(cfg), None
    raise ValueError("unknown kind %r" % (cfg.kind,))


# ---------------------------------------------------------------- bowtie with bowls

# door centres (former q-vertices) and the unit vector along the door in the
# direction of travel of the listed (clockwise) bowtie order, plus the outward normal
_DOORS = {
    "q1": ((-450, -40), (0, 1), (-1, 0)),
    "q2": ((-450, 40), (0, 1), (-1, 0)),
    "q3": ((450, 40), (0, -1), (1, 0)),
    "q4": ((450, -40), (0, -1), (1, 0)),
}


# along-door scale of a bowl copy: 420 bowl units -> 70, so the two copies on
# one side of the bowtie (door centres 80 apart) stay disjoint
_BOWL_SCALE = mpq(1, 6)


def _bowl_copy(door, door_width, squeeze):
    """Bowl vertices p1, a1..c1, p2 mapped onto a door (listed travel order)."""
    (cx, cy), (ax, ay), (nx, ny) = door
    b = _BOWL_SCALE / to_rational(squeeze)
    half = to_rational(door_width) / 2
    out = []
    # BOWL is p2, p1, a1..a9, c9..c1; travel enters at p1 and leaves at p2.
    # The bowl keeps its size; only the door p1p2 narrows to door_width.
    for x, y in BOWL[1:] + BOWL[:1]:
        if y == -30:
            u = half if x > 0 else -half
        else:
            u = x * _BOWL_SCALE
        v = (y + 30) * b
        out.append((cx + u * ax + v * nx, cy + u * ay + v * ny))
    return out


def bowtie_with_bowls(door_width=Fraction(1, 1000), squeeze=Fraction(1, 4), audit=True):
    """Bowtie with a squeezed bowl glued outward at each q-vertex.

    door_width is in figure units (the gallery scale multiplies by 100).  The
    bowl copy has a fixed width along the door and is stretched outward by
    1/squeeze; only its p1p2 edge shrinks to the door.  With
    ``audit`` the three visibility requirements of the construction are
    checked exactly and RequirementsViolated names the first failing pair.
    Returns the polygon; ``bowtie_labels(P)`` recovers the named vertices.
    """
    dw = to_rational(door_width) * 100
    if dw <= 0 or to_rational(squeeze) <= 0:
        raise ValueError("door_width and squeeze must be positive")
    pts, names, bowl_of = [], [], []
    for p, name in zip(BOWTIE, BOWTIE_NAMES):
        if name in _DOORS:
            cp = _bowl_copy(_DOORS[name], dw, squeeze)
            pts.extend(cp)
            names.extend([name + ":p1"] + [name + ":b%d" % i for i in range(1, 19)]
                         + [name + ":p2"])
            bowl_of.extend([name] * len(cp))
        else:
            pts.append(p)
            names.append(name)
            bowl_of.append(None)
    try:
        P = SimplePolygon(pts)
    except PolygonError as e:
        raise RequirementsViolated("bowls overlap the frame: %s" % e) from None
    if P.reversed:
        names.reverse()
        bowl_of.reverse()
    P.labels = tuple(names)
    if audit:
        _audit_bowtie(P, names, bowl_of)
    return P


def bowtie_labels(P):
    return getattr(P, "labels", None)


def _audit_bowtie(P, names, bowl_of):
    G = visibility_graph(P)
    idx = {nm: i for i, nm in enumerate(names)}
    n = P.n
    # (a) interior bowl vertices see nothing outside their bowl
    for i in range(n):
        if bowl_of[i] is None or names[i].endswith((":p1", ":p2")):
            continue
        for j in range(n):
            if bowl_of[j] != bowl_of[i] and G[i][j]:
                raise RequirementsViolated("bowl vertex sees outside",
                                           (names[i], names[j]))
    # (b) t and t' see both door vertices of every door
    for w in ("t", "t'"):
        for q in _DOORS:
            for end in (":p1", ":p2"):
                if not G[idx[w]][idx[q + end]]:
                    raise RequirementsViolated("door not visible", (w, q + end))
    # (c) r2, r3, s2, s3 each see exactly one of t, t'
    for w in ("r2", "r3", "s2", "s3"):
        seen = [x for x in ("t", "t'") if G[idx[w]][idx[x]]]
        if len(seen) != 1:
            raise RequirementsViolated("must see exactly one of t, t'", (w, tuple(seen)))
