"""Plain SVG figures: polygon outline, optional shaded pieces, coloured guard dots.

Presentation only; coordinates are converted to floats here and nowhere else.
"""

from xml.sax.saxutils import escape

# categorical cycle (Tableau 10)
PALETTE = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
           "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac")

DOT_PX = 12


def _frame(points, width):
    xs = [float(p[0]) for p in points]
    ys = [float(p[1]) for p in points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    pad = 2 * DOT_PX
    s = (width - 2 * pad) / span
    height = int((y1 - y0) * s + 2 * pad)

    def to_px(p):
        # y grows downwards in SVG
        return (pad + (float(p[0]) - x0) * s, height - pad - (float(p[1]) - y0) * s)
    return to_px, height


def _path(to_px, ring):
    return " ".join("%.2f,%.2f" % to_px(p) for p in ring)


def render(P, guarding=None, pieces=(), title=None, width=800):
    """SVG text for polygon P.  guarding: ColouredGuarding or None; pieces:
    iterable of point rings to shade (e.g. decomposition regions)."""
    to_px, height = _frame(P.vertices, width)
    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
           'viewBox="0 0 %d %d">' % (width, height, width, height)]
    if title:
        out.append("<title>%s</title>" % escape(title))
    for i, ring in enumerate(pieces):
        out.append('<polygon points="%s" fill="%s" fill-opacity="0.25" stroke="%s" '
                   'stroke-dasharray="4 3" stroke-width="1"/>'
                   % (_path(to_px, ring), PALETTE[i % len(PALETTE)], "#555"))
    out.append('<polygon points="%s" fill="none" stroke="black" stroke-width="2"/>'
               % _path(to_px, P.vertices))
    if guarding is not None:
        cols = sorted(set(guarding.assignments.values()))
        slot = {c: k for k, c in enumerate(cols)}
        r = DOT_PX / 2
        for v, c in sorted(guarding.assignments.items()):
            x, y = to_px(P[v])
            out.append('<circle cx="%.2f" cy="%.2f" r="%.1f" fill="%s" stroke="black"/>'
                       % (x, y, r, PALETTE[slot[c] % len(PALETTE)]))
            out.append('<text x="%.2f" y="%.2f" font-size="10" font-family="sans-serif">%d</text>'
                       % (x + r + 1, y - r, c))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, P, guarding=None, pieces=(), title=None):
    with open(path, "w") as fh:
        fh.write(render(P, guarding, pieces, title))
