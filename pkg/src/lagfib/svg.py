"""SVG drawing of a lattice's fundamental domain with its edge identifications."""

from fractions import Fraction

from .fibration import klein_domain

_ARROW_DEFS = ('<defs><marker id="tip" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" '
               'markerHeight="7" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>')


def _domain(nf):
    """Vertices plus edges ``(p, q, label, marks, glued)``; ``q`` is the arrow head."""
    p = nf.p
    s = nf.series
    if s == "K2":
        O, O1, O2, O3 = klein_domain(p["m"], p["delta"], p["x"], p["y"])
        # bottom -> top keeps direction; left -> right is reversed
        return [O, O1, O2, O3], [(O, O1, "h", 1, True), (O3, O2, "h", 1, True),
                                 (O, O3, "g", 2, True), (O2, O1, "g", 2, True)]
    if s == "T2nyx":
        x, y = p["x"], p["y"]
        O, O1, O2, O3 = (0, 0), (x, 0), (x, y), (0, y)
        return [O, O1, O2, O3], [(O, O1, "h", 1, True), (O3, O2, "h", 1, True),
                                 (O, O3, "t", 2, True), (O1, O2, "t", 2, True)]
    if s == "T2uvwz":
        u, v, w, z = p["u"], p["v"], p["w"], p["z"]
        O, A, B, C = (0, 0), (u, v), (u + w, v + z), (w, z)
        return [O, A, B, C], [(O, A, "t2", 1, True), (C, B, "t2", 1, True),
                              (O, C, "t1", 2, True), (A, B, "t1", 2, True)]
    if s == "C2ny":
        y = p["y"]
        H = max(Fraction(2), 2 * y)
        pts = [(-H, 0), (H, 0), (H, y), (-H, y)]
        return pts, [(pts[0], pts[1], "h", 1, True), (pts[3], pts[2], "h", 1, True),
                     (pts[1], pts[2], "", 0, False), (pts[0], pts[3], "", 0, False)]
    if s == "C2uv":
        u, v = p["u"], p["v"]
        H = 2 * max(abs(u), abs(v), Fraction(1))
        e = (-v, u)
        n = max(abs(e[0]), abs(e[1]))
        e = (e[0] * H / n, e[1] * H / n)
        pts = [(0, 0), (u, v), (u + e[0], v + e[1]), e]
        return pts, [(pts[0], pts[3], "t1", 1, True), (pts[1], pts[2], "t1", 1, True),
                     (pts[0], pts[1], "", 0, False), (pts[3], pts[2], "", 0, False)]
    if s == "M2":
        x, d = p["x"], p["delta"]
        H = max(Fraction(2), x)
        pts = [(0, -H), (x + d * H, -H), (x - d * H, H), (0, H)]
        return pts, [(pts[0], pts[3], "g", 1, True), (pts[2], pts[1], "g", 1, True),
                     (pts[0], pts[1], "", 0, False), (pts[3], pts[2], "", 0, False)]
    H = Fraction(2)
    pts = [(-H, -H), (H, -H), (H, H), (-H, H)]
    return pts, [(pts[i], pts[(i + 1) % 4], "", 0, False) for i in range(4)]


def render_domain(nf, width=480, height=480):
    pts, edges = _domain(nf)
    xs = [float(q[0]) for q in pts] + [0.0, 1.0]
    ys = [float(q[1]) for q in pts] + [0.0, 1.0]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    pad = 40
    scale = min((width - 2 * pad) / ((hi_x - lo_x) or 1), (height - 2 * pad) / ((hi_y - lo_y) or 1))

    def tr(q):
        return (round(pad + (float(q[0]) - lo_x) * scale, 3), round(height - pad - (float(q[1]) - lo_y) * scale, 3))

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">', _ARROW_DEFS,
           f'<title>{nf}</title>',
           '<polygon points="' + " ".join(f"{a},{b}" for a, b in map(tr, pts)) +
           '" fill="#eef3fb" stroke="none"/>']
    for p, q, label, marks, glued in edges:
        (x1, y1), (x2, y2) = tr(p), tr(q)
        style = 'stroke="#1d3f72" stroke-width="2"' if glued else 'stroke="#888" stroke-dasharray="5,4"'
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>')
        for k in range(marks):
            t = 0.45 + 0.08 * k
            mx, my = x1 + (x2 - x1) * t, y1 + (y2 - y1) * t
            ex, ey = x1 + (x2 - x1) * (t + 0.06), y1 + (y2 - y1) * (t + 0.06)
            out.append(f'<line x1="{round(mx, 3)}" y1="{round(my, 3)}" x2="{round(ex, 3)}" y2="{round(ey, 3)}" '
                       'stroke="#1d3f72" stroke-width="2" marker-end="url(#tip)"/>')
        if label:
            out.append(f'<text x="{round((x1 + x2) / 2 + 6, 3)}" y="{round((y1 + y2) / 2 - 6, 3)}" '
                       f'font-size="13" font-family="sans-serif">{label}</text>')
    o = tr((0, 0))
    for vec, name in (((1, 0), "e1"), ((0, 1), "e2")):
        e = tr(vec)
        out.append(f'<line x1="{o[0]}" y1="{o[1]}" x2="{e[0]}" y2="{e[1]}" stroke="#b0413e" '
                   'stroke-width="1.5" marker-end="url(#tip)"/>')
        out.append(f'<text x="{e[0] + 4}" y="{e[1] - 4}" font-size="11" fill="#b0413e" '
                   f'font-family="sans-serif">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
