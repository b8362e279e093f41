"""Deterministic SVG pictures of disks and their images.

Coordinates are exact until the last moment; only the printed numbers are
rounded (six decimals).  The y-axis points up, as in the plane.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .disk import SLDisk, edge_key

MARGIN = Fraction(1, 20)
SIZE = 480
FILL = "#dde8f4"
STROKE = "#44546a"
BOUNDARY = "#1b2838"
ROOF = "#c0392b"
KEY = "#f5b041"
OBSTRUCTIVE = "#8e44ad"


def _num(q) -> str:
    s = f"{float(q):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def annotations_for(d: SLDisk, images: Mapping | None = None) -> dict:
    """Roof edges, the first key or twin-key, and obstructive edges when available."""
    from .disk import find_key_or_twinkey, is_TrV, roof
    from .errors import SLError
    from .extension import obstructive_simplices

    out = {"edges": {}, "triangles": {}}
    if is_TrV(d):
        for e in roof(d):
            out["edges"][edge_key(*e)] = ROOF
        try:
            kf = find_key_or_twinkey(d)
            for t in kf.triangles:
                out["triangles"][tuple(t)] = KEY
        except SLError:
            pass
    if images is not None:
        for e in obstructive_simplices(d, images):
            out["edges"][edge_key(*e)] = OBSTRUCTIVE
    return out


def render_svg(d: SLDisk, images: Mapping | None = None, annotations: Mapping | None = None,
               labels: bool = True) -> str:
    pts = dict(d.points if images is None else {v: images[v] for v in d.vertex_ids})
    ann = annotations or {}
    tri_colors = ann.get("triangles", {})
    edge_colors = {edge_key(*e): c for e, c in ann.get("edges", {}).items()}
    xs = [p[0] for p in pts.values()]
    ys = [p[1] for p in pts.values()]
    w = max(max(xs) - min(xs), Fraction(1, 1000))
    h = max(max(ys) - min(ys), Fraction(1, 1000))
    span = max(w, h)
    x0 = min(xs) - MARGIN * span
    y0 = -max(ys) - MARGIN * span
    vw, vh = w + 2 * MARGIN * span, h + 2 * MARGIN * span
    stroke = span / 300

    def coords(v):
        p = pts[v]
        return _num(p[0]), _num(-p[1])

    def xy(v):
        return ",".join(coords(v))

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="{_num(x0)} {_num(y0)} {_num(vw)} {_num(vh)}">',
        f'<g stroke="{STROKE}" stroke-width="{_num(stroke)}" stroke-linejoin="round">',
    ]
    for t in d.triangles:
        color = tri_colors.get(tuple(t), FILL)
        lines.append(f'<polygon points="{" ".join(xy(v) for v in t)}" fill="{color}"/>')
    lines.append("</g>")
    cyc = d.boundary
    lines.append(f'<polygon points="{" ".join(xy(v) for v in cyc)}" fill="none" '
                 f'stroke="{BOUNDARY}" stroke-width="{_num(2 * stroke)}"/>')
    for e in sorted(edge_colors):
        (x1, y1), (x2, y2) = coords(e[0]), coords(e[1])
        lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                     f'stroke="{edge_colors[e]}" stroke-width="{_num(3 * stroke)}"/>')
    r = span / 120
    for v in d.vertex_ids:
        x, y = coords(v)
        lines.append(f'<circle cx="{x}" cy="{y}" r="{_num(r)}" fill="{BOUNDARY}"/>')
        if labels:
            lines.append(f'<text x="{_num(Fraction(x) + r)}" y="{_num(Fraction(y) - r)}" '
                         f'font-size="{_num(span / 30)}">{v}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
