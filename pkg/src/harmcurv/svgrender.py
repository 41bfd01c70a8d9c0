"""SVG rendering: curvature heatmaps and level-line overlays.

Output is a fixed 800 x 800 canvas and is byte-deterministic.  Heatmaps
quantize curvature into a monotone light-to-dark ramp (flat is lightest,
the most negative sample darkest) with run-length merged rectangles.
Level lines come from marching squares over the sample lattice; the two
ambiguous corner configurations are resolved by evaluating the part at
the center of the ambiguous square and using its sign.
"""

from __future__ import annotations

import numpy as np

from .curvature import CurvatureGrid, Domain2D
from .levelsets import part_values

CANVAS = 800
_BUCKETS = 64
_LIGHT = (245, 247, 250)
_DARK = (16, 28, 80)
_LEVEL_COLORS = ("#b03a2e", "#1f618d", "#117a65", "#9a7d0a", "#6c3483")


def _fmt(x: float) -> str:
    return format(x, ".4f")


def _bucket_color(b: int) -> str:
    t = b / (_BUCKETS - 1)
    rgb = tuple(
        int(round(light + (dark - light) * t)) for light, dark in zip(_LIGHT, _DARK)
    )
    return "#%02x%02x%02x" % rgb


def _to_canvas(domain: Domain2D, x: float, y: float):
    px = (x - domain.xmin) / domain.width * CANVAS
    py = CANVAS - (y - domain.ymin) / domain.height * CANVAS
    return px, py


def _svg_open() -> list:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
    ]


def _critical_markers(domain: Domain2D, critical) -> list:
    out = []
    for cp in critical:
        px, py = _to_canvas(domain, cp.location.real, cp.location.imag)
        out.append(
            f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="5" fill="#d94f30" '
            'stroke="#2b2b2b" stroke-width="1.5"/>'
        )
    return out


def render_heatmap(grid: CurvatureGrid, critical=()) -> str:
    """Curvature field as a quantized monotone heatmap."""
    lines = _svg_open()
    lines.append(f'<rect width="{CANVAS}" height="{CANVAS}" fill="{_bucket_color(0)}"/>')
    lo = grid.min_value
    if lo < 0.0:
        buckets = np.rint(grid.values / lo * (_BUCKETS - 1)).astype(np.int64)
    else:
        buckets = np.zeros((grid.ny, grid.nx), dtype=np.int64)
    ch = CANVAS / grid.ny
    cw = CANVAS / grid.nx
    for iy in range(grid.ny):
        row = buckets[iy]
        top = CANVAS - (iy + 1) * ch
        ix = 0
        while ix < grid.nx:
            b = int(row[ix])
            run = ix + 1
            while run < grid.nx and row[run] == b:
                run += 1
            if b > 0:  # bucket 0 is the background fill
                lines.append(
                    f'<rect x="{_fmt(ix * cw)}" y="{_fmt(top)}" '
                    f'width="{_fmt((run - ix) * cw)}" height="{_fmt(ch)}" '
                    f'fill="{_bucket_color(b)}"/>'
                )
            ix = run
    lines.extend(_critical_markers(grid.domain, critical))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# marching squares: corner bits are 1=bottom-left, 2=bottom-right,
# 4=top-right, 8=top-left; entries list (edge, edge) segments where edges
# are b(ottom), r(ight), t(op), l(eft)
_SEGMENTS = {
    0: (),
    1: (("l", "b"),),
    2: (("b", "r"),),
    3: (("l", "r"),),
    4: (("r", "t"),),
    6: (("b", "t"),),
    7: (("l", "t"),),
    8: (("t", "l"),),
    9: (("b", "t"),),
    11: (("r", "t"),),
    12: (("l", "r"),),
    13: (("b", "r"),),
    14: (("l", "b"),),
    15: (),
}


def _interp(pa, pb, va: float, vb: float):
    if va == vb:
        s = 0.5
    else:
        s = va / (va - vb)
        s = min(max(s, 0.0), 1.0)
    return pa[0] + s * (pb[0] - pa[0]), pa[1] + s * (pb[1] - pa[1])


def render_levels(P, part, domain: Domain2D, n: int, levels, critical=()) -> str:
    """Level lines of the selected part for each requested level."""
    xs, ys = domain.cell_axes(n, n)
    W = part_values(P, part, xs[None, :] + 1j * ys[:, None])
    lines = _svg_open()
    lines.append(f'<rect width="{CANVAS}" height="{CANVAS}" fill="#fbfbf8"/>')
    for li, c in enumerate(levels):
        V = W - c
        inside = V >= 0.0
        color = _LEVEL_COLORS[li % len(_LEVEL_COLORS)]
        path = []
        codes = (
            inside[:-1, :-1].astype(np.int8)
            | inside[:-1, 1:] << 1
            | inside[1:, 1:] << 2
            | inside[1:, :-1] << 3
        )
        for flat in np.flatnonzero((codes > 0) & (codes < 15)):
            iy, ix = divmod(int(flat), n - 1)
            code = int(codes[iy, ix])
            if code in (5, 10):
                cx = 0.5 * (xs[ix] + xs[ix + 1])
                cy = 0.5 * (ys[iy] + ys[iy + 1])
                center_in = bool(
                    part_values(P, part, np.array([[complex(cx, cy)]]))[0, 0] >= c
                )
                if code == 5:
                    segs = (("b", "r"), ("l", "t")) if center_in else (("l", "b"), ("r", "t"))
                else:
                    segs = (("l", "b"), ("r", "t")) if center_in else (("b", "r"), ("t", "l"))
            else:
                segs = _SEGMENTS[code]
            pbl, pbr = (xs[ix], ys[iy]), (xs[ix + 1], ys[iy])
            ptl, ptr = (xs[ix], ys[iy + 1]), (xs[ix + 1], ys[iy + 1])
            vbl, vbr = V[iy, ix], V[iy, ix + 1]
            vtl, vtr = V[iy + 1, ix], V[iy + 1, ix + 1]
            edge_pts = {
                "b": _interp(pbl, pbr, vbl, vbr),
                "r": _interp(pbr, ptr, vbr, vtr),
                "t": _interp(ptl, ptr, vtl, vtr),
                "l": _interp(pbl, ptl, vbl, vtl),
            }
            for e1, e2 in segs:
                x1, y1 = _to_canvas(domain, *edge_pts[e1])
                x2, y2 = _to_canvas(domain, *edge_pts[e2])
                path.append(f"M{_fmt(x1)} {_fmt(y1)}L{_fmt(x2)} {_fmt(y2)}")
        if path:
            lines.append(
                f'<path d="{"".join(path)}" stroke="{color}" stroke-width="1.2" '
                'fill="none"/>'
            )
    lines.extend(_critical_markers(domain, critical))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
