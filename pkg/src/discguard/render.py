"""SVG figures: polygon outline, shaded coverage discs, centers."""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

import numpy as np

from .deployment import Deployment
from .geometry import PolygonSet

MARGIN = 0.05
DISC_FILL = "#1f77b4"
DISC_OPACITY = 0.25


def _num(v: float) -> str:
    s = f"{float(v):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _ring_path(vertices) -> str:
    # y is flipped so the figure reads with y pointing up.
    pts = [f"{_num(x)},{_num(-y)}" for x, y in vertices]
    return "M" + " L".join(pts) + " Z"


def render_svg(poly: PolygonSet, deployment: Deployment | None = None, samples=None,
               title: str | None = None) -> str:
    """Return an SVG 1.1 document; identical inputs give identical bytes."""
    x0, y0, x1, y1 = poly.bounds()
    if deployment is not None:
        c, r = np.asarray(deployment.centers), deployment.radius
        x0, y0 = min(x0, float((c[:, 0] - r).min())), min(y0, float((c[:, 1] - r).min()))
        x1, y1 = max(x1, float((c[:, 0] + r).max())), max(y1, float((c[:, 1] + r).max()))
    w, h = x1 - x0, y1 - y0
    pad = MARGIN * max(w, h)
    vb = (x0 - pad, -(y1 + pad), w + 2 * pad, h + 2 * pad)
    stroke = max(w, h) / 400.0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{" ".join(_num(v) for v in vb)}" width="600" height="{_num(600 * vb[3] / vb[2])}">',
    ]
    if title:
        out.append(f"<title>{title.replace('&', '&amp;').replace('<', '&lt;')}</title>")
    d = " ".join(_ring_path(ring.vertices) for ring in poly.rings())
    out.append(
        f'<path d={quoteattr(d)} fill="#f2f2f2" fill-rule="evenodd" stroke="#000000" '
        f'stroke-width="{_num(stroke)}"/>'
    )
    if deployment is not None:
        out.append(f'<g fill="{DISC_FILL}" fill-opacity="{DISC_OPACITY}" stroke="{DISC_FILL}" '
                   f'stroke-width="{_num(stroke)}">')
        for x, y in deployment.centers:
            out.append(f'<circle cx="{_num(x)}" cy="{_num(-y)}" r="{_num(deployment.radius)}"/>')
        out.append("</g>")
        out.append('<g fill="#d62728">')
        for x, y in deployment.centers:
            out.append(f'<rect x="{_num(x - 2 * stroke)}" y="{_num(-y - 2 * stroke)}" '
                       f'width="{_num(4 * stroke)}" height="{_num(4 * stroke)}"/>')
        out.append("</g>")
    if samples is not None:
        pts = samples.points if hasattr(samples, "points") else np.asarray(samples, dtype=float)
        out.append('<g fill="#555555">')
        for x, y in pts:
            out.append(f'<rect x="{_num(x - stroke)}" y="{_num(-y - stroke)}" '
                       f'width="{_num(2 * stroke)}" height="{_num(2 * stroke)}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
