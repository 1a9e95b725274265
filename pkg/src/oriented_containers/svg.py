"""Plain SVG 1.1 output for regions and their containers.

Input regions are drawn as filled ``<polygon>`` elements, rectangles as
rotated ``<rect>``, triangles as ``<path>`` and ellipses as ``<ellipse>``,
all unfilled. World y points up; the drawing negates y so the picture is
not mirrored.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .ellipses import Ellipse
from .geometry import ConvexPolygon
from .rectangles import OrientedRectangle
from .triangles import TriangleContainer

CANVAS = 800
MARGIN = 0.05
PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _f(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _outline(obj) -> np.ndarray:
    if isinstance(obj, ConvexPolygon):
        return obj.vertices
    if isinstance(obj, OrientedRectangle):
        return obj.corners()
    if isinstance(obj, TriangleContainer):
        return obj.vertices
    if isinstance(obj, Ellipse):
        return obj.boundary(64)
    raise TypeError(f"cannot draw {type(obj).__name__}")


def _element(obj, style: dict) -> str:
    stroke = style.get("stroke", "#000000")
    dash = f' stroke-dasharray="{style["dash"]}"' if style.get("dash") else ""
    common = f'stroke="{stroke}" stroke-width="{style.get("width", 1.5)}" vector-effect="non-scaling-stroke"{dash}'
    label = f' id="{style["id"]}"' if style.get("id") else ""
    if isinstance(obj, ConvexPolygon):
        pts = " ".join(f"{_f(x)},{_f(-y)}" for x, y in obj.vertices)
        fill = style.get("fill", "#c7c7c7")
        return f'<polygon{label} points="{pts}" fill="{fill}" fill-opacity="0.6" {common}/>'
    if isinstance(obj, OrientedRectangle):
        cx, cy = obj.center
        w, h = 2 * obj.half_long, 2 * obj.half_short
        rot = f"rotate({_f(-math.degrees(obj.orientation))} {_f(cx)} {_f(-cy)})"
        return (f'<rect{label} x="{_f(cx - w / 2)}" y="{_f(-cy - h / 2)}" width="{_f(w)}" height="{_f(h)}" '
                f'transform="{rot}" fill="none" {common}/>')
    if isinstance(obj, TriangleContainer):
        (x0, y0), (x1, y1), (x2, y2) = obj.vertices
        d = f"M {_f(x0)} {_f(-y0)} L {_f(x1)} {_f(-y1)} L {_f(x2)} {_f(-y2)} Z"
        return f'<path{label} d="{d}" fill="none" {common}/>'
    if isinstance(obj, Ellipse):
        cx, cy = obj.center
        rot = f"rotate({_f(-math.degrees(obj.phi))} {_f(cx)} {_f(-cy)})"
        return (f'<ellipse{label} cx="{_f(cx)}" cy="{_f(-cy)}" rx="{_f(obj.a)}" ry="{_f(obj.b)}" '
                f'transform="{rot}" fill="none" {common}/>')
    raise TypeError(f"cannot draw {type(obj).__name__}")


def svg_document(shapes: list, styles: list | None = None, title: str = "") -> str:
    """SVG text for ``shapes``; ``styles`` are per-shape dicts (stroke, fill, dash, width, id)."""
    if not shapes:
        raise ValueError("nothing to draw")
    styles = list(styles or [])
    k = 0
    for i, obj in enumerate(shapes):
        if i >= len(styles):
            styles.append({})
        if not isinstance(obj, ConvexPolygon) and "stroke" not in styles[i]:
            styles[i] = {**styles[i], "stroke": PALETTE[k % len(PALETTE)]}
            k += 1
    pts = np.vstack([_outline(o) for o in shapes])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    side = float(max(hi - lo)) or 1.0
    mid = (lo + hi) / 2
    half = side / 2 * (1 + 2 * MARGIN)
    view = f"{_f(mid[0] - half)} {_f(-mid[1] - half)} {_f(2 * half)} {_f(2 * half)}"
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="{view}">',
    ]
    if title:
        lines.append(f"<title>{title}</title>")
    # filled regions first so container outlines stay visible
    order = sorted(range(len(shapes)), key=lambda i: not isinstance(shapes[i], ConvexPolygon))
    lines += [_element(shapes[i], styles[i]) for i in order]
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(shapes: list, styles: list | None = None, path=None, title: str = "") -> str:
    text = svg_document(shapes, styles, title)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
