"""Optimal oriented containers of convex polygons.

Bounding rectangles, isosceles and right triangles and enclosing ellipses of
least area and least perimeter, and how far apart the two optima point.
"""

from .ellipses import Ellipse, EllipseGapReport, ellipse_gap_report, gk_perimeter, min_perimeter_ellipse, mvee
from .errors import (
    DegenerateInput,
    DegenerateTriangle,
    EmptyIntersection,
    GenerationExhausted,
    GeometryError,
    InvalidAxes,
    InvalidInput,
    NoConvergence,
)
from .experiments import ShapeSpec, StudyResult, batch_gap_study, generate
from .geometry import ConvexPolygon, Point, angular_gap, convex_hull, extent, intersect_convex, measures, support
from .rectangles import OrientedRectangle, RectGapReport, bounding_rect_at, min_rects
from .svg import render_svg
from .triangles import (
    TriangleContainer,
    TriGapReport,
    iso_triangle_at,
    min_iso_containers,
    min_right_containers,
    right_triangle_at,
    shared_angle_check,
)

__all__ = [
    "ConvexPolygon", "Point", "angular_gap", "convex_hull", "extent", "intersect_convex", "measures", "support",
    "OrientedRectangle", "RectGapReport", "bounding_rect_at", "min_rects",
    "TriangleContainer", "TriGapReport", "iso_triangle_at", "right_triangle_at",
    "min_iso_containers", "min_right_containers", "shared_angle_check",
    "Ellipse", "EllipseGapReport", "ellipse_gap_report", "gk_perimeter", "min_perimeter_ellipse", "mvee",
    "ShapeSpec", "StudyResult", "batch_gap_study", "generate", "render_svg",
    "GeometryError", "DegenerateInput", "DegenerateTriangle", "EmptyIntersection", "InvalidAxes",
    "InvalidInput", "NoConvergence", "GenerationExhausted",
]
