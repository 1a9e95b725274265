"""Minimum-area and minimum-perimeter bounding rectangles.

An optimal rectangle always has a side flush with an edge of the input, so
trying the bounding rectangle aligned with each edge is enough. The module
also builds the three rectangle constructions: the slightly obtuse
isosceles triangle, the shaved-square hexagon family and the octagon cut
out of two concentric rectangles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import ConvexPolygon, Point, angular_gap, contact_length, intersect_convex

TIE_REL = 1e-9
TOL_OPT = 1e-6


@dataclass(frozen=True)
class OrientedRectangle:
    center: Point
    half_long: float
    half_short: float
    orientation: float
    degenerate_square: bool = False

    @property
    def area(self) -> float:
        return 4.0 * self.half_long * self.half_short

    @property
    def perimeter(self) -> float:
        return 4.0 * (self.half_long + self.half_short)

    @property
    def diagonal(self) -> float:
        return 2.0 * math.hypot(self.half_long, self.half_short)

    def side_directions(self) -> tuple[float, ...]:
        if self.degenerate_square:
            return (self.orientation, (self.orientation + math.pi / 2) % math.pi)
        return (self.orientation,)

    def corners(self) -> np.ndarray:
        u = np.array([math.cos(self.orientation), math.sin(self.orientation)])
        v = np.array([-u[1], u[0]])
        c = np.array(self.center)
        L, S = self.half_long, self.half_short
        return np.array([c - L * u - S * v, c + L * u - S * v, c + L * u + S * v, c - L * u + S * v])

    def polygon(self) -> ConvexPolygon:
        return ConvexPolygon(self.corners())

    def supporting_lines(self) -> list[tuple[float, float]]:
        """(outward normal angle, offset) for the four sides."""
        c = np.array(self.center)
        out = []
        for k, half in enumerate((self.half_short, self.half_long, self.half_short, self.half_long)):
            n = self.orientation - math.pi / 2 + k * math.pi / 2
            out.append((n % (2 * math.pi), float(c @ [math.cos(n), math.sin(n)]) + half))
        return out

    def contains(self, p, tol: float = 0.0) -> bool:
        d = np.asarray(p, dtype=float) - np.array(self.center)
        u = np.array([math.cos(self.orientation), math.sin(self.orientation)])
        return abs(d @ u) <= self.half_long + tol and abs(d @ [-u[1], u[0]]) <= self.half_short + tol

    def to_dict(self) -> dict:
        return {
            "center": [self.center.x, self.center.y],
            "width": 2 * self.half_long,
            "height": 2 * self.half_short,
            "orientation_deg": math.degrees(self.orientation),
            "degenerate_square": self.degenerate_square,
            "area": self.area,
            "perimeter": self.perimeter,
        }


def rect_gap(r1: OrientedRectangle, r2: OrientedRectangle) -> float:
    """Orientation gap in degrees; a square counts with both side directions."""
    return min(angular_gap(a, b, math.pi) for a in r1.side_directions() for b in r2.side_directions())


def rect_matches(r: OrientedRectangle, ref: OrientedRectangle, tol: float = TOL_OPT) -> bool:
    scale = max(ref.half_long, 1e-300)
    return (
        abs(r.half_long - ref.half_long) <= tol * scale
        and abs(r.half_short - ref.half_short) <= tol * scale
        and math.dist(r.center, ref.center) <= tol * scale
        and rect_gap(r, ref) <= math.degrees(tol)
    )


@dataclass
class RectGapReport:
    r_area: OrientedRectangle
    r_perim: OrientedRectangle
    gap_degrees: float
    area_ties: list = field(default_factory=list)
    perim_ties: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "r_area": self.r_area.to_dict(),
            "r_perim": self.r_perim.to_dict(),
            "gap_degrees": self.gap_degrees,
            "area_ties": [r.to_dict() for r in self.area_ties],
            "perim_ties": [r.to_dict() for r in self.perim_ties],
        }


def _rect_from_frame(C: ConvexPolygon, theta: float) -> OrientedRectangle:
    v = C.vertices
    u = np.array([math.cos(theta), math.sin(theta)])
    w = np.array([-u[1], u[0]])
    pu, pw = v @ u, v @ w
    lo_u, hi_u, lo_w, hi_w = pu.min(), pu.max(), pw.min(), pw.max()
    hu, hw = (hi_u - lo_u) / 2, (hi_w - lo_w) / 2
    cu, cw = (hi_u + lo_u) / 2, (hi_w + lo_w) / 2
    center = Point(float(cu * u[0] + cw * w[0]), float(cu * u[1] + cw * w[1]))
    if abs(hu - hw) <= C.eps:
        # square: orientation is the side direction reduced mod pi/2
        return OrientedRectangle(center, float(max(hu, hw)), float(min(hu, hw)), float(theta % (math.pi / 2)), True)
    if hu >= hw:
        return OrientedRectangle(center, float(hu), float(hw), float(theta % math.pi))
    return OrientedRectangle(center, float(hw), float(hu), float((theta + math.pi / 2) % math.pi))


def bounding_rect_at(C: ConvexPolygon, theta: float) -> OrientedRectangle:
    """Smallest rectangle containing ``C`` with a side parallel to ``theta``."""
    # theta and theta + pi/2 describe the same frame
    return _rect_from_frame(C, theta % (math.pi / 2))


def bounding_rect_objectives(vertices: np.ndarray, thetas) -> tuple[np.ndarray, np.ndarray]:
    """Area and perimeter of the bounding rectangle at every angle in ``thetas``."""
    thetas = np.asarray(thetas, dtype=float)
    c, s = np.cos(thetas), np.sin(thetas)
    pu = np.outer(vertices[:, 0], c) + np.outer(vertices[:, 1], s)
    pw = np.outer(vertices[:, 1], c) - np.outer(vertices[:, 0], s)
    eu = pu.max(axis=0) - pu.min(axis=0)
    ew = pw.max(axis=0) - pw.min(axis=0)
    return eu * ew, 2 * (eu + ew)


def flush_candidates(C: ConvexPolygon) -> list[OrientedRectangle]:
    return [bounding_rect_at(C, a) for a in C.edge_angles()]


def _distinct(rects: list[OrientedRectangle]) -> list[OrientedRectangle]:
    out: list[OrientedRectangle] = []
    for r in rects:
        if not any(rect_matches(r, q, tol=TIE_REL) for q in out):
            out.append(r)
    return sorted(out, key=lambda r: r.orientation)


def min_rects(C: ConvexPolygon) -> RectGapReport:
    """Area- and perimeter-optimal rectangles of ``C`` with the orientation gap."""
    cands = flush_candidates(C)
    areas = [r.area for r in cands]
    perims = [r.perimeter for r in cands]
    ia = int(np.argmin(areas))
    ip = int(np.argmin(perims))
    a_tol = TIE_REL * areas[ia]
    p_tol = TIE_REL * perims[ip]
    area_ties = _distinct([r for r in cands if r.area <= areas[ia] + a_tol])
    perim_ties = _distinct([r for r in cands if r.perimeter <= perims[ip] + p_tol])
    r_area, r_perim = cands[ia], cands[ip]
    return RectGapReport(r_area, r_perim, rect_gap(r_area, r_perim), area_ties, perim_ties)


def flush_contact(C: ConvexPolygon, r: OrientedRectangle) -> float:
    """Longest contact segment between ``C`` and a side of ``r``."""
    return max(contact_length(C, n, h) for n, h in r.supporting_lines())


def axis_rectangle(w: float, h: float, angle_deg: float = 0.0, center=(0.0, 0.0)) -> ConvexPolygon:
    a = math.radians(angle_deg)
    u = np.array([math.cos(a), math.sin(a)]) * w / 2
    v = np.array([-math.sin(a), math.cos(a)]) * h / 2
    c = np.asarray(center, dtype=float)
    return ConvexPolygon([c - u - v, c + u - v, c + u + v, c - u + v])


def fig1_triangle(apex_deg: float = 90.0, side: float = 1.0) -> ConvexPolygon:
    """Isosceles triangle with apex at the origin and the given apex angle.

    At 90 degrees this is the triangle (0,0), (1,0), (0,1); other apex angles
    open the two legs symmetrically about the 45 degree diagonal.
    """
    half = math.radians(apex_deg) / 2
    a1, a2 = math.pi / 4 - half, math.pi / 4 + half
    return ConvexPolygon([(0.0, 0.0), (side * math.cos(a1), side * math.sin(a1)), (side * math.cos(a2), side * math.sin(a2))])


@dataclass
class OctagonResult:
    polygon: ConvexPolygon
    report: RectGapReport
    valid: bool
    preconditions: dict
    r1: OrientedRectangle
    r2: OrientedRectangle


def _as_rect(w: float, h: float, angle_deg: float) -> OrientedRectangle:
    a = math.radians(angle_deg)
    if w >= h:
        return OrientedRectangle(Point(0.0, 0.0), w / 2, h / 2, a % math.pi)
    return OrientedRectangle(Point(0.0, 0.0), h / 2, w / 2, (a + math.pi / 2) % math.pi)


def octagon_preconditions(w1: float, h1: float, w2: float, h2: float, A: float) -> dict:
    return {
        "perimeter_r1_lt_r2": 2 * (w1 + h1) < 2 * (w2 + h2),
        "area_r1_gt_r2": w1 * h1 > w2 * h2,
        "diagonal_r1_gt_length_r2": math.hypot(w1, h1) > w2,
        "angle_gt_45": A > 45.0,
    }


def octagon_construct(w1: float, h1: float, w2: float, h2: float, A: float) -> OctagonResult:
    """Intersect a ``w1 x h1`` rectangle with a concentric ``w2 x h2`` one turned by ``A`` degrees.

    ``valid`` holds when the size/angle preconditions are met and the
    optimal rectangles of the intersection are exactly the two generators,
    the first as perimeter optimum and the second as area optimum.
    """
    if not (w1 > h1 > 0 and w2 > h2 > 0 and 0 < A < 90):
        raise ValueError("need w1 > h1 > 0, w2 > h2 > 0 and 0 < A < 90")
    R1, R2 = axis_rectangle(w1, h1, 0.0), axis_rectangle(w2, h2, A)
    O = intersect_convex(R1, R2)
    report = min_rects(O)
    pre = octagon_preconditions(w1, h1, w2, h2, A)
    r1, r2 = _as_rect(w1, h1, 0.0), _as_rect(w2, h2, A)
    valid = all(pre.values()) and rect_matches(report.r_perim, r1) and rect_matches(report.r_area, r2)
    return OctagonResult(O, report, valid, pre, r1, r2)


def octagon_sweep(w1: float, h1: float, w2: float, h2: float, start: float = 46.0, stop: float = 89.0, step: float = 0.5):
    """Validity along an angle sweep; returns ``(angles, valid flags, largest valid angle)``."""
    n = int(round((stop - start) / step)) + 1
    angles = [start + i * step for i in range(n)]
    flags = [octagon_construct(w1, h1, w2, h2, A).valid for A in angles]
    best = max((A for A, ok in zip(angles, flags) if ok), default=None)
    return angles, flags, best


def hexagon_family(s: float) -> ConvexPolygon:
    """Unit square with right isosceles corners of leg ``s`` cut at (1,0) and (0,1)."""
    if not 0 <= s < 1:
        raise ValueError("s must lie in [0, 1)")
    return ConvexPolygon([(0.0, 0.0), (1 - s, 0.0), (1.0, s), (1.0, 1.0), (s, 1.0), (0.0, 1 - s)])


def _diagonal_wins(s: float, which: str) -> bool:
    rep = min_rects(hexagon_family(s))
    r = rep.r_area if which == "area" else rep.r_perim
    return not r.degenerate_square and angular_gap(r.orientation, math.pi / 4) < 22.5


def _switch(which: str, grid: list[float], tol: float) -> float:
    k = next(i for i, s in enumerate(grid) if _diagonal_wins(s, which))
    lo, hi = grid[k - 1], grid[k]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _diagonal_wins(mid, which):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def hexagon_sweep(steps: int = 1000, tol: float = 1e-6) -> tuple[float, float]:
    """Thinning values where the area and perimeter optima leave the square."""
    if steps < 100:
        raise ValueError("steps must be >= 100")
    grid = [i / steps for i in range(steps)]
    return _switch("area", grid, tol), _switch("perim", grid, tol)
