"""Planar primitives: convex polygons, support functions, clipping, angles."""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateInput, EmptyIntersection

TWO_PI = 2.0 * math.pi

# relative scale factor for every flatness / emptiness test
EPS_REL = 1e-9


class Point(NamedTuple):
    x: float
    y: float


class HalfPlane(NamedTuple):
    """``{p : p . unit(normal_angle) <= offset}``."""

    normal_angle: float
    offset: float

    def contains(self, p, tol: float = 0.0) -> bool:
        return p[0] * math.cos(self.normal_angle) + p[1] * math.sin(self.normal_angle) <= self.offset + tol


def unit(angle: float) -> np.ndarray:
    return np.array([math.cos(angle), math.sin(angle)])


def cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def eps_for(points) -> float:
    pts = np.asarray(points, dtype=float)
    span = float(np.max(pts.max(axis=0) - pts.min(axis=0)))
    return EPS_REL * max(span, 1e-300)


def _signed_area(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _simplify(pts: list, eps: float) -> list:
    """Drop repeated and (near-)collinear vertices from a closed CCW chain."""
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        out = []
        n = len(pts)
        for i in range(n):
            prev = out[-1] if out else pts[i - 1]
            cur = pts[i]
            nxt = pts[(i + 1) % n]
            e1 = math.hypot(cur[0] - prev[0], cur[1] - prev[1])
            e2 = math.hypot(nxt[0] - cur[0], nxt[1] - cur[1])
            if e1 <= eps or e2 <= eps:
                changed = True
                continue
            # straight-through vertex; reflex corners and spikes are kept so validation rejects them
            forward = (cur[0] - prev[0]) * (nxt[0] - cur[0]) + (cur[1] - prev[1]) * (nxt[1] - cur[1]) > 0
            if forward and abs(cross(prev, cur, nxt)) <= eps * max(e1, e2):
                changed = True
                continue
            out.append(cur)
        pts = out
    return pts


class ConvexPolygon:
    """Strictly convex polygon with counter-clockwise vertices.

    Repeated and collinear vertices are merged on construction; a clockwise
    vertex list is reversed. Anything non-convex raises ``DegenerateInput``;
    use :func:`convex_hull` for arbitrary point sets.
    """

    __slots__ = ("_v", "eps")

    def __init__(self, vertices: Sequence[Sequence[float]]):
        pts = np.asarray(vertices, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
            raise DegenerateInput("need at least 3 two-dimensional vertices")
        if not np.all(np.isfinite(pts)):
            raise DegenerateInput("non-finite coordinate")
        eps = eps_for(pts)
        if _signed_area(pts) < 0:
            pts = pts[::-1]
        simple = _simplify([tuple(p) for p in pts], eps)
        if len(simple) < 3:
            raise DegenerateInput("polygon collapses to fewer than 3 vertices")
        arr = np.array(simple, dtype=float)
        n = len(arr)
        for i in range(n):
            if cross(arr[i - 1], arr[i], arr[(i + 1) % n]) <= 0:
                raise DegenerateInput("vertices are not in convex position")
        area = _signed_area(arr)
        if area <= eps * eps_span(arr):
            raise DegenerateInput("polygon has no area")
        # winding must be exactly once around
        turn = 0.0
        for i in range(n):
            e1 = arr[i] - arr[i - 1]
            e2 = arr[(i + 1) % n] - arr[i]
            turn += math.atan2(e1[0] * e2[1] - e1[1] * e2[0], e1 @ e2)
        if abs(turn - TWO_PI) > 1e-6:
            raise DegenerateInput("vertex chain is not simple")
        arr.setflags(write=False)
        self._v = arr
        self.eps = eps

    @property
    def vertices(self) -> np.ndarray:
        return self._v

    def __len__(self) -> int:
        return len(self._v)

    def __repr__(self) -> str:
        inner = ", ".join(f"({x:.6g}, {y:.6g})" for x, y in self._v)
        return f"ConvexPolygon([{inner}])"

    def points(self) -> list[Point]:
        return [Point(float(x), float(y)) for x, y in self._v]

    @property
    def area(self) -> float:
        return _signed_area(self._v)

    @property
    def perimeter(self) -> float:
        d = np.diff(np.vstack([self._v, self._v[:1]]), axis=0)
        return float(np.hypot(d[:, 0], d[:, 1]).sum())

    @property
    def centroid(self) -> Point:
        v = self._v
        w = np.roll(v, -1, axis=0)
        c = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
        a = c.sum() / 2.0
        cx = ((v[:, 0] + w[:, 0]) * c).sum() / (6.0 * a)
        cy = ((v[:, 1] + w[:, 1]) * c).sum() / (6.0 * a)
        return Point(float(cx), float(cy))

    def edges(self) -> list[tuple[np.ndarray, np.ndarray]]:
        n = len(self._v)
        return [(self._v[i], self._v[(i + 1) % n]) for i in range(n)]

    def edge_angles(self) -> np.ndarray:
        """Direction of each edge ``v[i] -> v[i+1]`` in ``[0, 2pi)``."""
        d = np.roll(self._v, -1, axis=0) - self._v
        return np.mod(np.arctan2(d[:, 1], d[:, 0]), TWO_PI)

    def transformed(self, angle: float = 0.0, scale: float = 1.0, shift=(0.0, 0.0)) -> "ConvexPolygon":
        c, s = math.cos(angle), math.sin(angle)
        rot = np.array([[c, -s], [s, c]])
        return ConvexPolygon(scale * self._v @ rot.T + np.asarray(shift, dtype=float))

    def contains(self, p, tol: float | None = None) -> bool:
        tol = self.eps if tol is None else tol
        for a, b in self.edges():
            L = math.hypot(b[0] - a[0], b[1] - a[1])
            if cross(a, b, p) < -tol * L:
                return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, ConvexPolygon) and self._v.shape == other._v.shape and bool(np.all(self._v == other._v))

    def __hash__(self) -> int:
        return hash(self._v.tobytes())


def eps_span(pts: np.ndarray) -> float:
    return float(np.max(pts.max(axis=0) - pts.min(axis=0)))


def _drop_middle(a, b, c, eps: float) -> bool:
    z = cross(a, b, c)
    if z <= 0:
        return True
    # near-collinear: drop b only when it lies between a and c, never when the chain doubles back
    between = (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) > 0
    return between and z <= eps * math.dist(a, c)


def convex_hull(points) -> ConvexPolygon:
    """Monotone-chain hull, CCW from the lexicographically smallest point."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise DegenerateInput("need at least 3 points")
    if not np.all(np.isfinite(pts)):
        raise DegenerateInput("non-finite coordinate")
    eps = eps_for(pts)
    ordered = sorted(set(map(tuple, pts.tolist())))

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _drop_middle(out[-2], out[-1], p, eps):
                out.pop()
            out.append(p)
        return out

    lower = chain(ordered)
    upper = chain(reversed(ordered))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("points are collinear")
    return ConvexPolygon(hull)


def support(C: ConvexPolygon, direction_angle: float) -> tuple[float, int]:
    """Max of ``v . unit(angle)`` over the vertices and the first index attaining it."""
    proj = C.vertices @ unit(direction_angle)
    i = int(np.argmax(proj))
    return float(proj[i]), i


def support_many(vertices: np.ndarray, angles) -> np.ndarray:
    angles = np.asarray(angles, dtype=float)
    dirs = np.stack([np.cos(angles), np.sin(angles)])
    return (vertices @ dirs.reshape(2, -1)).max(axis=0).reshape(angles.shape)


def extent(C: ConvexPolygon, direction_angle: float) -> float:
    """Width of ``C`` measured along the given direction."""
    proj = C.vertices @ unit(direction_angle)
    return float(proj.max() - proj.min())


class Measures(NamedTuple):
    area: float
    perimeter: float
    diameter: float
    diameter_angle: float


def measures(C: ConvexPolygon) -> Measures:
    v = C.vertices
    best, angle = -1.0, 0.0
    tol = C.eps
    n = len(v)
    for i in range(n):
        for j in range(i + 1, n):
            dx, dy = v[j] - v[i]
            d = math.hypot(dx, dy)
            a = math.atan2(dy, dx) % math.pi
            if d > best + tol:
                best, angle = d, a
            elif d >= best - tol and a < angle:
                # equal diameters: keep the smaller direction angle
                best, angle = max(best, d), a
    if angle >= math.pi - 1e-15:
        angle = 0.0
    return Measures(C.area, C.perimeter, best, angle)


def clip_halfplane(pts: list, a, b, eps: float) -> list:
    """Keep the part of ``pts`` left of the directed line ``a -> b``."""
    out = []
    n = len(pts)
    L = math.hypot(b[0] - a[0], b[1] - a[1])
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        dp = cross(a, b, p) / L
        dq = cross(a, b, q) / L
        if dp >= -eps:
            out.append(p)
        if (dp > eps and dq < -eps) or (dp < -eps and dq > eps):
            t = dp / (dp - dq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def intersect_convex(C1: ConvexPolygon, C2: ConvexPolygon) -> ConvexPolygon:
    """``C1 & C2`` by clipping ``C1`` against every edge of ``C2``."""
    eps = max(C1.eps, C2.eps)
    pts = [tuple(p) for p in C1.vertices]
    for a, b in C2.edges():
        pts = clip_halfplane(pts, a, b, eps)
        if len(pts) < 3:
            raise EmptyIntersection("intersection is empty")
    arr = np.array(pts)
    if _signed_area(arr) <= eps * eps_span(np.vstack([C1.vertices, C2.vertices])):
        raise EmptyIntersection("intersection has no area")
    try:
        return ConvexPolygon(arr)
    except DegenerateInput as exc:
        raise EmptyIntersection(str(exc)) from exc


def angular_gap(theta1: float, theta2: float, period: float = math.pi) -> float:
    """Smallest difference of two orientations modulo ``period``, in degrees."""
    d = abs(theta1 - theta2) % period
    d = min(d, period - d)
    return math.degrees(max(d, 0.0))


def polygon_area(points) -> float:
    return abs(_signed_area(np.asarray(points, dtype=float)))


def polygon_perimeter(points) -> float:
    pts = np.asarray(points, dtype=float)
    d = np.diff(np.vstack([pts, pts[:1]]), axis=0)
    return float(np.hypot(d[:, 0], d[:, 1]).sum())


def line_intersection(n1: float, h1: float, n2: float, h2: float) -> np.ndarray:
    """Point on both lines ``p . unit(n_i) = h_i``."""
    c1, s1, c2, s2 = math.cos(n1), math.sin(n1), math.cos(n2), math.sin(n2)
    det = c1 * s2 - s1 * c2
    return np.array([(h1 * s2 - h2 * s1) / det, (c1 * h2 - c2 * h1) / det])


def contact_length(C: ConvexPolygon, normal_angle: float, offset: float, tol: float | None = None) -> float:
    """Length of the part of ``C`` lying on the line ``p . unit(normal) = offset``."""
    tol = C.eps if tol is None else tol
    u = unit(normal_angle)
    on = C.vertices[np.abs(C.vertices @ u - offset) <= tol]
    if len(on) < 2:
        return 0.0
    t = on @ np.array([-u[1], u[0]])
    return float(t.max() - t.min())
