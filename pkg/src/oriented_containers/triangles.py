"""Isosceles and right-triangle containers.

Every container here is the intersection of three supporting half-planes of
the input, so a triangle is pinned down by its side directions alone:

* isosceles: apex direction ``theta`` and apex half-angle ``alpha``; the base
  has outward normal ``theta + pi`` and the legs ``theta -+ (pi/2 - alpha)``;
* right: one leg along ``theta``, the other along ``theta + pi/2`` and the
  hypotenuse with outward normal ``psi`` in ``(theta, theta + pi/2)``.

Optimal containers come from a 1-degree lattice over both parameters
followed by Nelder-Mead polishing from the best local minima of the lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import numpy as np

from . import _kernels
from .errors import DegenerateTriangle, InvalidInput
from .geometry import (
    TWO_PI,
    ConvexPolygon,
    angular_gap,
    contact_length,
    intersect_convex,
    measures,
    support_many,
)
from .rectangles import axis_rectangle

HALF_PI = math.pi / 2
PARAM_TOL = 1e-6
FLUSH_REL = 1e-6
# distance (relative to the diameter) within which a vertex counts as lying on a side
ON_LINE_REL = 1e-7
N_RESTARTS = 4


@dataclass(frozen=True)
class IsoParams:
    theta: float
    alpha: float


@dataclass(frozen=True)
class RightParams:
    theta: float
    psi: float

    @property
    def rect_orientation(self) -> float:
        # legs L1 (along theta) and L2 satisfy tan(psi - theta) = L1 / L2
        if self.psi - self.theta >= math.pi / 4:
            return self.theta % math.pi
        return (self.theta + HALF_PI) % math.pi


@dataclass
class TriangleContainer:
    params: Union[IsoParams, RightParams]
    vertices: np.ndarray
    area: float
    perimeter: float
    flush_sides: tuple = (False, False, False)
    near_symmetric: bool = False

    @property
    def kind(self) -> str:
        return "iso" if isinstance(self.params, IsoParams) else "right"

    @property
    def orientation(self) -> float:
        if isinstance(self.params, IsoParams):
            return self.params.theta
        return self.params.rect_orientation

    def orientations(self) -> tuple[float, ...]:
        """All equally valid orientations (several for symmetric containers)."""
        if not self.near_symmetric:
            return (self.orientation,)
        if isinstance(self.params, IsoParams):
            return tuple((self.params.theta + k * TWO_PI / 3) % TWO_PI for k in range(3))
        return (self.params.theta % math.pi, (self.params.theta + HALF_PI) % math.pi)

    def polygon(self) -> ConvexPolygon:
        return ConvexPolygon(self.vertices)

    def side_lengths(self) -> np.ndarray:
        d = np.roll(self.vertices, -1, axis=0) - self.vertices
        return np.hypot(d[:, 0], d[:, 1])

    def contains(self, p, tol: float = 0.0) -> bool:
        v = self.vertices
        for i in range(3):
            a, b = v[i], v[(i + 1) % 3]
            L = math.hypot(*(b - a))
            if ((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])) / L < -tol:
                return False
        return True

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "vertices": self.vertices.tolist(),
            "area": self.area,
            "perimeter": self.perimeter,
            "flush_sides": list(self.flush_sides),
            "orientation_deg": math.degrees(self.orientation),
        }
        if isinstance(self.params, IsoParams):
            d["theta_deg"] = math.degrees(self.params.theta)
            d["alpha_deg"] = math.degrees(self.params.alpha)
            d["near_equilateral"] = self.near_symmetric
        else:
            d["theta_deg"] = math.degrees(self.params.theta)
            d["psi_deg"] = math.degrees(self.params.psi)
            d["near_isosceles"] = self.near_symmetric
        return d


@dataclass
class TriGapReport:
    t_area: TriangleContainer
    t_perim: TriangleContainer
    gap_degrees: float
    family: str
    shared_angle_with_input: bool | None = None
    shared: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "t_area": self.t_area.to_dict(),
            "t_perim": self.t_perim.to_dict(),
            "gap_degrees": self.gap_degrees,
            "shared_angle_with_input": self.shared_angle_with_input,
            **({"shared": self.shared} if self.shared else {}),
        }


# -- normals -----------------------------------------------------------------

def iso_normals(theta, alpha):
    """Outward normals (base, right leg, left leg); vectorized."""
    theta = np.asarray(theta, dtype=float)
    beta = HALF_PI - np.asarray(alpha, dtype=float)
    return np.stack(np.broadcast_arrays(theta + math.pi, theta - beta, theta + beta), axis=-1)


def right_normals(theta, psi):
    """Outward normals (leg along theta, hypotenuse, leg along theta + pi/2)."""
    theta = np.asarray(theta, dtype=float)
    return np.stack(np.broadcast_arrays(theta - HALF_PI, np.asarray(psi, dtype=float), theta + math.pi), axis=-1)


def _triangle(normals: np.ndarray, offsets: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vertices, area and perimeter of ``{p : p . n_i <= h_i}``, normals in CCW order.

    Works on arrays of shape ``(..., 3)``; vertices come back as ``(..., 3, 2)``.
    """
    c, s = np.cos(normals), np.sin(normals)
    i, j = np.array([0, 1, 2]), np.array([1, 2, 0])
    det = c[..., i] * s[..., j] - s[..., i] * c[..., j]
    hi, hj = offsets[..., i], offsets[..., j]
    x = (hi * s[..., j] - hj * s[..., i]) / det
    y = (c[..., i] * hj - c[..., j] * hi) / det
    verts = np.stack([x, y], axis=-1)
    d = np.roll(verts, -1, axis=-2) - verts
    lengths = np.hypot(d[..., 0], d[..., 1])
    area = 0.5 * np.abs((verts[..., 0] * np.roll(verts[..., 1], -1, axis=-1)
                         - np.roll(verts[..., 0], -1, axis=-1) * verts[..., 1]).sum(axis=-1))
    return verts, area, lengths.sum(axis=-1)


def _make(C: ConvexPolygon, params, normals: np.ndarray) -> TriangleContainer:
    offsets = support_many(C.vertices, normals)
    verts, area, perim = _triangle(normals, offsets)
    # first vertex: the corner between the first two sides
    diam = measures(C).diameter
    flush = tuple(
        contact_length(C, float(normals[k]), float(offsets[k]), tol=ON_LINE_REL * diam) > FLUSH_REL * diam
        for k in range(3)
    )
    out = TriangleContainer(params, verts, float(area), float(perim), flush)
    L = out.side_lengths()
    if isinstance(params, IsoParams):
        out.near_symmetric = bool(L.max() - L.min() <= 1e-6 * L.max())
    else:
        legs = (L[2], L[1])  # sides with normals theta - pi/2 and theta + pi
        out.near_symmetric = bool(abs(legs[0] - legs[1]) <= 1e-6 * max(legs))
    return out


def iso_triangle_at(C: ConvexPolygon, theta: float, alpha: float) -> TriangleContainer:
    """Smallest isosceles triangle around ``C`` with apex direction ``theta`` and half-angle ``alpha``."""
    if not 0.0 < alpha < HALF_PI:
        raise DegenerateTriangle("apex half-angle must lie strictly between 0 and pi/2")
    theta = theta % TWO_PI
    return _make(C, IsoParams(theta, alpha), iso_normals(theta, alpha))


def right_triangle_at(C: ConvexPolygon, theta: float, psi: float) -> TriangleContainer:
    """Smallest right triangle around ``C`` with legs along ``theta`` and ``theta + pi/2``."""
    if not theta < psi < theta + HALF_PI:
        raise DegenerateTriangle("psi must lie strictly between theta and theta + pi/2")
    shift = math.floor(theta / TWO_PI) * TWO_PI
    theta, psi = theta - shift, psi - shift
    return _make(C, RightParams(theta, psi), right_normals(theta, psi))


# -- optimisation -------------------------------------------------------------

_LATTICE_THETA = np.arange(360)
_LATTICE_SECOND = np.arange(1, 90)


@lru_cache(maxsize=None)
def _lattice_tables(family: str):
    """Support-direction indices and Cramer coefficients for every lattice cell."""
    th = _LATTICE_THETA[:, None]
    p2 = _LATTICE_SECOND[None, :]
    if family == "iso":
        idx = np.stack(np.broadcast_arrays(th + 180, th - 90 + p2, th + 90 - p2), axis=-1) % 360
    else:
        idx = np.stack(np.broadcast_arrays(th - 90, th + p2, th + 180), axis=-1) % 360
    n = np.radians(idx.astype(float))
    c, s = np.cos(n), np.sin(n)
    i, j = np.array([0, 1, 2]), np.array([1, 2, 0])
    det = c[..., i] * s[..., j] - s[..., i] * c[..., j]
    # vertex k = lines k and k+1: x = xi*h_k + xj*h_k+1, y = yi*h_k + yj*h_k+1
    return idx, s[..., j] / det, -s[..., i] / det, -c[..., j] / det, c[..., i] / det


def _lattice(C: ConvexPolygon, family: str) -> tuple[np.ndarray, np.ndarray]:
    """Area and perimeter on the (theta, second parameter) 1-degree lattice, shape (360, 89)."""
    h_deg = support_many(C.vertices, np.radians(np.arange(360)))
    idx, xi, xj, yi, yj = _lattice_tables(family)
    h = h_deg[idx]
    hn = h[..., [1, 2, 0]]
    x = xi * h + xj * hn
    y = yi * h + yj * hn
    x0, x1, x2 = x[..., 0], x[..., 1], x[..., 2]
    y0, y1, y2 = y[..., 0], y[..., 1], y[..., 2]
    area = 0.5 * np.abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0))
    perim = np.hypot(x1 - x0, y1 - y0) + np.hypot(x2 - x1, y2 - y1) + np.hypot(x0 - x2, y0 - y2)
    return area, perim


def lattice_minima(C: ConvexPolygon, family: str) -> dict:
    """Best lattice cells for area and perimeter; an independent check on the optimiser."""
    area, perim = _lattice(C, family)
    out = {}
    for name, grid in (("area", area), ("perimeter", perim)):
        k = np.unravel_index(int(np.argmin(grid)), grid.shape)
        out[name] = (float(grid[k]), math.radians(int(_LATTICE_THETA[k[0]])), math.radians(int(_LATTICE_SECOND[k[1]])))
    return out


_KIND = {
    ("iso", 1): _kernels.ISO_AREA,
    ("iso", 2): _kernels.ISO_PERIMETER,
    ("right", 1): _kernels.RIGHT_AREA,
    ("right", 2): _kernels.RIGHT_PERIMETER,
}


def _polish(kind: int, xs: np.ndarray, ys: np.ndarray, x0, step: float) -> tuple[np.ndarray, float]:
    """Nelder-Mead with restarts from a shrinking simplex until no further gain."""
    x = np.asarray(x0, dtype=float)
    fx = _kernels.objective(kind, xs, ys, x[0], x[1], 0.0)
    for _ in range(6):
        p, q, f, _ = _kernels.simplex_search(kind, xs, ys, 0.0, x[0], x[1], step, step,
                                             1e-11, 1e-15 * abs(fx), 20000)
        gained = fx - f
        if gained > 0:
            x, fx = np.array([p, q]), f
        if gained <= 1e-14 * abs(fx) and step <= 1e-4:
            break
        step = max(step * 0.05, 1e-6)
    return x, fx


def _lattice_seeds(grid: np.ndarray, count: int) -> list[tuple[int, int]]:
    """Best ``count`` lattice cells that are local minima (theta wraps around)."""
    padded = np.pad(grid, ((1, 1), (1, 1)), mode="constant", constant_values=np.inf)
    padded[0, 1:-1], padded[-1, 1:-1] = grid[-1], grid[0]
    is_min = np.ones(grid.shape, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                nb = padded[1 + di:1 + di + grid.shape[0], 1 + dj:1 + dj + grid.shape[1]]
                is_min &= grid <= nb
    flat = np.flatnonzero(is_min.ravel())
    flat = flat[np.argsort(grid.ravel()[flat], kind="stable")][:count]
    if len(flat) < count:
        extra = [k for k in np.argsort(grid, axis=None, kind="stable") if k not in set(flat)]
        flat = np.concatenate([flat, extra[: count - len(flat)]]).astype(int)
    return [tuple(int(t) for t in np.unravel_index(int(k), grid.shape)) for k in flat]


def _optimise(C: ConvexPolygon, family: str, which: int, grid: np.ndarray) -> np.ndarray:
    kind = _KIND[family, which]
    xs = np.ascontiguousarray(C.vertices[:, 0])
    ys = np.ascontiguousarray(C.vertices[:, 1])
    best_x, best_f = None, math.inf
    for i, j in _lattice_seeds(grid, N_RESTARTS):
        x0 = [math.radians(float(_LATTICE_THETA[i])), math.radians(float(_LATTICE_SECOND[j]))]
        x, fx = _polish(kind, xs, ys, x0, math.radians(1.0))
        # deterministic reduction: strictly better wins, ties keep the earlier seed
        if fx < best_f:
            best_x, best_f = x, fx
    return best_x


def _gap(t1: TriangleContainer, t2: TriangleContainer, period: float) -> float:
    return min(angular_gap(a, b, period) for a in t1.orientations() for b in t2.orientations())


def min_iso_containers(C: ConvexPolygon) -> TriGapReport:
    """Minimum-area and minimum-perimeter isosceles triangles containing ``C``."""
    area, perim = _lattice(C, "iso")
    xa = _optimise(C, "iso", 1, area)
    xp = _optimise(C, "iso", 2, perim)
    ta = iso_triangle_at(C, xa[0], xa[1])
    tp = iso_triangle_at(C, xp[0], xp[1])
    rep = TriGapReport(ta, tp, _gap(ta, tp, TWO_PI), "iso")
    if len(C) == 3:
        sa, sp = shared_angle_check(C, ta, tol=_loose_tol(C)), shared_angle_check(C, tp, tol=_loose_tol(C))
        rep.shared = {"t_area": sa, "t_perim": sp}
        rep.shared_angle_with_input = sa and sp
    return rep


def min_right_containers(C: ConvexPolygon) -> TriGapReport:
    """Minimum-area and minimum-perimeter right triangles containing ``C``."""
    area, perim = _lattice(C, "right")
    xa = _optimise(C, "right", 1, area)
    xp = _optimise(C, "right", 2, perim)
    ta = right_triangle_at(C, xa[0], xa[0] + xa[1])
    tp = right_triangle_at(C, xp[0], xp[0] + xp[1])
    return TriGapReport(ta, tp, _gap(ta, tp, math.pi), "right")


# -- the angle-sharing claim --------------------------------------------------

def _loose_tol(C: ConvexPolygon) -> float:
    return ON_LINE_REL * 10 * measures(C).diameter


def shared_angle_check(T: ConvexPolygon, container: TriangleContainer, tol: float | None = None) -> bool:
    """True when a corner of ``container`` is a corner of ``T`` with both sides along ``T``'s sides."""
    if len(T) != 3:
        raise InvalidInput("shared_angle_check needs a triangle")
    tol = T.eps if tol is None else tol
    tv, cv = T.vertices, container.vertices
    for i in range(3):
        for j in range(3):
            if math.dist(cv[i], tv[j]) > tol:
                continue
            rays = [cv[(i + 1) % 3] - cv[i], cv[(i + 2) % 3] - cv[i]]
            nbrs = [tv[(j + 1) % 3] - tv[j], tv[(j + 2) % 3] - tv[j]]
            used = set()
            for nb in nbrs:
                for k, r in enumerate(rays):
                    if k in used:
                        continue
                    rn = r / np.hypot(*r)
                    if nb @ rn > 0 and abs(nb[0] * rn[1] - nb[1] * rn[0]) <= tol:
                        used.add(k)
                        break
            if len(used) == 2:
                return True
    return False


def shared_angle_candidates(T: ConvexPolygon) -> list[TriangleContainer]:
    """Every minimal isosceles container that keeps one corner of ``T`` (apex or base angle)."""
    v = T.vertices
    out = []
    for j in range(3):
        p, a, b = v[j], v[(j + 1) % 3], v[(j + 2) % 3]
        da, db = np.arctan2(*(a - p)[::-1]), np.arctan2(*(b - p)[::-1])
        gamma = abs((db - da + math.pi) % TWO_PI - math.pi)
        # corner as apex: apex direction points away from the inward bisector
        bis = (a - p) / np.hypot(*(a - p)) + (b - p) / np.hypot(*(b - p))
        out.append(iso_triangle_at(T, math.atan2(-bis[1], -bis[0]), gamma / 2))
        if gamma < HALF_PI:
            # corner as base angle, base along either side
            for base_to, leg_to in ((a, b), (b, a)):
                d = base_to - p
                inward = leg_to - p
                n = np.array([d[1], -d[0]])
                if n @ inward > 0:
                    n = -n
                theta = math.atan2(n[1], n[0]) + math.pi
                out.append(iso_triangle_at(T, theta, HALF_PI - gamma))
    return out


def claim_counterexample(T: ConvexPolygon, report: TriGapReport | None = None, margin: float = 1e-7) -> str | None:
    """Name of the optimum (``"t_area"``/``"t_perim"``) that provably shares no angle with ``T``.

    A shared-angle container is fixed by the corner it keeps, so the best of
    them is the minimum over :func:`shared_angle_candidates`; an optimum that
    beats all of them by ``margin`` (relative) cannot share an angle.
    """
    report = report or min_iso_containers(T)
    cands = shared_angle_candidates(T)
    for name, opt, key in (("t_area", report.t_area.area, "area"), ("t_perim", report.t_perim.perimeter, "perimeter")):
        best = min(getattr(c, key) for c in cands)
        if opt < best * (1 - margin):
            return name
    return None


# -- constructions ------------------------------------------------------------

def right_half(w: float, h: float, angle_deg: float) -> ConvexPolygon:
    """Lower-right half of a centred ``w x h`` rectangle turned by ``angle_deg``.

    The rectangle is cut along the diagonal from its lower-left to its
    upper-right corner (in its own frame).
    """
    R = axis_rectangle(w, h, angle_deg).vertices
    return ConvexPolygon([R[0], R[1], R[2]])


@dataclass
class Figure7Result:
    polygon: ConvexPolygon
    report: TriGapReport
    guess_holds: bool
    half1: ConvexPolygon
    half2: ConvexPolygon
    ordering: dict
    hexagonal: bool


def same_triangle(t: TriangleContainer, P: ConvexPolygon, tol: float = 1e-6) -> bool:
    scale = measures(P).diameter
    return all(min(math.dist(a, b) for b in P.vertices) <= tol * scale for a in t.vertices)


def figure7_construct(w1: float, h1: float, w2: float, h2: float, A: float) -> Figure7Result:
    """Intersect the right halves of two concentric rectangles and test the guess.

    ``guess_holds`` is True when the optimal right triangles of the
    intersection are the halves themselves: the perimeter optimum the half of
    the first rectangle and the area optimum the half of the second.
    """
    if not (w1 > h1 > 0 and w2 > h2 > 0):
        raise ValueError("need w1 > h1 > 0 and w2 > h2 > 0")
    H1, H2 = right_half(w1, h1, 0.0), right_half(w2, h2, A)
    P = intersect_convex(H1, H2)
    report = min_right_containers(P)
    ordering = {
        "perimeter_half1": H1.perimeter,
        "perimeter_half2": H2.perimeter,
        "area_half1": H1.area,
        "area_half2": H2.area,
    }
    guess = same_triangle(report.t_perim, H1) and same_triangle(report.t_area, H2)
    return Figure7Result(P, report, guess, H1, H2, ordering, len(P) == 6)
