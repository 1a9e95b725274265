"""Minimum-area and minimum-perimeter enclosing ellipses.

The area optimum comes from Khachiyan's barycentric iteration (with
Todd-Yildirim away steps). The perimeter optimum is a search over
orientation and aspect ratio: for a fixed orientation ``phi`` and aspect
``k`` the smallest enclosing ellipse is the smallest enclosing circle of the
points after squeezing the ``phi`` axis by ``k``, so centre and size drop out
exactly and only two parameters are left for Nelder-Mead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from . import _kernels
from .errors import InvalidAxes, NoConvergence
from .geometry import ConvexPolygon, Point, angular_gap, measures

NEAR_CIRCULAR = 1e-6
MAX_ASPECT = 50.0
TOL_OPT = 1e-6
N_RANDOM_STARTS = 8


@dataclass(frozen=True)
class Ellipse:
    center: Point
    a: float
    b: float
    phi: float
    aspect_capped: bool = False

    @property
    def near_circular(self) -> bool:
        return (self.a - self.b) / self.a <= NEAR_CIRCULAR

    @property
    def area(self) -> float:
        return math.pi * self.a * self.b

    @property
    def perimeter(self) -> float:
        return gk_perimeter(self.a, self.b)

    def qf(self, points) -> np.ndarray:
        d = np.atleast_2d(np.asarray(points, dtype=float)) - np.array(self.center)
        c, s = math.cos(self.phi), math.sin(self.phi)
        du = d[:, 0] * c + d[:, 1] * s
        dv = -d[:, 0] * s + d[:, 1] * c
        return (du / self.a) ** 2 + (dv / self.b) ** 2

    def contains(self, p, tol: float = 0.0) -> bool:
        return bool(self.qf(p)[0] <= 1.0 + tol)

    def boundary(self, n: int = 256) -> np.ndarray:
        t = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
        c, s = math.cos(self.phi), math.sin(self.phi)
        x, y = self.a * np.cos(t), self.b * np.sin(t)
        return np.stack([self.center.x + c * x - s * y, self.center.y + s * x + c * y], axis=1)

    def to_dict(self) -> dict:
        return {
            "center": [self.center.x, self.center.y],
            "a": self.a,
            "b": self.b,
            "phi_deg": math.degrees(self.phi),
            "near_circular": self.near_circular,
            "aspect_capped": self.aspect_capped,
            "area": self.area,
            "perimeter": self.perimeter,
        }


def _canonical(cx: float, cy: float, a: float, b: float, phi: float, capped: bool = False) -> Ellipse:
    if b > a:
        a, b, phi = b, a, phi + math.pi / 2
    return Ellipse(Point(float(cx), float(cy)), float(a), float(b), float(phi % math.pi), capped)


# -- perimeter --------------------------------------------------------------

def _check_axes(a: float, b: float) -> None:
    if not (b > 0 and a >= b) or not math.isfinite(a):
        raise InvalidAxes(f"need a >= b > 0, got a={a!r}, b={b!r}")


def gk_perimeter(a: float, b: float) -> float:
    """Gauss-Kummer series for the ellipse perimeter, cut after the h**4 term."""
    _check_axes(a, b)
    h = ((a - b) / (a + b)) ** 2
    return math.pi * (a + b) * (1 + h / 4 + h * h / 64 + h ** 3 / 256 + 25 * h ** 4 / 16384)


def perimeter_oracle(a: float, b: float) -> float:
    """Arc length by adaptive quadrature of the parametric speed."""
    _check_axes(a, b)
    val, _ = quad(lambda t: math.hypot(a * math.sin(t), b * math.cos(t)), 0.0, math.pi / 2,
                  epsabs=0.0, epsrel=1e-13, limit=200)
    return 4.0 * val


# -- minimum-area ellipse -----------------------------------------------------

def _khachiyan(P: np.ndarray, epsilon: float, max_iter: int) -> tuple[np.ndarray, bool]:
    d, n = P.shape
    Q = np.vstack([P, np.ones(n)])
    u = np.full(n, 1.0 / n)
    target = d + 1
    for _ in range(max_iter):
        X = (Q * u) @ Q.T
        M = np.einsum("ij,ji->i", Q.T, np.linalg.solve(X, Q))
        j = int(np.argmax(M))
        support = u > 0
        i = int(np.flatnonzero(support)[np.argmin(M[support])])
        up, down = M[j] - target, target - M[i]
        if up <= epsilon * target and down <= epsilon * target:
            return u, True
        if up >= down:
            step = up / (target * (M[j] - 1.0))
            u *= 1.0 - step
            u[j] += step
        else:
            step = min(down / (target * (M[i] - 1.0)), u[i] / (1.0 - u[i]))
            u *= 1.0 + step
            u[i] -= step
            if u[i] < 1e-300:
                u[i] = 0.0
    return u, False


def _ellipse_from_weights(P: np.ndarray, u: np.ndarray) -> Ellipse:
    c = P @ u
    S = (P * u) @ P.T - np.outer(c, c)
    A = np.linalg.inv(S) / P.shape[0]
    lam, vec = np.linalg.eigh(A)
    a, b = 1.0 / math.sqrt(lam[0]), 1.0 / math.sqrt(lam[1])
    phi = math.atan2(vec[1, 0], vec[0, 0])
    e = _canonical(c[0], c[1], a, b, phi)
    # weights are only epsilon-optimal: inflate until every point is covered
    grow = float(e.qf(P.T).max())
    if grow > 1.0:
        e = Ellipse(e.center, e.a * math.sqrt(grow), e.b * math.sqrt(grow), e.phi)
    return e


def mvee(C: ConvexPolygon, epsilon: float = 1e-7, max_iter: int = 1_000_000) -> Ellipse:
    """Minimum-area ellipse containing ``C``."""
    if not 0 < epsilon <= 1e-3:
        raise ValueError("epsilon must lie in (0, 1e-3]")
    # centre the data; the iteration is translation invariant but better conditioned this way
    shift = C.vertices.mean(axis=0)
    P = (C.vertices - shift).T
    u, ok = _khachiyan(P, epsilon, max_iter)
    e = _ellipse_from_weights(P, u)
    e = Ellipse(Point(float(e.center.x + shift[0]), float(e.center.y + shift[1])), e.a, e.b, e.phi)
    if not ok:
        raise NoConvergence("Khachiyan iteration hit the cap", best=e)
    return e


# -- minimum-perimeter ellipse ------------------------------------------------

def min_scale_to_contain(C: ConvexPolygon, center, phi: float, aspect: float) -> float:
    """Smallest ``s`` with the ellipse ``(center, s * aspect, s, phi)`` covering ``C``."""
    if aspect < 1:
        raise ValueError("aspect must be >= 1")
    d = C.vertices - np.asarray(center, dtype=float)
    c, s = math.cos(phi), math.sin(phi)
    du = (d[:, 0] * c + d[:, 1] * s) / aspect
    dv = -d[:, 0] * s + d[:, 1] * c
    return float(np.sqrt(du * du + dv * dv).max())


def min_enclosing_circle(pts) -> tuple[float, float, float]:
    """Smallest circle ``(cx, cy, r)`` around a point list."""
    arr = np.asarray(pts, dtype=float)
    cx, cy, r = _kernels.enclosing_circle(np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1]))
    return float(cx), float(cy), float(r)


@dataclass
class PerimeterSearch:
    best: Ellipse
    alternatives: list = field(default_factory=list)
    starts: int = 0


def _start_points(C: ConvexPolygon, e_area: Ellipse | None) -> list[tuple[float, float]]:
    from .rectangles import min_rects

    starts = []
    if e_area is not None:
        starts.append((e_area.phi, math.log(e_area.a / e_area.b)))
    starts.append((0.0, 0.0))
    rep = min_rects(C)
    for r in (rep.r_area, rep.r_perim):
        starts.append((r.orientation, math.log(r.half_long / r.half_short)))
    m = measures(C)
    proj = C.vertices @ np.array([-math.sin(m.diameter_angle), math.cos(m.diameter_angle)])
    width = float(proj.max() - proj.min())
    starts.append((m.diameter_angle, math.log(max(m.diameter / width, 1.0))))
    rng = np.random.default_rng(20170601)
    for _ in range(N_RANDOM_STARTS):
        starts.append((float(rng.uniform(0, math.pi)), float(rng.uniform(0.0, math.log(4.0)))))
    cap = math.log(MAX_ASPECT) * (1 - 1e-9)
    return [(phi, min(t, cap)) for phi, t in starts]


def _nm(xs, ys, x0, step=0.2, xatol=1e-8, fatol=1e-10):
    phi, t, fx, _ = _kernels.simplex_search(_kernels.ELLIPSE_PERIMETER, xs, ys, math.log(MAX_ASPECT), float(x0[0]), float(x0[1]),
                                            step, step, xatol, fatol, 5000)
    return np.array([phi, t]), float(fx)


def perimeter_search(C: ConvexPolygon, e_area: Ellipse | None = None) -> PerimeterSearch:
    """Multi-start search for the minimum-perimeter ellipse, keeping near-tied rivals."""
    center = C.vertices.mean(axis=0)
    xs = np.ascontiguousarray(C.vertices[:, 0] - center[0])
    ys = np.ascontiguousarray(C.vertices[:, 1] - center[1])
    scale = measures(C).diameter
    starts = _start_points(C, e_area)
    found = []
    for x0 in starts:
        x, fx = _nm(xs, ys, x0, fatol=1e-10 * scale)
        # one restart from the end point guards against simplex collapse at kinks
        x, fx = _nm(xs, ys, x, step=0.01, fatol=1e-12 * scale)
        found.append((fx, x))
    # deterministic min-reduction: objective first, then parameters
    found.sort(key=lambda r: (r[0], float(r[1][0] % math.pi), float(r[1][1])))

    def to_ellipse(x):
        phi, t = float(x[0]), float(x[1])
        a, b, cx, cy = _kernels.squeezed_ellipse(xs, ys, phi, t)
        capped = abs(abs(t) - math.log(MAX_ASPECT)) <= 1e-6
        e = _canonical(cx + center[0], cy + center[1], a, b, phi, capped)
        grow = float(e.qf(C.vertices).max())
        if grow > 1.0:
            e = Ellipse(e.center, e.a * math.sqrt(grow), e.b * math.sqrt(grow), e.phi, capped)
        return e

    best_f = found[0][0]
    best = to_ellipse(found[0][1])
    alts = []
    for fx, x in found[1:]:
        if fx > best_f * (1 + TOL_OPT):
            break
        e = to_ellipse(x)
        if not best.near_circular and not e.near_circular and angular_gap(e.phi, best.phi) > 0.1:
            if all(angular_gap(e.phi, q.phi) > 0.1 for q in alts):
                alts.append(e)
    return PerimeterSearch(best, alts, len(starts))


def min_perimeter_ellipse(C: ConvexPolygon, e_area: Ellipse | None = None) -> Ellipse:
    """Minimum-perimeter (Gauss-Kummer) ellipse containing ``C``."""
    if e_area is None:
        e_area = mvee(C)
    return perimeter_search(C, e_area).best


# -- gap report ---------------------------------------------------------------

@dataclass
class EllipseGapReport:
    e_area: Ellipse
    e_perim: Ellipse
    gap_degrees: float
    center_distance: float
    gap_suppressed: bool = False
    gap_vs_longest_side: float | None = None
    gap_vs_diameter: float | None = None
    perimeter_ties: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "e_area": self.e_area.to_dict(),
            "e_perim": self.e_perim.to_dict(),
            "gap_degrees": self.gap_degrees,
            "gap_suppressed_near_circular": self.gap_suppressed,
            "center_distance": self.center_distance,
            "gap_vs_longest_side": self.gap_vs_longest_side,
            "gap_vs_diameter": self.gap_vs_diameter,
            "perimeter_ties": [e.to_dict() for e in self.perimeter_ties],
        }


def _direction_gap(reference: float, *ellipses: Ellipse) -> float:
    return max(angular_gap(e.phi, reference) for e in ellipses)


def longest_side_angle(C: ConvexPolygon) -> float:
    v = C.vertices
    d = np.roll(v, -1, axis=0) - v
    k = int(np.argmax(np.hypot(d[:, 0], d[:, 1])))
    return math.atan2(d[k, 1], d[k, 0]) % math.pi


def ellipse_gap_report(C: ConvexPolygon) -> EllipseGapReport:
    """Both optimal ellipses of ``C`` and how far apart their major axes point."""
    ea = mvee(C)
    search = perimeter_search(C, ea)
    ep = search.best
    ties = search.alternatives
    if ties:
        # among near-equal perimeter optima use the one closest in direction to the area optimum
        ep = min([ep, *ties], key=lambda e: angular_gap(e.phi, ea.phi))
        ties = [e for e in [search.best, *search.alternatives] if e is not ep]
    suppressed = ea.near_circular or ep.near_circular
    gap = 0.0 if suppressed else angular_gap(ea.phi, ep.phi)
    rep = EllipseGapReport(ea, ep, gap, math.dist(ea.center, ep.center), suppressed, perimeter_ties=ties)
    if len(C) == 3:
        rep.gap_vs_longest_side = _direction_gap(longest_side_angle(C), ea, ep)
    elif len(C) == 4:
        rep.gap_vs_diameter = _direction_gap(measures(C).diameter_angle, ea, ep)
    return rep
