"""Compiled inner loops for the two-parameter container searches.

Each search evaluates a cheap two-parameter objective a few thousand times
per polygon; scipy's Nelder-Mead bookkeeping costs more than the objective
itself at that size, so objectives and the simplex loop live here under
``numba.njit``. Objectives are selected by an integer code.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def gk_series(a, b):
    h = ((a - b) / (a + b)) ** 2
    return math.pi * (a + b) * (1.0 + h / 4.0 + h * h / 64.0 + h ** 3 / 256.0 + 25.0 * h ** 4 / 16384.0)


@njit(cache=True)
def _circle2(x1, y1, x2, y2):
    cx, cy = 0.5 * (x1 + x2), 0.5 * (y1 + y2)
    return cx, cy, math.hypot(x1 - cx, y1 - cy)


@njit(cache=True)
def _circle3(x1, y1, x2, y2, x3, y3):
    ax, ay = x2 - x1, y2 - y1
    bx, by = x3 - x1, y3 - y1
    d = 2.0 * (ax * by - ay * bx)
    if d == 0.0:
        # collinear: widest pair
        c = _circle2(x1, y1, x2, y2)
        c2 = _circle2(x1, y1, x3, y3)
        if c2[2] > c[2]:
            c = c2
        c3 = _circle2(x2, y2, x3, y3)
        if c3[2] > c[2]:
            c = c3
        return c
    a2, b2 = ax * ax + ay * ay, bx * bx + by * by
    ux, uy = (by * a2 - ay * b2) / d, (ax * b2 - bx * a2) / d
    return x1 + ux, y1 + uy, math.hypot(ux, uy)


@njit(cache=True)
def _inside(cx, cy, r, x, y):
    return math.hypot(x - cx, y - cy) <= r * (1.0 + 1e-12)


@njit(cache=True)
def enclosing_circle(xs, ys):
    """Smallest circle around the points, incremental construction."""
    n = xs.shape[0]
    cx, cy, r = xs[0], ys[0], 0.0
    for i in range(1, n):
        if _inside(cx, cy, r, xs[i], ys[i]):
            continue
        cx, cy, r = xs[i], ys[i], 0.0
        for j in range(i):
            if _inside(cx, cy, r, xs[j], ys[j]):
                continue
            cx, cy, r = _circle2(xs[i], ys[i], xs[j], ys[j])
            for k in range(j):
                if _inside(cx, cy, r, xs[k], ys[k]):
                    continue
                cx, cy, r = _circle3(xs[i], ys[i], xs[j], ys[j], xs[k], ys[k])
    return cx, cy, r


@njit(cache=True)
def squeezed_ellipse(xs, ys, phi, t):
    """(a, b, cx, cy) of the smallest ellipse with axis ``phi`` and log-aspect ``t``."""
    k = math.exp(t)
    c, s = math.cos(phi), math.sin(phi)
    n = xs.shape[0]
    qu = np.empty(n)
    qv = np.empty(n)
    for i in range(n):
        qu[i] = (xs[i] * c + ys[i] * s) / k
        qv[i] = -xs[i] * s + ys[i] * c
    u0, v0, r = enclosing_circle(qu, qv)
    u0 *= k
    return r * k, r, u0 * c - v0 * s, u0 * s + v0 * c


@njit(cache=True)
def perimeter_objective(xs, ys, phi, t, cap):
    if abs(t) > cap:
        return np.inf
    a, b, _, _ = squeezed_ellipse(xs, ys, phi, t)
    if a < b:
        a, b = b, a
    return gk_series(a, b)


ELLIPSE_PERIMETER = 0
ISO_AREA = 1
ISO_PERIMETER = 2
RIGHT_AREA = 3
RIGHT_PERIMETER = 4


@njit(cache=True)
def _support(xs, ys, angle):
    c, s = math.cos(angle), math.sin(angle)
    best = -np.inf
    for i in range(xs.shape[0]):
        v = xs[i] * c + ys[i] * s
        if v > best:
            best = v
    return best


@njit(cache=True)
def triangle_objective(xs, ys, n0, n1, n2, want_area):
    """Area or perimeter of the triangle cut out by supporting lines with normals n0, n1, n2 (CCW)."""
    ns = (n0, n1, n2)
    cs = np.empty(3)
    ss = np.empty(3)
    hs = np.empty(3)
    for i in range(3):
        cs[i], ss[i] = math.cos(ns[i]), math.sin(ns[i])
        hs[i] = _support(xs, ys, ns[i])
    vx = np.empty(3)
    vy = np.empty(3)
    for i in range(3):
        j = (i + 1) % 3
        det = cs[i] * ss[j] - ss[i] * cs[j]
        if det == 0.0:
            return np.inf
        vx[i] = (hs[i] * ss[j] - hs[j] * ss[i]) / det
        vy[i] = (cs[i] * hs[j] - cs[j] * hs[i]) / det
    if want_area:
        return 0.5 * abs((vx[1] - vx[0]) * (vy[2] - vy[0]) - (vx[2] - vx[0]) * (vy[1] - vy[0]))
    return (math.hypot(vx[1] - vx[0], vy[1] - vy[0]) + math.hypot(vx[2] - vx[1], vy[2] - vy[1])
            + math.hypot(vx[0] - vx[2], vy[0] - vy[2]))


@njit(cache=True)
def objective(kind, xs, ys, p, q, cap):
    if kind == ELLIPSE_PERIMETER:
        return perimeter_objective(xs, ys, p, q, cap)
    # p = theta, q = apex half-angle (iso) or psi - theta (right)
    if not (0.0 < q < 0.5 * math.pi):
        return np.inf
    if kind == ISO_AREA or kind == ISO_PERIMETER:
        beta = 0.5 * math.pi - q
        return triangle_objective(xs, ys, p + math.pi, p - beta, p + beta, kind == ISO_AREA)
    return triangle_objective(xs, ys, p - 0.5 * math.pi, p + q, p + math.pi, kind == RIGHT_AREA)


@njit(cache=True)
def simplex_search(kind, xs, ys, cap, x0, y0, step0, step1, xatol, fatol, maxiter):
    """Nelder-Mead on ``objective(kind, ...)``; returns (p, q, f, iterations)."""
    P = np.empty((3, 2))
    F = np.empty(3)
    P[0, 0], P[0, 1] = x0, y0
    P[1, 0], P[1, 1] = x0 + step0, y0
    P[2, 0], P[2, 1] = x0, y0 + step1
    for i in range(3):
        F[i] = objective(kind, xs, ys, P[i, 0], P[i, 1], cap)
    it = 0
    while it < maxiter:
        # order vertices best to worst
        for i in range(3):
            for j in range(2 - i):
                if F[j + 1] < F[j]:
                    F[j], F[j + 1] = F[j + 1], F[j]
                    for d in range(2):
                        P[j, d], P[j + 1, d] = P[j + 1, d], P[j, d]
        dx = max(max(abs(P[1, 0] - P[0, 0]), abs(P[1, 1] - P[0, 1])),
                 max(abs(P[2, 0] - P[0, 0]), abs(P[2, 1] - P[0, 1])))
        df = max(abs(F[1] - F[0]), abs(F[2] - F[0]))
        if dx <= xatol and df <= fatol:
            break
        # collapsed to float resolution: objective noise can keep df above fatol forever
        if dx <= 4e-16 * (1.0 + abs(P[0, 0]) + abs(P[0, 1])):
            break
        it += 1
        mx, my = 0.5 * (P[0, 0] + P[1, 0]), 0.5 * (P[0, 1] + P[1, 1])
        rx, ry = 2.0 * mx - P[2, 0], 2.0 * my - P[2, 1]
        fr = objective(kind, xs, ys, rx, ry, cap)
        if fr < F[0]:
            ex, ey = 3.0 * mx - 2.0 * P[2, 0], 3.0 * my - 2.0 * P[2, 1]
            fe = objective(kind, xs, ys, ex, ey, cap)
            if fe < fr:
                P[2, 0], P[2, 1], F[2] = ex, ey, fe
            else:
                P[2, 0], P[2, 1], F[2] = rx, ry, fr
            continue
        if fr < F[1]:
            P[2, 0], P[2, 1], F[2] = rx, ry, fr
            continue
        if fr < F[2]:
            # outside contraction
            cx, cy = 1.5 * mx - 0.5 * P[2, 0], 1.5 * my - 0.5 * P[2, 1]
            fc = objective(kind, xs, ys, cx, cy, cap)
            if fc <= fr:
                P[2, 0], P[2, 1], F[2] = cx, cy, fc
                continue
        else:
            cx, cy = 0.5 * mx + 0.5 * P[2, 0], 0.5 * my + 0.5 * P[2, 1]
            fc = objective(kind, xs, ys, cx, cy, cap)
            if fc < F[2]:
                P[2, 0], P[2, 1], F[2] = cx, cy, fc
                continue
        # shrink toward the best vertex
        for i in range(1, 3):
            P[i, 0] = P[0, 0] + 0.5 * (P[i, 0] - P[0, 0])
            P[i, 1] = P[0, 1] + 0.5 * (P[i, 1] - P[0, 1])
            F[i] = objective(kind, xs, ys, P[i, 0], P[i, 1], cap)
    best = 0
    for i in range(1, 3):
        if F[i] < F[best]:
            best = i
    return P[best, 0], P[best, 1], F[best], it
