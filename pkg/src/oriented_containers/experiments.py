"""Seeded shape generation, brute-force referees and batch gap studies.

Random streams use numpy's Philox counter-based generator. Sample ``i`` of a
study with seed ``s`` and shape kind ``k`` draws from the stream keyed by
``(s, KIND_CODE[k] << 32 | i)``, so every sample is reproducible on its own,
independent of batch size or worker count.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib.metadata import PackageNotFoundError, version

import numpy as np

from .ellipses import ellipse_gap_report
from .errors import DegenerateInput, GenerationExhausted
from .geometry import ConvexPolygon, convex_hull
from .rectangles import bounding_rect_objectives, min_rects
from .triangles import claim_counterexample, min_iso_containers, min_right_containers

log = logging.getLogger(__name__)

KINDS = ("triangle", "obtuse_triangle", "quadrilateral", "parallelogram", "convex_ngon")
KIND_CODE = {k: i + 1 for i, k in enumerate(KINDS)}
FAMILIES = ("rect", "iso", "right", "ellipse")
AREA_FLOOR = 1e-3
OBTUSE_MIN_DEG = 95.0
MAX_TRIES = 100_000
ROUND_DECIMALS = 12


def package_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:  # pragma: no cover - running from a source tree
        return "0+unknown"


@dataclass(frozen=True)
class ShapeSpec:
    kind: str
    seed: int
    count: int
    n: int = 0  # vertex count, convex_ngon only

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.kind == "convex_ngon" and self.n < 3:
            raise ValueError("convex_ngon needs n >= 3")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def sample_rng(seed: int, kind: str, index: int) -> np.random.Generator:
    key = np.array([seed, (KIND_CODE[kind] << 32) | index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def max_angle_deg(P: ConvexPolygon) -> float:
    v = P.vertices
    n = len(v)
    best = 0.0
    for i in range(n):
        a, b = v[i - 1] - v[i], v[(i + 1) % n] - v[i]
        cosang = float(a @ b) / (math.hypot(*a) * math.hypot(*b))
        best = max(best, math.degrees(math.acos(max(-1.0, min(1.0, cosang)))))
    return best


def _round(pts) -> np.ndarray:
    return np.round(np.asarray(pts, dtype=float), ROUND_DECIMALS)


def _try_shape(kind: str, rng: np.random.Generator, n: int) -> ConvexPolygon | None:
    if kind in ("triangle", "obtuse_triangle"):
        P = convex_hull(_round(rng.random((3, 2))))
        if P.area < AREA_FLOOR:
            return None
        if kind == "obtuse_triangle" and max_angle_deg(P) <= OBTUSE_MIN_DEG:
            return None
        return P
    if kind == "quadrilateral":
        P = convex_hull(_round(rng.random((4, 2))))
        return P if len(P) == 4 and P.area >= AREA_FLOOR else None
    if kind == "parallelogram":
        base = rng.random(2)
        e1, e2 = rng.uniform(-1.0, 1.0, (2, 2))
        P = ConvexPolygon(_round([base, base + e1, base + e1 + e2, base + e2]))
        return P if len(P) == 4 and P.area >= AREA_FLOOR else None
    # convex_ngon
    if n <= 6:
        P = convex_hull(_round(rng.random((n, 2))))
    else:
        # exactly n hull vertices: points on a circle under a random linear map
        ang = np.sort(rng.uniform(0.0, 2 * math.pi, n))
        pts = np.stack([np.cos(ang), np.sin(ang)], axis=1) @ rng.uniform(-1.0, 1.0, (2, 2))
        P = convex_hull(_round(0.5 + 0.5 * pts))
    return P if len(P) == n and P.area >= AREA_FLOOR else None


def generate_one(spec: ShapeSpec, index: int) -> ConvexPolygon:
    rng = sample_rng(spec.seed, spec.kind, index)
    for _ in range(MAX_TRIES):
        try:
            P = _try_shape(spec.kind, rng, spec.n)
        except DegenerateInput:
            P = None
        if P is not None:
            return P
    raise GenerationExhausted(f"{spec.kind} sample {index}: rejection sampling failed {MAX_TRIES} times")


def generate(spec: ShapeSpec) -> list[ConvexPolygon]:
    return [generate_one(spec, i) for i in range(spec.count)]


def rect_grid_oracle(C: ConvexPolygon, grid_size: int = 36000):
    """Best bounding rectangles over a uniform angle grid on ``[0, pi/2)``.

    Returns ``(best_area_angle, best_perim_angle, (min_area, min_perimeter))``.
    """
    if grid_size < 360:
        raise ValueError("grid_size must be >= 360")
    thetas = np.arange(grid_size) * (math.pi / 2 / grid_size)
    area, perim = bounding_rect_objectives(C.vertices, thetas)
    ia, ip = int(np.argmin(area)), int(np.argmin(perim))
    return float(thetas[ia]), float(thetas[ip]), (float(area[ia]), float(perim[ip]))


# -- batch studies -------------------------------------------------------------

def evaluate(P: ConvexPolygon, family: str) -> dict:
    """Gap record of one shape for one container family."""
    if family == "rect":
        rep = min_rects(P)
        return {"gap_degrees": rep.gap_degrees, "area": rep.r_area.area, "perimeter": rep.r_perim.perimeter,
                "area_ties": len(rep.area_ties), "perim_ties": len(rep.perim_ties)}
    if family == "iso":
        rep = min_iso_containers(P)
        rec = {"gap_degrees": rep.gap_degrees, "area": rep.t_area.area, "perimeter": rep.t_perim.perimeter,
               "flush_area": sum(rep.t_area.flush_sides), "flush_perim": sum(rep.t_perim.flush_sides)}
        if len(P) == 3:
            rec["shared_area"] = rep.shared["t_area"]
            rec["shared_perim"] = rep.shared["t_perim"]
            rec["claim_counterexample"] = claim_counterexample(P, rep) or ""
        return rec
    if family == "right":
        rep = min_right_containers(P)
        return {"gap_degrees": rep.gap_degrees, "area": rep.t_area.area, "perimeter": rep.t_perim.perimeter}
    if family == "ellipse":
        rep = ellipse_gap_report(P)
        rec = {"gap_degrees": rep.gap_degrees, "center_distance": rep.center_distance,
               "near_circular": rep.gap_suppressed, "perimeter_ties": len(rep.perimeter_ties),
               "aspect_capped": rep.e_perim.aspect_capped,
               "area_ratio": rep.e_area.area / P.area}
        if rep.gap_vs_longest_side is not None:
            rec["gap_vs_longest_side"] = rep.gap_vs_longest_side
        if rep.gap_vs_diameter is not None:
            rec["gap_vs_diameter"] = rep.gap_vs_diameter
        return rec
    raise ValueError(f"unknown family {family!r}")


def _run_sample(args) -> dict:
    spec, family, i = args
    P = generate_one(spec, i)
    rec = {"shape_id": i, "family": family, "kind": spec.kind,
           "vertices": ";".join(f"{x!r},{y!r}" for x, y in P.vertices.tolist())}
    try:
        rec.update(evaluate(P, family))
        rec["error"] = ""
    except Exception as exc:  # recorded per sample, excluded from aggregates
        log.warning("sample %d failed: %s", i, exc)
        rec["error"] = f"{type(exc).__name__}: {exc}"
    return rec


def aggregate(records: list[dict], metrics=("gap_degrees", "gap_vs_longest_side", "gap_vs_diameter")) -> dict:
    ok = [r for r in records if not r.get("error")]
    out = {"samples": len(records), "failed": len(records) - len(ok)}
    for m in metrics:
        vals = [r[m] for r in ok if m in r]
        if not vals:
            continue
        k = int(np.argmax(vals))
        hist: dict[str, int] = {}
        for v in vals:
            b = str(int(math.floor(v)))
            hist[b] = hist.get(b, 0) + 1
        out[m] = {
            "max": float(max(vals)),
            "mean": float(math.fsum(vals) / len(vals)),
            "argmax_shape_id": [r for r in ok if m in r][k]["shape_id"],
            "histogram_1deg": dict(sorted(hist.items(), key=lambda kv: int(kv[0]))),
        }
    if ok and "claim_counterexample" in ok[0]:
        hits = [r["shape_id"] for r in ok if r["claim_counterexample"]]
        out["claim_counterexamples"] = {"count": len(hits), "first_shape_id": hits[0] if hits else None}
    return out


@dataclass
class StudyResult:
    spec: ShapeSpec
    family: str
    records: list = field(default_factory=list)
    aggregates: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def check(self) -> bool:
        """True when the stored aggregates match a recomputation from the records."""
        return aggregate(self.records) == self.aggregates

    def worst(self, metric: str = "gap_degrees") -> dict | None:
        ok = [r for r in self.records if not r.get("error") and metric in r]
        return max(ok, key=lambda r: r[metric]) if ok else None

    def to_dict(self) -> dict:
        return {"provenance": self.provenance, "aggregates": self.aggregates}


def worker_count() -> int:
    raw = os.environ.get("OC_THREADS", "")
    try:
        n = int(raw) if raw else 1
    except ValueError:
        n = 1
    return max(1, n)


def batch_gap_study(spec: ShapeSpec, family: str, workers: int | None = None) -> StudyResult:
    """Run one family's gap report on every generated shape and aggregate."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    workers = worker_count() if workers is None else workers
    jobs = [(spec, family, i) for i in range(spec.count)]
    if workers > 1 and spec.count > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_sample, jobs, chunksize=max(1, spec.count // (8 * workers))))
    else:
        records = [_run_sample(j) for j in jobs]
    prov = {"kind": spec.kind, "n": spec.n, "seed": spec.seed, "count": spec.count, "family": family,
            "version": package_version(), "generator": "numpy Philox, key=(seed, kind_code<<32 | index)"}
    return StudyResult(spec, family, records, aggregate(records), prov)
