"""Command-line front end: ``oriented-containers <subcommand> ...``.

Every subcommand prints one JSON document on stdout. Exit status is 0 on
success, 1 for invalid input (message on stderr, nothing on stdout) and 2
when a computation raises a flag; the JSON is still printed in that case.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import ellipses, rectangles, triangles
from .errors import DegenerateInput, GeometryError
from .experiments import FAMILIES, KINDS, ShapeSpec, batch_gap_study, package_version, worker_count
from .geometry import EPS_REL, ConvexPolygon, convex_hull
from .rectangles import (
    axis_rectangle,
    fig1_triangle,
    hexagon_family,
    hexagon_sweep,
    min_rects,
    octagon_construct,
    octagon_sweep,
)
from .reproduce import PAPER_DIMS, SCHEMA_VERSION, records_csv, write_outputs
from .svg import render_svg
from .triangles import figure7_construct, min_iso_containers, min_right_containers

log = logging.getLogger("oriented_containers")

TOLERANCES = {
    "eps_geo_rel": EPS_REL,
    "tie_rel": rectangles.TIE_REL,
    "tol_opt": rectangles.TOL_OPT,
    "flush_rel": triangles.FLUSH_REL,
    "near_circular": ellipses.NEAR_CIRCULAR,
    "max_aspect": ellipses.MAX_ASPECT,
}

FIXTURES = {
    "fig1": lambda: fig1_triangle(),
    "tprime": lambda: fig1_triangle(91.0),
    "equilateral": lambda: ConvexPolygon([(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)]),
    "right_isosceles": lambda: ConvexPolygon([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]),
    "unit_square": lambda: axis_rectangle(1.0, 1.0, center=(0.5, 0.5)),
    "hexagon": lambda: hexagon_family(0.55),
    "octagon": lambda: octagon_construct(*PAPER_DIMS, 80.0).polygon,
    "fig7": lambda: figure7_construct(*PAPER_DIMS, 80.0).polygon,
}


class UsageError(Exception):
    """Bad flags or unreadable input; reported with exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input parsing -------------------------------------------------------------

def _pair(text: str) -> tuple[float, float]:
    try:
        x, y = (float(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"expected 'X,Y', got {text!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise UsageError(f"non-finite value in {text!r}")
    return x, y


def _read_points(args) -> list:
    sources = [s for s in (args.vertices, args.file, args.fixture) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --vertices, --file, --fixture")
    if args.vertices is not None:
        return [_pair(t) for t in args.vertices.split()]
    if args.fixture is not None:
        if args.fixture not in FIXTURES:
            raise UsageError(f"unknown fixture {args.fixture!r}; choose from {', '.join(FIXTURES)}")
        return FIXTURES[args.fixture]().vertices.tolist()
    try:
        data = json.loads(Path(args.file).read_text(encoding="utf-8"))
        pts = [(float(x), float(y)) for x, y in data["vertices"]]
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror or exc}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{args.file}: expected {{\"vertices\": [[x, y], ...]}} ({exc})") from None
    return pts


def _polygon(args) -> ConvexPolygon:
    pts = _read_points(args)
    try:
        return ConvexPolygon(pts)
    except DegenerateInput:
        pass
    try:
        P = convex_hull(pts)
    except GeometryError as exc:
        raise UsageError(f"invalid polygon: {exc}") from None
    log.warning("input is not a convex polygon; using its convex hull (%d vertices)", len(P))
    return P


def _dims(text: str) -> tuple[float, float]:
    w, h = _pair(text)
    if not (w > h > 0):
        raise UsageError(f"rectangle {text!r}: need width > height > 0")
    return w, h


# -- output --------------------------------------------------------------------

def _document(command: str, result: dict, polygon: ConvexPolygon | None = None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "version": package_version(), "command": command,
           "tolerances": TOLERANCES}
    if polygon is not None:
        doc["input"] = {"vertices": polygon.vertices.tolist()}
    doc["result"] = result
    return doc


def _emit(doc: dict, out) -> None:
    out.write(json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n")


def _svg(args, shapes, styles=None, title="") -> None:
    if getattr(args, "svg", None):
        try:
            render_svg(shapes, styles, args.svg, title)
        except OSError as exc:
            raise UsageError(f"cannot write {args.svg}: {exc.strerror or exc}") from None


# -- subcommands ----------------------------------------------------------------
# each returns (document, flag raised)

def _cmd_hull(args):
    P = _polygon(args)
    _svg(args, [P])
    return _document("hull", {"vertices": P.vertices.tolist(), "area": P.area, "perimeter": P.perimeter}, P), False


def _cmd_rect(args):
    P = _polygon(args)
    rep = min_rects(P)
    _svg(args, [P, rep.r_area, rep.r_perim], [{}, {"id": "R_A"}, {"id": "R_P", "dash": "6 3"}])
    return _document("rect", rep.to_dict(), P), False


def _cmd_isotri(args):
    P = _polygon(args)
    rep = min_iso_containers(P)
    _svg(args, [P, rep.t_area, rep.t_perim], [{}, {"id": "T_A"}, {"id": "T_P", "dash": "6 3"}])
    return _document("isotri", rep.to_dict(), P), False


def _cmd_righttri(args):
    P = _polygon(args)
    rep = min_right_containers(P)
    _svg(args, [P, rep.t_area, rep.t_perim], [{}, {"id": "RT_A"}, {"id": "RT_P", "dash": "6 3"}])
    return _document("righttri", rep.to_dict(), P), False


def _cmd_ellipse(args):
    P = _polygon(args)
    rep = ellipses.ellipse_gap_report(P)
    _svg(args, [P, rep.e_area, rep.e_perim], [{}, {"id": "E_A"}, {"id": "E_P", "dash": "6 3"}])
    return _document("ellipse", rep.to_dict(), P), False


def _cmd_render(args):
    P = _polygon(args)
    if not args.svg:
        raise UsageError("render needs --svg PATH")
    _svg(args, [P])
    return _document("render", {"svg": args.svg}, P), False


def _cmd_octagon(args):
    (w1, h1), (w2, h2) = _dims(args.r1), _dims(args.r2)
    if not 0 < args.angle < 90:
        raise UsageError("--angle must lie in (0, 90)")
    oc = octagon_construct(w1, h1, w2, h2, args.angle)
    result = {"angle_deg": args.angle, "valid": oc.valid, "preconditions": oc.preconditions,
              "gap_degrees": oc.report.gap_degrees, "report": oc.report.to_dict(),
              "vertices": oc.polygon.vertices.tolist()}
    if args.sweep:
        angles, flags, best = octagon_sweep(w1, h1, w2, h2)
        result["sweep"] = {"angles_deg": angles, "valid": flags, "largest_valid_deg": best}
    _svg(args, [oc.polygon, oc.r1, oc.r2], [{}, {"id": "R_1"}, {"id": "R_2"}])
    return _document("octagon", result, oc.polygon), not oc.valid


def _cmd_hexagon(args):
    if (args.s is None) == (args.sweep is None):
        raise UsageError("give exactly one of --s and --sweep")
    if args.sweep is not None:
        if args.sweep < 100:
            raise UsageError("--sweep needs at least 100 steps")
        s_a, s_p = hexagon_sweep(args.sweep)
        return _document("hexagon", {"steps": args.sweep, "s_area_switch": s_a, "s_perimeter_switch": s_p}), False
    if not 0 <= args.s < 1:
        raise UsageError("--s must lie in [0, 1)")
    H = hexagon_family(args.s)
    rep = min_rects(H)
    _svg(args, [H, rep.r_area, rep.r_perim], [{}, {"id": "R_A"}, {"id": "R_P", "dash": "6 3"}])
    return _document("hexagon", {"s": args.s, **rep.to_dict()}, H), False


def _cmd_fig1(args):
    if not 0 < args.apex < 180:
        raise UsageError("--apex must lie in (0, 180)")
    T = fig1_triangle(args.apex)
    rep = min_rects(T)
    _svg(args, [T, rep.r_perim, *rep.area_ties], [{}, {"id": "R_P"}, *({"dash": "6 3"} for _ in rep.area_ties)])
    return _document("fig1", {"apex_deg": args.apex, **rep.to_dict()}, T), False


def _cmd_fig7(args):
    (w1, h1), (w2, h2) = _dims(args.r1), _dims(args.r2)
    if not 0 < args.angle < 90:
        raise UsageError("--angle must lie in (0, 90)")
    f7 = figure7_construct(w1, h1, w2, h2, args.angle)
    result = {"angle_deg": args.angle, "guess_holds": f7.guess_holds, "hexagonal": f7.hexagonal,
              "ordering": f7.ordering, "report": f7.report.to_dict(),
              "half1": f7.half1.vertices.tolist(), "half2": f7.half2.vertices.tolist()}
    _svg(args, [f7.polygon, f7.report.t_area, f7.report.t_perim],
         [{}, {"id": "RT_A"}, {"id": "RT_P", "dash": "6 3"}])
    # a non-hexagonal intersection means the construction did not come out as intended
    return _document("fig7", result, f7.polygon), not f7.hexagonal


def _cmd_study(args):
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.seed < 0:
        raise UsageError("--seed must be non-negative")
    try:
        spec = ShapeSpec(args.kind, args.seed, args.n, args.vertices_per_shape)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    study = batch_gap_study(spec, args.family, worker_count())
    if args.csv:
        try:
            Path(args.csv).write_text(records_csv(study), encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {args.csv}: {exc.strerror or exc}") from None
    result = {"provenance": study.provenance, "aggregates": study.aggregates}
    for metric in ("gap_degrees", "gap_vs_diameter", "gap_vs_longest_side"):
        w = study.worst(metric)
        if w is not None:
            result.setdefault("worst", {})[metric] = w
    return _document("study", result), study.aggregates["failed"] > 0


def _cmd_reproduce(args):
    try:
        doc = write_outputs(args.out, args.seed, args.scale)
    except OSError as exc:
        raise UsageError(f"cannot write to {args.out}: {exc.strerror or exc}") from None
    flagged = [r["name"] for r in doc["rows"] if r["status"] == "flag"]
    for name in flagged:
        log.warning("finding not reproduced: %s", name)
    return _document("reproduce", {"outdir": str(args.out), "rows": doc["rows"], "flagged": flagged}), bool(flagged)


# -- parser -------------------------------------------------------------------

def _polygon_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--vertices", help='inline polygon, e.g. "0,0 1,0 0,1"')
    p.add_argument("--file", help='JSON file {"vertices": [[x, y], ...]}')
    p.add_argument("--fixture", help=f"built-in shape: {', '.join(FIXTURES)}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oriented-containers", description="Optimal oriented containers of convex polygons.")
    parser.add_argument("--version", action="version", version=package_version())
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, text in (
        ("hull", _cmd_hull, "convex hull of the input"),
        ("rect", _cmd_rect, "minimum area and perimeter bounding rectangles"),
        ("isotri", _cmd_isotri, "minimum area and perimeter isosceles triangles"),
        ("righttri", _cmd_righttri, "minimum area and perimeter right triangles"),
        ("ellipse", _cmd_ellipse, "minimum area and perimeter enclosing ellipses"),
        ("render", _cmd_render, "draw the input polygon"),
    ):
        p = sub.add_parser(name, help=text)
        _polygon_flags(p)
        p.add_argument("--svg", metavar="PATH", help="also write an SVG drawing")
        p.set_defaults(func=fn)

    dims = ("--r1", "--r2")
    p = sub.add_parser("octagon", help="intersection of two concentric rectangles")
    for flag, default in zip(dims, ("10,9.9", "11,8.99")):
        p.add_argument(flag, default=default, metavar="W,H")
    p.add_argument("--angle", type=float, default=80.0, help="turn of the second rectangle, degrees")
    p.add_argument("--sweep", action="store_true", help="also sweep the angle over 46..89 degrees")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=_cmd_octagon)

    p = sub.add_parser("hexagon", help="unit square with two opposite corners cut off")
    p.add_argument("--s", type=float)
    p.add_argument("--sweep", type=int, metavar="STEPS")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=_cmd_hexagon)

    p = sub.add_parser("fig1", help="isosceles triangle with unit legs")
    p.add_argument("--apex", type=float, default=90.0, help="apex angle, degrees")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=_cmd_fig1)

    p = sub.add_parser("fig7", help="intersection of two right half-rectangles")
    for flag, default in zip(dims, ("10,9.9", "11,8.99")):
        p.add_argument(flag, default=default, metavar="W,H")
    p.add_argument("--angle", type=float, default=80.0)
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=_cmd_fig7)

    p = sub.add_parser("study", help="batch gap study over seeded random shapes")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True, help="number of shapes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vertices-per-shape", type=int, default=0, help="vertex count for convex_ngon")
    p.add_argument("--csv", metavar="PATH", help="write per-shape records as CSV")
    p.set_defaults(func=_cmd_study)

    p = sub.add_parser("reproduce", help="rerun every construction and batch finding")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--scale", choices=("small", "full"), default="small")
    p.add_argument("--out", default="reproduce_out", help="output directory")
    p.set_defaults(func=_cmd_reproduce)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.addHandler(handler)
    try:
        args = build_parser().parse_args(argv)
        doc, flagged = args.func(args)
    except (UsageError, ValueError) as exc:  # GeometryError is a ValueError
        stderr.write(f"error: {exc}\n")
        return 1
    finally:
        log.removeHandler(handler)
    _emit(doc, stdout)
    return 2 if flagged else 0


def main() -> None:
    sys.exit(run())
