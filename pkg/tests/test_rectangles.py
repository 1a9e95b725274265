import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oriented_containers.experiments import rect_grid_oracle
from oriented_containers.geometry import measures
from oriented_containers.rectangles import (
    OrientedRectangle,
    axis_rectangle,
    bounding_rect_at,
    fig1_triangle,
    flush_contact,
    hexagon_family,
    hexagon_sweep,
    min_rects,
    octagon_construct,
    octagon_preconditions,
    octagon_sweep,
    rect_gap,
)
from strategies import angle, polygons

SQRT2 = math.sqrt(2)


def hexagon_closed_form(s):
    """Area and perimeter of the square frame and of the diagonal frame of the shaved square."""
    return (1.0, 4.0), (2 * (1 - s), 2 * SQRT2 * (2 - s))


class TestBoundingRect:
    def test_square_at_zero(self, unit_square):
        r = bounding_rect_at(unit_square, 0.0)
        assert (r.area, r.perimeter) == pytest.approx((1, 4))
        assert r.degenerate_square

    def test_square_at_45(self, unit_square):
        r = bounding_rect_at(unit_square, math.pi / 4)
        assert r.area == pytest.approx(2.0)

    def test_quarter_turn_is_same_frame(self, unit_square):
        T = fig1_triangle(70)
        a, b = bounding_rect_at(T, 0.3), bounding_rect_at(T, 0.3 + math.pi / 2)
        assert a.area == pytest.approx(b.area) and rect_gap(a, b) == pytest.approx(0, abs=1e-9)

    @given(polygons(), angle)
    def test_contains_polygon(self, P, theta):
        r = bounding_rect_at(P, theta)
        tol = 1e-9 * measures(P).diameter
        assert all(r.contains(v, tol) for v in P.vertices)

    @given(polygons(), angle)
    def test_every_side_touches(self, P, theta):
        r = bounding_rect_at(P, theta)
        tol = 1e-9 * measures(P).diameter
        for n, h in r.supporting_lines():
            assert np.max(P.vertices @ [math.cos(n), math.sin(n)]) == pytest.approx(h, abs=tol)


class TestMinRects:
    def test_fig1_values(self, right_isosceles):
        rep = min_rects(right_isosceles)
        assert rep.r_perim.perimeter == pytest.approx(4, abs=1e-9)
        assert len(rep.area_ties) == 2
        assert all(abs(r.area - 1) <= 1e-9 for r in rep.area_ties)
        tilted = max(rep.area_ties, key=lambda r: r.perimeter)
        assert tilted.perimeter == pytest.approx(3 * SQRT2, abs=1e-9)
        # long side along the hypotenuse, which runs at 135 degrees
        assert math.degrees(tilted.orientation) == pytest.approx(135)

    def test_unit_square_is_its_own_box(self, unit_square):
        rep = min_rects(unit_square)
        assert rep.r_area.area == pytest.approx(1) and rep.r_perim.perimeter == pytest.approx(4)
        assert rep.gap_degrees == 0

    def test_rectangle_gap_zero(self):
        rep = min_rects(axis_rectangle(3, 1, 20))
        assert rep.gap_degrees == pytest.approx(0, abs=1e-9)
        assert math.degrees(rep.r_area.orientation) == pytest.approx(20)

    def test_tprime_gap(self):
        assert 40 < min_rects(fig1_triangle(91)).gap_degrees <= 45

    @given(polygons(max_vertices=20))
    def test_not_beaten_by_grid(self, P):
        rep = min_rects(P)
        _, _, (a, p) = rect_grid_oracle(P, 3600)
        assert rep.r_area.area <= a * (1 + 1e-9)
        assert rep.r_perim.perimeter <= p * (1 + 1e-9)

    @given(polygons(max_vertices=20))
    def test_flush_side(self, P):
        rep = min_rects(P)
        d = measures(P).diameter
        assert flush_contact(P, rep.r_area) > 1e-6 * d
        assert flush_contact(P, rep.r_perim) > 1e-6 * d

    @given(polygons(max_vertices=15), st.floats(0, 2 * math.pi), st.floats(0.1, 10))
    def test_similarity_invariance(self, P, rot, scale):
        a, b = min_rects(P), min_rects(P.transformed(rot, scale, (1.0, -2.0)))
        assert b.r_area.area == pytest.approx(a.r_area.area * scale ** 2, rel=1e-7)
        assert b.r_perim.perimeter == pytest.approx(a.r_perim.perimeter * scale, rel=1e-7)

    def test_square_gap_uses_both_side_directions(self):
        sq = OrientedRectangle((0, 0), 1, 1, 0.1, True)
        r = OrientedRectangle((0, 0), 2, 1, 0.1 + math.pi / 2, False)
        assert rect_gap(sq, r) == pytest.approx(0, abs=1e-9)


class TestHexagon:
    @pytest.mark.parametrize("s", [0.1, 0.45, 0.55, 0.7, 0.9])
    def test_matches_closed_form(self, s):
        (sq_a, sq_p), (dg_a, dg_p) = hexagon_closed_form(s)
        rep = min_rects(hexagon_family(s))
        assert rep.r_area.area == pytest.approx(min(sq_a, dg_a))
        assert rep.r_perim.perimeter == pytest.approx(min(sq_p, dg_p))

    def test_switch_points(self):
        s_a, s_p = hexagon_sweep(1000)
        # closed forms: 2(1 - s) = 1 and 2 sqrt2 (2 - s) = 4
        assert s_a == pytest.approx(0.5, abs=2e-3)
        assert s_p == pytest.approx(2 - SQRT2, abs=2e-3)

    def test_gap_between_switches(self):
        assert min_rects(hexagon_family(0.55)).gap_degrees == pytest.approx(45, abs=0.1)

    def test_diameter_along_diagonal(self):
        m = measures(hexagon_family(0.5))
        assert m.diameter == pytest.approx(SQRT2)
        assert math.degrees(m.diameter_angle) == pytest.approx(45)

    def test_bad_s(self):
        with pytest.raises(ValueError):
            hexagon_family(1.0)


class TestOctagon:
    dims = (10, 9.9, 11, 8.99)

    def test_valid_at_80(self):
        oc = octagon_construct(*self.dims, 80)
        assert oc.valid
        assert len(oc.polygon) == 8
        assert oc.report.gap_degrees == pytest.approx(80, abs=0.01)

    def test_generators_beat_grid(self):
        oc = octagon_construct(*self.dims, 80)
        _, _, (a, p) = rect_grid_oracle(oc.polygon)
        assert oc.report.r_area.area == pytest.approx(11 * 8.99, rel=1e-9)
        assert oc.report.r_perim.perimeter == pytest.approx(2 * (10 + 9.9), rel=1e-9)
        assert oc.report.r_area.area <= a * (1 + 1e-9) and oc.report.r_perim.perimeter <= p * (1 + 1e-9)

    def test_precondition_failure(self):
        oc = octagon_construct(*self.dims, 30)
        assert not oc.preconditions["angle_gt_45"] and not oc.valid

    def test_preconditions_for_paper_dims(self):
        pre = octagon_preconditions(*self.dims, 80)
        assert all(pre.values())

    def test_sweep_limit(self):
        _, flags, best = octagon_sweep(*self.dims)
        assert any(flags) and 82 <= best <= 84

    def test_bad_dims(self):
        with pytest.raises(ValueError):
            octagon_construct(9, 10, 11, 8.99, 80)
