"""Geometry kernels: worked examples plus randomized property checks."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rulegauge.errors import DegenerateVehicle, EmptyPolyline, ZeroVector
from rulegauge.geometry import (
    OrientedBox,
    Segment,
    footprint,
    front_points,
    heading_angle_between,
    point_polyline_distance,
    projection_segment,
    segment_box_entry_distance,
)
from rulegauge.types import Vec2

from conftest import vehicle


def approx_vec(v: Vec2, x: float, y: float, abs_tol: float = 1e-12):
    assert v.x == pytest.approx(x, abs=abs_tol)
    assert v.y == pytest.approx(y, abs=abs_tol)


class TestFootprint:
    def test_axis_aligned_corners(self):
        box = footprint(vehicle(length=4.0, width=2.0))
        corners = {(round(c.x, 9), round(c.y, 9)) for c in box.corners()}
        assert corners == {(2.0, 1.0), (-2.0, 1.0), (-2.0, -1.0), (2.0, -1.0)}

    def test_quarter_turn_swaps_extents(self):
        box = footprint(vehicle(heading=math.pi / 2, length=4.0, width=2.0))
        corners = {(round(c.x, 9), round(c.y, 9)) for c in box.corners()}
        assert corners == {(1.0, 2.0), (-1.0, 2.0), (-1.0, -2.0), (1.0, -2.0)}

    def test_diagonal_rotation_matches_hand_rotation(self):
        # oracle: rotate the local corners (+-2, +-1) by 45 degrees by hand
        r = math.sqrt(2.0) / 2.0
        expected = {
            (round((2 * r - 1 * r), 9), round((2 * r + 1 * r), 9)),
            (round((-2 * r - 1 * r), 9), round((-2 * r + 1 * r), 9)),
            (round((-2 * r + 1 * r), 9), round((-2 * r - 1 * r), 9)),
            (round((2 * r + 1 * r), 9), round((2 * r - 1 * r), 9)),
        }
        box = footprint(vehicle(heading=math.pi / 4, length=4.0, width=2.0))
        corners = {(round(c.x, 9), round(c.y, 9)) for c in box.corners()}
        assert corners == expected

    def test_corners_form_proper_rectangle(self):
        box = OrientedBox(Vec2(3.0, -7.0), 1.234, 2.5, 0.8)
        a, b, c, d = box.corners()
        diag1 = math.hypot(c.x - a.x, c.y - a.y)
        diag2 = math.hypot(d.x - b.x, d.y - b.y)
        assert abs(diag1 - diag2) < 1e-9

    def test_degenerate_dimensions_raise(self):
        with pytest.raises(DegenerateVehicle):
            footprint(vehicle(length=0.0))
        with pytest.raises(DegenerateVehicle):
            front_points(vehicle(width=-1.0))


class TestFrontPoints:
    def test_heading_east(self):
        center, left, right = front_points(vehicle(length=4.0, width=2.0))
        approx_vec(center, 2.0, 0.0)
        approx_vec(left, 2.0, 1.0)
        approx_vec(right, 2.0, -1.0)

    def test_heading_west_mirrors(self):
        center, left, right = front_points(vehicle(heading=math.pi, length=4.0, width=2.0))
        approx_vec(center, -2.0, 0.0)
        approx_vec(left, -2.0, -1.0)
        approx_vec(right, -2.0, 1.0)

    def test_heading_north(self):
        center, left, right = front_points(vehicle(heading=math.pi / 2, length=4.0, width=2.0))
        approx_vec(center, 0.0, 2.0)
        approx_vec(left, -1.0, 2.0)
        approx_vec(right, 1.0, 2.0)


class TestProjectionSegment:
    def test_three_second_projection_at_3_mps_is_9_m(self):
        seg = projection_segment(Vec2(0.0, 0.0), Vec2(3.0, 0.0), 3.0)
        assert seg.tip == Vec2(9.0, 0.0)
        assert seg.length() == 9.0

    def test_zero_velocity_gives_zero_length(self):
        seg = projection_segment(Vec2(1.0, 1.0), Vec2(0.0, 0.0), 3.0)
        assert seg.origin == seg.tip
        assert seg.length() == 0.0

    def test_direct_arithmetic(self):
        seg = projection_segment(Vec2(1.0, 1.0), Vec2(1.0, 2.0), 3.0)
        assert seg.tip == Vec2(4.0, 7.0)

    def test_rejects_non_positive_horizon(self):
        with pytest.raises(ValueError):
            projection_segment(Vec2(0, 0), Vec2(1, 0), 0.0)


def _random_box(rng) -> OrientedBox:
    return OrientedBox(
        Vec2(float(rng.uniform(-20, 20)), float(rng.uniform(-20, 20))),
        float(rng.uniform(-math.pi, math.pi)),
        float(rng.uniform(0.3, 5.0)),
        float(rng.uniform(0.3, 3.0)),
    )


def _random_segment(rng) -> Segment:
    return Segment(
        Vec2(float(rng.uniform(-25, 25)), float(rng.uniform(-25, 25))),
        Vec2(float(rng.uniform(-25, 25)), float(rng.uniform(-25, 25))),
    )


class TestSegmentBoxEntryDistance:
    def test_head_on_entry_at_near_face(self):
        # near face of a 4 x 2 box centered at (10, 0) is x = 8
        seg = Segment(Vec2(0.0, 0.0), Vec2(9.0, 0.0))
        box = OrientedBox(Vec2(10.0, 0.0), 0.0, 2.0, 1.0)
        c = segment_box_entry_distance(seg, box)
        assert c == pytest.approx(8.0, abs=1e-12)
        # cross-check with dense sampling along the segment
        ts = np.linspace(0.0, 1.0, 100_001)
        xs = ts * 9.0
        inside = (np.abs(xs - 10.0) <= 2.0) & (np.abs(np.zeros_like(xs)) <= 1.0)
        sampled = ts[np.flatnonzero(inside)[0]] * 9.0
        assert c == pytest.approx(sampled, abs=1e-3)

    def test_disjoint_returns_none(self):
        seg = Segment(Vec2(0.0, 0.0), Vec2(9.0, 0.0))
        box = OrientedBox(Vec2(20.0, 0.0), 0.0, 2.0, 1.0)
        assert segment_box_entry_distance(seg, box) is None

    def test_origin_inside_returns_zero(self):
        seg = Segment(Vec2(10.0, 0.5), Vec2(30.0, 0.5))
        box = OrientedBox(Vec2(10.0, 0.0), 0.0, 2.0, 1.0)
        assert segment_box_entry_distance(seg, box) == 0.0

    def test_box_behind_origin_misses(self):
        seg = Segment(Vec2(0.0, 0.0), Vec2(9.0, 0.0))
        box = OrientedBox(Vec2(-10.0, 0.0), 0.0, 2.0, 1.0)
        assert segment_box_entry_distance(seg, box) is None

    def test_grazing_contact_counts_as_hit(self):
        seg = Segment(Vec2(0.0, 1.0), Vec2(20.0, 1.0))
        box = OrientedBox(Vec2(10.0, 0.0), 0.0, 2.0, 1.0)
        c = segment_box_entry_distance(seg, box)
        assert c == pytest.approx(8.0, abs=1e-12)

    def test_zero_length_segment(self):
        box = OrientedBox(Vec2(0.0, 0.0), 0.0, 2.0, 1.0)
        assert segment_box_entry_distance(Segment(Vec2(0, 0), Vec2(0, 0)), box) == 0.0
        assert segment_box_entry_distance(Segment(Vec2(5, 5), Vec2(5, 5)), box) is None

    def test_entry_point_lies_on_box(self, rng):
        hits = 0
        for _ in range(2000):
            seg, box = _random_segment(rng), _random_box(rng)
            c = segment_box_entry_distance(seg, box)
            if c is None:
                continue
            hits += 1
            length = seg.length()
            t = c / length if length else 0.0
            p = Vec2(
                seg.origin.x + t * (seg.tip.x - seg.origin.x),
                seg.origin.y + t * (seg.tip.y - seg.origin.y),
            )
            assert box.contains(p, tol=1e-9)
            assert 0.0 <= c <= length
        assert hits > 100  # sanity: the random mix actually exercises hits

    def test_rigid_motion_equivariance(self, rng):
        for _ in range(10_000):
            seg, box = _random_segment(rng), _random_box(rng)
            baseline = segment_box_entry_distance(seg, box)

            angle = float(rng.uniform(-math.pi, math.pi))
            shift = Vec2(float(rng.uniform(-50, 50)), float(rng.uniform(-50, 50)))
            cos_a, sin_a = math.cos(angle), math.sin(angle)

            def move(p: Vec2) -> Vec2:
                return Vec2(
                    p.x * cos_a - p.y * sin_a + shift.x,
                    p.x * sin_a + p.y * cos_a + shift.y,
                )

            heading = box.heading + angle
            heading = math.atan2(math.sin(heading), math.cos(heading))
            moved = segment_box_entry_distance(
                Segment(move(seg.origin), move(seg.tip)),
                OrientedBox(move(box.center), heading, box.half_length, box.half_width),
            )
            if baseline is None:
                # grazing configurations may flip under rounding; require the
                # moved result, if any, to sit at the segment boundary contact
                if moved is not None:
                    assert box.contains(
                        _point_at(seg, moved / max(seg.length(), 1e-300)), tol=1e-6
                    )
                continue
            assert moved is not None
            assert abs(moved - baseline) < 1e-9


def _point_at(seg: Segment, t: float) -> Vec2:
    return Vec2(
        seg.origin.x + t * (seg.tip.x - seg.origin.x),
        seg.origin.y + t * (seg.tip.y - seg.origin.y),
    )


class TestPointPolylineDistance:
    def test_single_point_345(self):
        d, i = point_polyline_distance(Vec2(0.0, 0.0), (Vec2(3.0, 4.0),))
        assert (d, i) == (5.0, 0)

    def test_tie_broken_by_lowest_index(self):
        poly = (Vec2(1.0, 0.0), Vec2(2.0, 0.0), Vec2(1.0, 0.0))
        assert point_polyline_distance(Vec2(0.0, 0.0), poly) == (1.0, 0)

    def test_matches_exhaustive_scan(self, rng):
        p = Vec2(0.0, 5.0)
        poly = tuple(
            Vec2(float(rng.uniform(-50, 50)), float(rng.uniform(-50, 50))) for _ in range(100)
        )
        d, i = point_polyline_distance(p, poly)
        brute = [math.hypot(q.x - p.x, q.y - p.y) for q in poly]
        assert d == min(brute)
        assert i == brute.index(min(brute))

    def test_empty_polyline_raises(self):
        with pytest.raises(EmptyPolyline):
            point_polyline_distance(Vec2(0, 0), ())


class TestHeadingAngleBetween:
    @pytest.mark.parametrize(
        "a,b,expected",
        [
            (Vec2(1, 0), Vec2(0, 1), math.pi / 2),
            (Vec2(1, 0), Vec2(1, 0), 0.0),
            (Vec2(1, 0), Vec2(-1, 0), math.pi),
        ],
    )
    def test_reference_angles(self, a, b, expected):
        assert heading_angle_between(a, b) == pytest.approx(expected, abs=1e-15)

    def test_zero_vector_raises(self):
        with pytest.raises(ZeroVector):
            heading_angle_between(Vec2(0, 0), Vec2(1, 0))
        with pytest.raises(ZeroVector):
            heading_angle_between(Vec2(1, 0), Vec2(0, 0))

    @given(
        ax=st.floats(-1e3, 1e3),
        ay=st.floats(-1e3, 1e3),
        bx=st.floats(-1e3, 1e3),
        by=st.floats(-1e3, 1e3),
    )
    def test_range_and_symmetry(self, ax, ay, bx, by):
        a, b = Vec2(ax, ay), Vec2(bx, by)
        if (ax == 0 and ay == 0) or (bx == 0 and by == 0):
            return
        angle = heading_angle_between(a, b)
        assert 0.0 <= angle <= math.pi
        assert angle == heading_angle_between(b, a)
