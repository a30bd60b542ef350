"""Pure 2-D geometry kernels for the rule engines.

Footprint construction, front-point derivation, projection segments,
segment-vs-oriented-box entry distance (slab method), and nearest-vertex
polyline distance. Everything here is pure and reentrant; the rule
engines call these in tight per-frame loops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateVehicle, EmptyPolyline, ZeroVector
from .types import Vec2, VehicleState

__all__ = [
    "OrientedBox",
    "Segment",
    "footprint",
    "front_points",
    "projection_segment",
    "segment_box_entry_distance",
    "point_polyline_distance",
    "heading_angle_between",
]


@dataclass(frozen=True, slots=True)
class OrientedBox:
    """Rectangle given by center, heading (radians), and half extents (m)."""

    center: Vec2
    heading: float
    half_length: float
    half_width: float

    def corners(self) -> tuple[Vec2, Vec2, Vec2, Vec2]:
        """Corners in counter-clockwise order starting at front-left."""
        c, s = math.cos(self.heading), math.sin(self.heading)
        hl, hw = self.half_length, self.half_width
        local = ((hl, hw), (-hl, hw), (-hl, -hw), (hl, -hw))
        return tuple(
            Vec2(self.center.x + lx * c - ly * s, self.center.y + lx * s + ly * c)
            for lx, ly in local
        )

    def contains(self, p: Vec2, tol: float = 0.0) -> bool:
        lx, ly = _to_local(p, self)
        return abs(lx) <= self.half_length + tol and abs(ly) <= self.half_width + tol


@dataclass(frozen=True, slots=True)
class Segment:
    """Directed segment from origin to tip."""

    origin: Vec2
    tip: Vec2

    def length(self) -> float:
        return math.hypot(self.tip.x - self.origin.x, self.tip.y - self.origin.y)


def _to_local(p: Vec2, box: OrientedBox) -> tuple[float, float]:
    """Express p in the box frame (x along heading, y to its left)."""
    c, s = math.cos(box.heading), math.sin(box.heading)
    dx, dy = p.x - box.center.x, p.y - box.center.y
    return dx * c + dy * s, -dx * s + dy * c


def footprint(v: VehicleState) -> OrientedBox:
    """Oriented rectangle occupied by the vehicle."""
    if not (v.length > 0.0 and v.width > 0.0):
        raise DegenerateVehicle(
            f"vehicle '{v.vehicle_id}' has non-positive footprint "
            f"({v.length!r} x {v.width!r})"
        )
    return OrientedBox(v.center, v.heading, v.length / 2.0, v.width / 2.0)


def front_points(v: VehicleState) -> tuple[Vec2, Vec2, Vec2]:
    """Center, left, and right points of the vehicle's front edge.

    The center-front point sits half a length ahead of the center along
    the heading; the left/right points are offset by half a width along
    the heading's left normal.
    """
    if not (v.length > 0.0 and v.width > 0.0):
        raise DegenerateVehicle(
            f"vehicle '{v.vehicle_id}' has non-positive footprint "
            f"({v.length!r} x {v.width!r})"
        )
    c, s = math.cos(v.heading), math.sin(v.heading)
    half_len, half_wid = v.length / 2.0, v.width / 2.0
    center_front = Vec2(v.center.x + half_len * c, v.center.y + half_len * s)
    left = Vec2(center_front.x - half_wid * s, center_front.y + half_wid * c)
    right = Vec2(center_front.x + half_wid * s, center_front.y - half_wid * c)
    return center_front, left, right


def projection_segment(origin: Vec2, velocity: Vec2, horizon_s: float) -> Segment:
    """Segment from origin to the position reached after horizon_s at velocity.

    A zero velocity yields a zero-length segment; callers filter by speed
    before projecting.
    """
    if horizon_s <= 0.0:
        raise ValueError(f"horizon_s must be > 0, got {horizon_s!r}")
    tip = Vec2(origin.x + horizon_s * velocity.x, origin.y + horizon_s * velocity.y)
    return Segment(origin, tip)


def segment_box_entry_distance(seg: Segment, box: OrientedBox) -> float | None:
    """Distance from seg.origin to the point where the segment enters the box.

    Slab test in the box's local frame: the segment is parametrized as
    origin + t*(tip - origin) with t in [0, 1], and each axis clips the
    admissible t interval. Returns None when the segment misses the box,
    0.0 when the origin starts inside, and counts grazing contact as a
    hit. The result is always in [0, |seg|].
    """
    ox, oy = _to_local(seg.origin, box)
    tx, ty = _to_local(seg.tip, box)
    dx, dy = tx - ox, ty - oy

    t_enter, t_exit = 0.0, 1.0
    for coord, delta, half in ((ox, dx, box.half_length), (oy, dy, box.half_width)):
        if delta == 0.0:
            if coord < -half or coord > half:
                return None
            continue
        t1 = (-half - coord) / delta
        t2 = (half - coord) / delta
        if t1 > t2:
            t1, t2 = t2, t1
        if t1 > t_enter:
            t_enter = t1
        if t2 < t_exit:
            t_exit = t2
        if t_enter > t_exit:
            return None
    return t_enter * seg.length()


def point_polyline_distance(p: Vec2, polyline: tuple[Vec2, ...] | list[Vec2]) -> tuple[float, int]:
    """Minimum Euclidean distance from p to the polyline's vertex set.

    Distances are taken to the vertices only, not to interpolated
    segments; ties are broken by the lowest vertex index. Returns
    (distance, index of the nearest vertex).
    """
    if len(polyline) == 0:
        raise EmptyPolyline("polyline has no points")
    best = math.inf
    best_index = -1
    for i, q in enumerate(polyline):
        d = math.hypot(q.x - p.x, q.y - p.y)
        if d < best:
            best = d
            best_index = i
    return best, best_index


def heading_angle_between(a: Vec2, b: Vec2) -> float:
    """Unsigned angle between two direction vectors, in [0, pi].

    Computed as atan2(|cross|, dot) for numerical robustness near 0 and pi.
    """
    if a.x == 0.0 and a.y == 0.0:
        raise ZeroVector("first vector is zero")
    if b.x == 0.0 and b.y == 0.0:
        raise ZeroVector("second vector is zero")
    cross = a.x * b.y - a.y * b.x
    dot = a.x * b.x + a.y * b.y
    return math.atan2(abs(cross), dot)
