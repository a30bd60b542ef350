"""Safety-distance rule engine (three-second rule).

A scored vehicle projects three rays (front-center, front-left,
front-right) along its velocity vector, each spanning the distance it
would cover in the configured horizon. The conformity degree is the
entry distance into the nearest same-direction vehicle's footprint,
normalized by the ray length, clamped to [0, 1]; no intersection means
full conformity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import geometry
from .types import RcSample, Rule, Scenario, Vec2, VehicleState

__all__ = [
    "ProjectionRay",
    "RayCombiner",
    "SafetyDistanceConfig",
    "DistanceViolationDetail",
    "rc_dist_frame",
    "score_scenario_dist",
]

# Candidates slower than this have no usable travel direction; their box
# heading stands in for the velocity when checking the direction gate.
STATIONARY_SPEED_MPS = 0.1


class ProjectionRay(Enum):
    CENTER = "center"
    LEFT = "left"
    RIGHT = "right"


class RayCombiner(Enum):
    """How the three per-ray degrees combine into one value. MIN is the
    conservative (worst-case) reading and the default."""

    MIN = "min"
    MEAN = "mean"


@dataclass(frozen=True, slots=True)
class SafetyDistanceConfig:
    """Tunables for the safety-distance rule.

    Defaults: 3 s horizon, 5 km/h minimum speed for the scored vehicle,
    and a direction gate of 20% of a half-turn (36 degrees) separating
    same-direction from crossing traffic. ``filter_slow_candidates``
    optionally drops slow vehicles as lead candidates too; by default a
    parked car ahead still counts as an obstruction.
    """

    horizon_s: float = 3.0
    min_speed_mps: float = 5.0 / 3.6
    max_heading_dev_rad: float = 0.2 * math.pi
    combine: RayCombiner = RayCombiner.MIN
    filter_slow_candidates: bool = False

    def __post_init__(self):
        for name in ("horizon_s", "min_speed_mps", "max_heading_dev_rad"):
            value = getattr(self, name)
            if not (value > 0.0 and math.isfinite(value)):
                raise ValueError(f"{name} must be > 0, got {value!r}")


@dataclass(frozen=True, slots=True)
class DistanceViolationDetail:
    """Worst ray of a scored frame: which lead was hit, where, and the
    resulting degree."""

    ego_id: str
    lead_id: str
    ray: ProjectionRay
    c: float
    z_len: float
    rc: float

    def __post_init__(self):
        if self.c > self.z_len:
            raise ValueError(f"entry distance {self.c!r} exceeds ray length {self.z_len!r}")
        if self.rc != min(1.0, max(0.0, self.c / self.z_len)):
            raise ValueError("rc must equal clamp(c / z_len, 0, 1)")


_DEFAULT_CONFIG = SafetyDistanceConfig()


def _candidate_direction(other: VehicleState) -> Vec2:
    if other.speed() < STATIONARY_SPEED_MPS:
        return Vec2(math.cos(other.heading), math.sin(other.heading))
    return other.velocity


def rc_dist_frame(
    ego: VehicleState,
    others: list[VehicleState] | tuple[VehicleState, ...],
    cfg: SafetyDistanceConfig = _DEFAULT_CONFIG,
) -> tuple[float, DistanceViolationDetail | None] | None:
    """Safety-distance conformity of one vehicle in one frame.

    Returns None when the vehicle is not scored (invalid, or slower than
    cfg.min_speed_mps). Otherwise returns (rc, detail) where rc is in
    [0, 1] and detail describes the worst intersected ray, or is None if
    no ray intersected a candidate.
    """
    boxes = {}
    for other in others:
        if other.valid and other.vehicle_id != ego.vehicle_id:
            boxes[other.vehicle_id] = (other, geometry.footprint(other))
    return _rc_dist_frame(ego, boxes, cfg)


def _rc_dist_frame(
    ego: VehicleState,
    boxes: dict[str, tuple[VehicleState, geometry.OrientedBox]],
    cfg: SafetyDistanceConfig,
) -> tuple[float, DistanceViolationDetail | None] | None:
    if not ego.valid:
        return None
    speed = ego.speed()
    if speed < cfg.min_speed_mps:
        return None

    candidates = []
    for vehicle_id, (other, box) in boxes.items():
        if vehicle_id == ego.vehicle_id:
            continue
        if cfg.filter_slow_candidates and other.speed() < cfg.min_speed_mps:
            continue
        deviation = geometry.heading_angle_between(ego.velocity, _candidate_direction(other))
        if deviation > cfg.max_heading_dev_rad:
            continue
        candidates.append((other, box))

    origins = geometry.front_points(ego)
    rays = (ProjectionRay.CENTER, ProjectionRay.LEFT, ProjectionRay.RIGHT)
    z_len = None
    per_ray: list[tuple[float, DistanceViolationDetail | None]] = []
    for ray, origin in zip(rays, origins):
        seg = geometry.projection_segment(origin, ego.velocity, cfg.horizon_s)
        if z_len is None:
            z_len = seg.length()
        closest_c = None
        closest_lead = None
        for other, box in candidates:
            c = geometry.segment_box_entry_distance(seg, box)
            if c is not None and (closest_c is None or c < closest_c):
                closest_c = c
                closest_lead = other
        if closest_c is None:
            per_ray.append((1.0, None))
        else:
            rc_ray = min(1.0, max(0.0, closest_c / z_len))
            per_ray.append(
                (
                    rc_ray,
                    DistanceViolationDetail(
                        ego_id=ego.vehicle_id,
                        lead_id=closest_lead.vehicle_id,
                        ray=ray,
                        c=closest_c,
                        z_len=z_len,
                        rc=rc_ray,
                    ),
                )
            )

    worst = min(range(len(per_ray)), key=lambda i: per_ray[i][0])
    if cfg.combine is RayCombiner.MIN:
        return per_ray[worst]
    mean_rc = sum(rc for rc, _ in per_ray) / len(per_ray)
    return min(1.0, max(0.0, mean_rc)), per_ray[worst][1]


def score_scenario_dist(
    scenario: Scenario, cfg: SafetyDistanceConfig = _DEFAULT_CONFIG
) -> list[RcSample]:
    """One RcSample per (vehicle, frame) the rule scores, frame-major and
    sorted by vehicle_id within a frame."""
    samples: list[RcSample] = []
    for frame in scenario.frames:
        boxes = {
            v.vehicle_id: (v, geometry.footprint(v))
            for v in frame.vehicles
            if v.valid
        }
        for ego in sorted(frame.vehicles, key=lambda v: v.vehicle_id):
            result = _rc_dist_frame(ego, boxes, cfg)
            if result is None:
                continue
            rc, _ = result
            samples.append(
                RcSample(
                    rule=Rule.SAFETY_DISTANCE,
                    scenario_id=scenario.scenario_id,
                    vehicle_id=ego.vehicle_id,
                    frame_index=frame.frame_index,
                    rc=rc,
                )
            )
    return samples
