"""Speed-limit rule engine.

Each vehicle is matched to the lane whose centerline vertices are
nearest to it, gated by a maximum matching distance. Vehicles well below
the limit are excluded as parked or congested; the conformity degree of
the rest is limit/speed, clamped at full compliance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import geometry
from .types import Lane, RcSample, Rule, Scenario, VehicleState

__all__ = ["SpeedLimitConfig", "assign_lane", "rc_speed_frame", "score_scenario_speed"]


@dataclass(frozen=True, slots=True)
class SpeedLimitConfig:
    """Tunables for the speed-limit rule.

    The generous 10 m matching gate compensates for maps whose lanes lack
    centerlines; tighten it for cleaner maps. Vehicles below
    ``min_fraction_of_limit`` of their lane's limit are not scored.
    """

    max_lane_dist_m: float = 10.0
    min_fraction_of_limit: float = 0.8

    def __post_init__(self):
        if not (self.max_lane_dist_m > 0.0 and math.isfinite(self.max_lane_dist_m)):
            raise ValueError(f"max_lane_dist_m must be > 0, got {self.max_lane_dist_m!r}")
        if not (0.0 < self.min_fraction_of_limit <= 1.0):
            raise ValueError(
                f"min_fraction_of_limit must be in (0, 1], got {self.min_fraction_of_limit!r}"
            )


_DEFAULT_CONFIG = SpeedLimitConfig()


def assign_lane(
    v: VehicleState,
    lanes: list[Lane] | tuple[Lane, ...],
    cfg: SpeedLimitConfig = _DEFAULT_CONFIG,
) -> Lane | None:
    """Nearest lane by centerline-vertex distance, or None.

    The nearest lane is chosen first (ties broken by lane_id); it is then
    rejected if it is farther than the matching gate or carries no speed
    limit. There is no fallback to the second-nearest lane: that could
    assign an oncoming lane's limit.
    """
    best: tuple[float, str] | None = None
    best_lane: Lane | None = None
    for lane in lanes:
        distance, _ = geometry.point_polyline_distance(v.center, lane.polyline)
        key = (distance, lane.lane_id)
        if best is None or key < best:
            best = key
            best_lane = lane
    if best_lane is None:
        return None
    if best[0] > cfg.max_lane_dist_m or best_lane.speed_limit_mps is None:
        return None
    return best_lane


def rc_speed_frame(
    v: VehicleState, lane: Lane, cfg: SpeedLimitConfig = _DEFAULT_CONFIG
) -> float | None:
    """Speed-limit conformity min(1, limit/speed), or None when the
    vehicle is too slow to be scored (parked or congested)."""
    limit = lane.speed_limit_mps
    if limit is None:
        raise ValueError(f"lane '{lane.lane_id}' has no speed limit")
    speed = v.speed()
    if speed < cfg.min_fraction_of_limit * limit:
        return None
    return min(1.0, limit / speed)


def score_scenario_speed(
    scenario: Scenario, cfg: SpeedLimitConfig = _DEFAULT_CONFIG
) -> list[RcSample]:
    """One RcSample per (valid vehicle, frame) that passes lane assignment
    and the slow-traffic filter; frame-major, sorted by vehicle_id."""
    samples: list[RcSample] = []
    if not scenario.lanes:
        return samples
    for frame in scenario.frames:
        for v in sorted(frame.vehicles, key=lambda veh: veh.vehicle_id):
            if not v.valid:
                continue
            lane = assign_lane(v, scenario.lanes, cfg)
            if lane is None:
                continue
            rc = rc_speed_frame(v, lane, cfg)
            if rc is None:
                continue
            samples.append(
                RcSample(
                    rule=Rule.SPEED_LIMIT,
                    scenario_id=scenario.scenario_id,
                    vehicle_id=v.vehicle_id,
                    frame_index=frame.frame_index,
                    rc=rc,
                )
            )
    return samples
