"""Domain types shared by every stage of the conformity pipeline.

All types are immutable after construction and safe to share across
parallel workers. Units are SI throughout (meters, m/s, seconds,
radians); unit conversion happens only at ingestion boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "Rule",
    "Vec2",
    "VehicleState",
    "Frame",
    "Lane",
    "Scenario",
    "RcSample",
    "DriverScenarioScore",
    "Histogram",
    "RelativeBins",
    "AggregateReport",
    "validate_scenario",
]


class Rule(str, Enum):
    """Traffic rules the toolkit scores. Values double as file/wire tags."""

    SAFETY_DISTANCE = "dist"
    SPEED_LIMIT = "speed"


@dataclass(frozen=True, slots=True)
class Vec2:
    """Point or vector in the scenario plane (x east, y north, meters)."""

    x: float
    y: float

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.x - other.x, self.y - other.y)

    def scaled(self, k: float) -> Vec2:
        return Vec2(self.x * k, self.y * k)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y)


@dataclass(frozen=True, slots=True)
class VehicleState:
    """One road user's pose, motion, and footprint at a single frame.

    ``heading`` orients the bounding box; the rule engines derive travel
    direction from ``velocity``, not from heading. ``valid=False`` states
    are carried through parsing but skipped by both rule engines.
    """

    vehicle_id: str
    center: Vec2
    heading: float
    velocity: Vec2
    length: float
    width: float
    valid: bool = True

    def speed(self) -> float:
        return self.velocity.norm()


@dataclass(frozen=True, slots=True)
class Frame:
    """All vehicle states observed at one sampling instant (a scene)."""

    frame_index: int
    time_s: float
    vehicles: tuple[VehicleState, ...]

    def __post_init__(self):
        object.__setattr__(self, "vehicles", tuple(self.vehicles))


@dataclass(frozen=True, slots=True)
class Lane:
    """Lane centerline polyline with its posted speed limit, if known."""

    lane_id: str
    polyline: tuple[Vec2, ...]
    speed_limit_mps: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "polyline", tuple(self.polyline))


@dataclass(frozen=True, slots=True)
class Scenario:
    """Ordered frames over a shared lane map, sampled at a known rate."""

    scenario_id: str
    sample_rate_hz: float
    lanes: tuple[Lane, ...]
    frames: tuple[Frame, ...]

    def __post_init__(self):
        object.__setattr__(self, "lanes", tuple(self.lanes))
        object.__setattr__(self, "frames", tuple(self.frames))


@dataclass(frozen=True, slots=True)
class RcSample:
    """One (rule, scenario, driver, frame) conformity value in [0, 1]."""

    rule: Rule
    scenario_id: str
    vehicle_id: str
    frame_index: int
    rc: float

    def __post_init__(self):
        if not (math.isfinite(self.rc) and 0.0 <= self.rc <= 1.0):
            raise ValueError(f"rc must be in [0, 1], got {self.rc!r}")


@dataclass(frozen=True, slots=True)
class DriverScenarioScore:
    """A driver's mean conformity over the frames scored in one scenario."""

    rule: Rule
    scenario_id: str
    vehicle_id: str
    rc_mean: float
    frame_count: int

    def __post_init__(self):
        if not (math.isfinite(self.rc_mean) and 0.0 <= self.rc_mean <= 1.0):
            raise ValueError(f"rc_mean must be in [0, 1], got {self.rc_mean!r}")
        if self.frame_count < 1:
            raise ValueError(f"frame_count must be >= 1, got {self.frame_count}")


@dataclass(frozen=True, slots=True)
class Histogram:
    """Raw counts of driver scores over uniform bins spanning [0, 1].

    Bin i covers [edges[i], edges[i+1]); the last bin is closed at 1.0 so
    strict compliance is representable. Log scaling is a rendering concern
    and never applied to the stored counts.
    """

    bin_count: int
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bin_edges", tuple(self.bin_edges))
        object.__setattr__(self, "counts", tuple(self.counts))
        if self.bin_count < 1:
            raise ValueError(f"bin_count must be >= 1, got {self.bin_count}")
        if len(self.bin_edges) != self.bin_count + 1:
            raise ValueError("bin_edges must have bin_count + 1 entries")
        if len(self.counts) != self.bin_count:
            raise ValueError("counts must have bin_count entries")
        if self.bin_edges[0] != 0.0 or self.bin_edges[-1] != 1.0:
            raise ValueError("bin_edges must span [0, 1]")
        if any(a >= b for a, b in zip(self.bin_edges, self.bin_edges[1:])):
            raise ValueError("bin_edges must be strictly increasing")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")


@dataclass(frozen=True, slots=True)
class RelativeBins:
    """Share of driver scores per quarter interval, plus the strict share.

    ``quarters`` covers [0,0.25), [0.25,0.5), [0.5,0.75), [0.75,1.0];
    ``strict_share`` is the fraction of scores exactly equal to 1.0 and is
    therefore a subset of the last quarter.
    """

    quarters: tuple[float, float, float, float]
    strict_share: float

    def __post_init__(self):
        object.__setattr__(self, "quarters", tuple(self.quarters))
        if len(self.quarters) != 4:
            raise ValueError("quarters must have exactly 4 entries")
        if abs(sum(self.quarters) - 1.0) > 1e-9:
            raise ValueError(f"quarters must sum to 1.0, got {sum(self.quarters)!r}")
        if not (0.0 <= self.strict_share <= self.quarters[3]):
            raise ValueError("strict_share must lie in [0, quarters[3]]")


@dataclass(frozen=True, slots=True)
class AggregateReport:
    """Per-scenario and dataset-level conformity for one rule.

    ``dataset_mean`` and ``relative_bins`` are None only in the degenerate
    case where no driver was scored at all (``sample_count == 0``).
    """

    rule: Rule
    scenario_scores: dict[str, float]
    dataset_mean: float | None
    driver_scores: tuple[DriverScenarioScore, ...]
    histogram: Histogram
    relative_bins: RelativeBins | None
    sample_count: int

    def __post_init__(self):
        object.__setattr__(self, "driver_scores", tuple(self.driver_scores))
        if self.sample_count < 0:
            raise ValueError("sample_count must be >= 0")
        if self.scenario_scores:
            values = [self.scenario_scores[k] for k in sorted(self.scenario_scores)]
            expected = sum(values) / len(values)
            if self.dataset_mean is None or abs(self.dataset_mean - expected) > 1e-12:
                raise ValueError(
                    f"dataset_mean {self.dataset_mean!r} does not equal the mean "
                    f"of scenario scores {expected!r}"
                )
        elif self.dataset_mean is not None:
            raise ValueError("dataset_mean must be None when no scenario was scored")


def _is_positive(x: float) -> bool:
    return math.isfinite(x) and x > 0.0


def _vehicle_problems(frame_pos: int, v: VehicleState) -> list[str]:
    tag = f"Frame {frame_pos}, vehicle '{v.vehicle_id}'"
    problems = []
    numeric = (
        ("center.x", v.center.x),
        ("center.y", v.center.y),
        ("velocity.x", v.velocity.x),
        ("velocity.y", v.velocity.y),
        ("heading", v.heading),
        ("length", v.length),
        ("width", v.width),
    )
    for name, value in numeric:
        if not math.isfinite(value):
            problems.append(f"{tag}: {name} is not finite")
    if math.isfinite(v.heading) and not (-math.pi <= v.heading <= math.pi):
        problems.append(f"{tag}: heading {v.heading!r} outside [-pi, pi]")
    if v.valid:
        if not _is_positive(v.length):
            problems.append(f"{tag}: length must be > 0 when valid (got {v.length!r})")
        if not _is_positive(v.width):
            problems.append(f"{tag}: width must be > 0 when valid (got {v.width!r})")
    return problems


def validate_scenario(scenario: Scenario) -> list[str]:
    """Check every domain invariant; return one description per violation.

    Never raises: an empty list means the scenario is well-formed. Each
    violation names the offending type, field, and frame/lane position.
    """
    problems: list[str] = []
    if not _is_positive(scenario.sample_rate_hz):
        problems.append(
            f"Scenario: sample_rate_hz must be a positive finite number "
            f"(got {scenario.sample_rate_hz!r})"
        )
    if not scenario.frames:
        problems.append("Scenario: frames is empty")

    seen_lanes: set[str] = set()
    for li, lane in enumerate(scenario.lanes):
        if lane.lane_id in seen_lanes:
            problems.append(f"Scenario: duplicate lane_id '{lane.lane_id}'")
        seen_lanes.add(lane.lane_id)
        tag = f"Lane {li} ('{lane.lane_id}')"
        if len(lane.polyline) < 2:
            problems.append(
                f"{tag}: polyline has {len(lane.polyline)} point(s), need at least 2"
            )
        for pi, p in enumerate(lane.polyline):
            if not p.is_finite():
                problems.append(f"{tag}: non-finite polyline point at index {pi}")
        for pi in range(1, len(lane.polyline)):
            a, b = lane.polyline[pi - 1], lane.polyline[pi]
            if a.x == b.x and a.y == b.y:
                problems.append(
                    f"{tag}: identical consecutive polyline points at index {pi}"
                )
        if lane.speed_limit_mps is not None and not _is_positive(lane.speed_limit_mps):
            problems.append(
                f"{tag}: speed_limit_mps must be > 0 (got {lane.speed_limit_mps!r})"
            )

    prev_index: int | None = None
    prev_time: float | None = None
    for fi, frame in enumerate(scenario.frames):
        if frame.frame_index < 0:
            problems.append(f"Frame {fi}: frame_index is negative ({frame.frame_index})")
        if not math.isfinite(frame.time_s) or frame.time_s < 0:
            problems.append(f"Frame {fi}: time_s must be finite and >= 0 (got {frame.time_s!r})")
        if prev_index is not None and frame.frame_index <= prev_index:
            problems.append(
                f"Frame {fi}: frame_index not strictly increasing "
                f"({frame.frame_index} after {prev_index})"
            )
        if prev_time is not None and not (frame.time_s > prev_time):
            problems.append(
                f"Frame {fi}: time_s not strictly increasing "
                f"({frame.time_s!r} after {prev_time!r})"
            )
        prev_index, prev_time = frame.frame_index, frame.time_s

        seen: set[str] = set()
        for v in frame.vehicles:
            if v.vehicle_id in seen:
                problems.append(f"Frame {fi}: duplicate vehicle_id '{v.vehicle_id}'")
            seen.add(v.vehicle_id)
            problems.extend(_vehicle_problems(fi, v))
    return problems
