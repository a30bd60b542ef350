"""Synthetic scenarios with analytically planted conformity, plus
brute-force oracles for the geometry and aggregation paths.

Each planted driver gets its own straight corridor, far enough from the
others that neither rule can couple corridors. The driver moves at
limit/rc_speed so the speed rule recovers its planted value exactly, and
a parked lead vehicle sits gap = rc_dist * horizon * speed ahead of its
front edge so the distance rule does too (no lead is planted for
rc_dist == 1). Vehicle positions are held fixed across frames: frames
are scored independently, so trajectories need not be integrated, and
every frame reproduces the planted geometry bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyDataset, InfeasibleSpec, MixedRules
from .geometry import OrientedBox, Segment, _to_local
from .types import (
    AggregateReport,
    DriverScenarioScore,
    Frame,
    Histogram,
    Lane,
    RcSample,
    RelativeBins,
    Scenario,
    Vec2,
    VehicleState,
)

__all__ = [
    "PlantedDistribution",
    "SynthSpec",
    "generate",
    "brute_force_entry_distance",
    "brute_force_aggregate",
]


@dataclass(frozen=True, slots=True)
class PlantedDistribution:
    """Distribution of planted per-driver conformity values on [0, 1].

    kind "const":   always ``value``.
    kind "uniform": U(low, high).
    kind "mix":     mass ``strict_share`` planted at exactly 1.0, the rest
                    drawn U(low, high). The strict mass is allocated by a
                    largest-remainder quota over the driver sequence, not
                    by coin flips, so the realized share is within 1/N of
                    the requested one for any seed.

    Text forms: ``const:0.9``, ``uniform:0.5,1.0``, ``mix:0.55,0.5,1.0``.
    """

    kind: str
    value: float = 1.0
    low: float = 0.0
    high: float = 1.0
    strict_share: float = 0.0

    def __post_init__(self):
        if self.kind not in ("const", "uniform", "mix"):
            raise InfeasibleSpec(f"unknown distribution kind {self.kind!r}")
        if self.kind == "const" and not 0.0 <= self.value <= 1.0:
            raise InfeasibleSpec(f"const value {self.value!r} outside [0, 1]")
        if self.kind in ("uniform", "mix"):
            if not 0.0 <= self.low <= self.high <= 1.0:
                raise InfeasibleSpec(
                    f"uniform support [{self.low!r}, {self.high!r}] outside [0, 1]"
                )
        if self.kind == "mix" and not 0.0 <= self.strict_share <= 1.0:
            raise InfeasibleSpec(f"strict share {self.strict_share!r} outside [0, 1]")

    @classmethod
    def parse(cls, text: str) -> PlantedDistribution:
        kind, _, rest = text.partition(":")
        try:
            args = [float(a) for a in rest.split(",")] if rest else []
        except ValueError:
            raise InfeasibleSpec(f"cannot parse distribution spec {text!r}") from None
        if kind == "const" and len(args) == 1:
            return cls("const", value=args[0])
        if kind == "uniform" and len(args) == 2:
            return cls("uniform", low=args[0], high=args[1])
        if kind == "mix" and len(args) == 3:
            return cls("mix", strict_share=args[0], low=args[1], high=args[2])
        raise InfeasibleSpec(f"cannot parse distribution spec {text!r}")

    def support_min(self) -> float:
        if self.kind == "const":
            return self.value
        return self.low

    def value_for(self, driver_index: int, rng: np.random.Generator) -> float:
        if self.kind == "const":
            return self.value
        if self.kind == "mix":
            quota_before = math.floor(driver_index * self.strict_share)
            quota_after = math.floor((driver_index + 1) * self.strict_share)
            if quota_after > quota_before:
                return 1.0
        return float(rng.uniform(self.low, self.high))


@dataclass(frozen=True, slots=True)
class SynthSpec:
    """Parameters of a synthetic corpus. Deterministic in ``seed``."""

    seed: int = 0
    n_scenarios: int = 1
    n_vehicles: int = 10
    duration_s: float = 9.0
    sample_rate_hz: float = 1.0
    planted_dist_rc: PlantedDistribution = field(
        default_factory=lambda: PlantedDistribution("const", value=1.0)
    )
    planted_speed_rc: PlantedDistribution = field(
        default_factory=lambda: PlantedDistribution("const", value=1.0)
    )
    speed_limit_mps: float = 20.0
    horizon_s: float = 3.0
    corridor_spacing_m: float = 200.0

    def __post_init__(self):
        if self.n_scenarios < 1 or self.n_vehicles < 1:
            raise InfeasibleSpec("need at least one scenario and one vehicle")
        if not (self.duration_s >= 0.0 and self.sample_rate_hz > 0.0):
            raise InfeasibleSpec("duration must be >= 0 and sample rate > 0")
        if not (self.speed_limit_mps > 0.0 and self.horizon_s > 0.0):
            raise InfeasibleSpec("speed limit and horizon must be > 0")
        if self.planted_speed_rc.support_min() <= 0.0:
            raise InfeasibleSpec(
                "planted speed conformity must be > 0 (speed = limit / rc)"
            )
        # Corridors are parallel, so projection rays cannot cross them; the
        # spacing only has to defeat lane assignment gates by a wide margin.
        if self.corridor_spacing_m < 50.0:
            raise InfeasibleSpec("corridor spacing must be >= 50 m")


MOVER_LENGTH_M = 4.5
MOVER_WIDTH_M = 2.0
LEAD_LENGTH_M = 5.0
# Wider than the mover so the offset rays hit the lead's rear face
# squarely instead of grazing its corners.
LEAD_WIDTH_M = 3.0
CORRIDOR_X_M = 50.0
LANE_LENGTH_M = 100.0
LANE_STEP_M = 5.0


def generate(spec: SynthSpec) -> list[Scenario]:
    """Build the synthetic corpus described by spec.

    Deterministic: the same spec yields byte-identical scenarios. Every
    scenario passes validate_scenario.
    """
    scenarios = []
    for si in range(spec.n_scenarios):
        rng = np.random.default_rng([spec.seed, si])
        lanes: list[Lane] = []
        vehicles: list[VehicleState] = []
        for vi in range(spec.n_vehicles):
            driver_index = si * spec.n_vehicles + vi
            y = vi * spec.corridor_spacing_m
            rc_dist = spec.planted_dist_rc.value_for(driver_index, rng)
            rc_speed = spec.planted_speed_rc.value_for(driver_index, rng)
            speed = spec.speed_limit_mps / rc_speed

            lanes.append(
                Lane(
                    lane_id=f"lane_{vi:03d}",
                    polyline=tuple(
                        Vec2(x * LANE_STEP_M, y)
                        for x in range(int(LANE_LENGTH_M / LANE_STEP_M) + 1)
                    ),
                    speed_limit_mps=spec.speed_limit_mps,
                )
            )
            mover_id = f"drv_{vi:03d}"
            vehicles.append(
                VehicleState(
                    vehicle_id=mover_id,
                    center=Vec2(CORRIDOR_X_M, y),
                    heading=0.0,
                    velocity=Vec2(speed, 0.0),
                    length=MOVER_LENGTH_M,
                    width=MOVER_WIDTH_M,
                    valid=True,
                )
            )
            if rc_dist < 1.0:
                ray_length = spec.horizon_s * speed
                gap = max(0.0, rc_dist * ray_length)
                front_x = CORRIDOR_X_M + MOVER_LENGTH_M / 2.0
                vehicles.append(
                    VehicleState(
                        vehicle_id=f"{mover_id}_lead",
                        center=Vec2(front_x + gap + LEAD_LENGTH_M / 2.0, y),
                        heading=0.0,
                        velocity=Vec2(0.0, 0.0),
                        length=LEAD_LENGTH_M,
                        width=LEAD_WIDTH_M,
                        valid=True,
                    )
                )
        frame_count = int(round(spec.duration_s * spec.sample_rate_hz)) + 1
        frames = tuple(
            Frame(frame_index=t, time_s=t / spec.sample_rate_hz, vehicles=tuple(vehicles))
            for t in range(frame_count)
        )
        scenarios.append(
            Scenario(
                scenario_id=f"synth_{spec.seed}_{si:04d}",
                sample_rate_hz=spec.sample_rate_hz,
                lanes=tuple(lanes),
                frames=frames,
            )
        )
    return scenarios


def brute_force_entry_distance(
    seg: Segment, box: OrientedBox, samples: int = 100_000
) -> float | None:
    """Entry distance by dense sampling along the segment.

    Tests ``samples`` evenly spaced points for containment and returns the
    first hit's parameter times |seg|. Independent of the slab method;
    agrees with it within |seg|/samples plus rounding.
    """
    if samples < 2:
        raise ValueError(f"samples must be >= 2, got {samples}")
    ox, oy = _to_local(seg.origin, box)
    tx, ty = _to_local(seg.tip, box)
    t = np.linspace(0.0, 1.0, samples)
    xs = ox + t * (tx - ox)
    ys = oy + t * (ty - oy)
    inside = (np.abs(xs) <= box.half_length) & (np.abs(ys) <= box.half_width)
    hits = np.flatnonzero(inside)
    if hits.size == 0:
        return None
    return float(t[hits[0]] * seg.length())


def brute_force_aggregate(samples: list[RcSample], bin_count: int = 20) -> AggregateReport:
    """Straight-line, single-pass aggregation used as the oracle for the
    mergeable path. Bins by explicit interval tests rather than searching
    the edge array."""
    if not samples:
        raise EmptyDataset("no samples")
    rules = {s.rule for s in samples}
    if len(rules) > 1:
        raise MixedRules(f"samples span rules {sorted(r.value for r in rules)}")
    rule = samples[0].rule

    by_driver: dict[tuple[str, str], list[float]] = {}
    for s in samples:
        by_driver.setdefault((s.scenario_id, s.vehicle_id), []).append(s.rc)
    driver_scores = [
        DriverScenarioScore(
            rule, sid, vid, min(1.0, max(0.0, sum(values) / len(values))), len(values)
        )
        for (sid, vid), values in sorted(by_driver.items())
    ]

    by_scenario: dict[str, list[float]] = {}
    for score in driver_scores:
        by_scenario.setdefault(score.scenario_id, []).append(score.rc_mean)
    scenario_scores = {sid: sum(v) / len(v) for sid, v in by_scenario.items()}
    total = sum(scenario_scores.values()) / len(scenario_scores)

    edges = [i / bin_count for i in range(bin_count + 1)]
    counts = [0] * bin_count
    quarter_counts = [0, 0, 0, 0]
    strict = 0
    for score in driver_scores:
        rc = score.rc_mean
        for b in range(bin_count):
            is_last = b == bin_count - 1
            if edges[b] <= rc < edges[b + 1] or (is_last and edges[b] <= rc <= 1.0):
                counts[b] += 1
                break
        for q, (lo, hi) in enumerate(((0.0, 0.25), (0.25, 0.5), (0.5, 0.75), (0.75, 1.0))):
            if lo <= rc < hi or (q == 3 and lo <= rc <= 1.0):
                quarter_counts[q] += 1
                break
        if rc == 1.0:
            strict += 1

    n = len(driver_scores)
    return AggregateReport(
        rule=rule,
        scenario_scores=scenario_scores,
        dataset_mean=total,
        driver_scores=tuple(driver_scores),
        histogram=Histogram(bin_count, tuple(edges), tuple(counts)),
        relative_bins=RelativeBins(tuple(c / n for c in quarter_counts), strict / n),
        sample_count=len(samples),
    )
