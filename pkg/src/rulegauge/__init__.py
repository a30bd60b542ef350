"""rulegauge: batch analytics for traffic-rule conformity of recorded drivers."""

from .aggregate import (
    PartialAggregate,
    build_histogram,
    build_relative_bins,
    dataset_mean,
    driver_scenario_means,
    finalize,
    merge,
    scenario_mean,
)
from .ingest import IngestConfig, collect_input_files, stream_scenarios, subsample
from .rgsf import FILE_SUFFIX, SCHEMA_VERSION, parse_scenario, write_scenario
from .safety_distance import (
    DistanceViolationDetail,
    ProjectionRay,
    RayCombiner,
    SafetyDistanceConfig,
    rc_dist_frame,
    score_scenario_dist,
)
from .speed_limit import SpeedLimitConfig, assign_lane, rc_speed_frame, score_scenario_speed
from .synth import (
    PlantedDistribution,
    SynthSpec,
    brute_force_aggregate,
    brute_force_entry_distance,
    generate,
)
from .types import (
    AggregateReport,
    DriverScenarioScore,
    Frame,
    Histogram,
    Lane,
    RcSample,
    RelativeBins,
    Rule,
    Scenario,
    Vec2,
    VehicleState,
    validate_scenario,
)

__version__ = "0.1.0"
