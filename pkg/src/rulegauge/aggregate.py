"""Mergeable aggregation of per-frame conformity samples into reports.

The hierarchy is frame -> driver-scenario mean -> scenario mean ->
dataset mean, with unweighted means at every level. PartialAggregate is
the only mutable state: each worker owns one privately and the results
combine through the associative, commutative ``merge``. Finalization
sums in a fixed sorted order so reports are deterministic regardless of
how work was partitioned.
"""

from __future__ import annotations

import numpy as np

from .errors import EmptyDataset, EmptyInput, EmptyScenario, MixedRules
from .types import (
    AggregateReport,
    DriverScenarioScore,
    Histogram,
    RcSample,
    RelativeBins,
    Rule,
)

__all__ = [
    "PartialAggregate",
    "merge",
    "driver_scenario_means",
    "scenario_mean",
    "dataset_mean",
    "build_histogram",
    "build_relative_bins",
    "finalize",
]

DriverKey = tuple[str, str]  # (scenario_id, vehicle_id)


class PartialAggregate:
    """Per-worker accumulator of conformity sums and counts.

    Holds one running (sum, count) per (scenario_id, vehicle_id) plus the
    total number of samples consumed. Driver means and everything above
    them are derived at finalization, never maintained incrementally, so
    merging partials in any order yields the same report.
    """

    __slots__ = ("rule", "sums", "counts", "sample_count")

    def __init__(self, rule: Rule | None = None):
        self.rule = rule
        self.sums: dict[DriverKey, float] = {}
        self.counts: dict[DriverKey, int] = {}
        self.sample_count = 0

    def add(self, sample: RcSample) -> None:
        if self.rule is None:
            self.rule = sample.rule
        elif sample.rule is not self.rule:
            raise MixedRules(
                f"aggregate for {self.rule.value!r} received a {sample.rule.value!r} sample"
            )
        key = (sample.scenario_id, sample.vehicle_id)
        self.sums[key] = self.sums.get(key, 0.0) + sample.rc
        self.counts[key] = self.counts.get(key, 0) + 1
        self.sample_count += 1

    def add_all(self, samples) -> None:
        for sample in samples:
            self.add(sample)

    def is_empty(self) -> bool:
        return self.sample_count == 0


def merge(a: PartialAggregate, b: PartialAggregate) -> PartialAggregate:
    """Combine two partials; equivalent to aggregating the concatenated
    sample streams. merge(x, empty) == x for any x."""
    if a.rule is not None and b.rule is not None and a.rule is not b.rule:
        raise MixedRules(f"cannot merge {a.rule.value!r} with {b.rule.value!r}")
    out = PartialAggregate(a.rule if a.rule is not None else b.rule)
    out.sums = dict(a.sums)
    out.counts = dict(a.counts)
    for key, value in b.sums.items():
        out.sums[key] = out.sums.get(key, 0.0) + value
    for key, count in b.counts.items():
        out.counts[key] = out.counts.get(key, 0) + count
    out.sample_count = a.sample_count + b.sample_count
    return out


def _driver_scores(partial: PartialAggregate) -> list[DriverScenarioScore]:
    scores = []
    for key in sorted(partial.sums):
        scenario_id, vehicle_id = key
        count = partial.counts[key]
        mean = min(1.0, max(0.0, partial.sums[key] / count))
        scores.append(DriverScenarioScore(partial.rule, scenario_id, vehicle_id, mean, count))
    return scores


def driver_scenario_means(samples) -> list[DriverScenarioScore]:
    """Mean conformity per (scenario, driver) over the frames in which the
    driver was actually scored; sorted by (scenario_id, vehicle_id)."""
    partial = PartialAggregate()
    partial.add_all(samples)
    if partial.rule is None:
        return []
    return _driver_scores(partial)


def scenario_mean(scores: list[DriverScenarioScore]) -> float:
    """Unweighted mean over one scenario's driver means; every driver
    counts once regardless of how many frames they were scored in."""
    if not scores:
        raise EmptyScenario("no driver scores for scenario mean")
    scenario_ids = {s.scenario_id for s in scores}
    if len(scenario_ids) > 1:
        raise ValueError(f"scores span multiple scenarios: {sorted(scenario_ids)}")
    return sum(s.rc_mean for s in scores) / len(scores)


def dataset_mean(scenario_means: list[float]) -> float:
    """Unweighted mean over scenario means."""
    if not scenario_means:
        raise EmptyDataset("no scenario means")
    return sum(scenario_means) / len(scenario_means)


def build_histogram(scores: list[DriverScenarioScore], bin_count: int = 20) -> Histogram:
    """Raw counts of driver means over uniform bins spanning [0, 1]; the
    last bin is closed at 1.0."""
    if bin_count < 1:
        raise ValueError(f"bin_count must be >= 1, got {bin_count}")
    edges = tuple(i / bin_count for i in range(bin_count + 1))
    values = np.asarray([s.rc_mean for s in scores], dtype=float)
    counts, _ = np.histogram(values, bins=np.asarray(edges))
    return Histogram(bin_count, edges, tuple(int(c) for c in counts))


def build_relative_bins(scores: list[DriverScenarioScore]) -> RelativeBins:
    """Fractions of driver means per quarter interval and the share of
    strictly compliant (exactly 1.0) drivers."""
    if not scores:
        raise EmptyInput("no driver scores")
    values = np.asarray([s.rc_mean for s in scores], dtype=float)
    n = len(scores)
    quarters = (
        int(np.count_nonzero(values < 0.25)) / n,
        int(np.count_nonzero((values >= 0.25) & (values < 0.5))) / n,
        int(np.count_nonzero((values >= 0.5) & (values < 0.75))) / n,
        int(np.count_nonzero(values >= 0.75)) / n,
    )
    strict = int(np.count_nonzero(values == 1.0)) / n
    return RelativeBins(quarters, strict)


def finalize(partial: PartialAggregate, bin_count: int = 20) -> AggregateReport:
    """Deterministic reduction of a partial into the full report.

    Driver keys are processed in sorted (scenario_id, vehicle_id) order,
    so any merge order or sample permutation that leaves the per-driver
    sums unchanged yields byte-identical reports.
    """
    if partial.rule is None:
        raise EmptyDataset("partial aggregate carries no rule; nothing was scored")
    driver_scores = _driver_scores(partial)
    by_scenario: dict[str, list[DriverScenarioScore]] = {}
    for score in driver_scores:
        by_scenario.setdefault(score.scenario_id, []).append(score)
    scenario_scores = {sid: scenario_mean(group) for sid, group in by_scenario.items()}
    mean = dataset_mean(list(scenario_scores.values())) if scenario_scores else None
    return AggregateReport(
        rule=partial.rule,
        scenario_scores=scenario_scores,
        dataset_mean=mean,
        driver_scores=tuple(driver_scores),
        histogram=build_histogram(driver_scores, bin_count),
        relative_bins=build_relative_bins(driver_scores) if driver_scores else None,
        sample_count=partial.sample_count,
    )
