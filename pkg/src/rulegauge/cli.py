"""Command-line entry point: ingest -> rules -> aggregate -> reports.

Subcommands:
  analyze   score scenarios and write per-rule reports (JSON, CSV, SVG)
  validate  check scenario files against the format invariants
  synth     generate synthetic scenario files with planted conformity

Exit codes: 0 success, 2 configuration error, 3 strict-mode parse
failure. Diagnostics go to stderr as one JSON object per line so large
batch runs stay greppable.
"""

from __future__ import annotations

import argparse
import json
import math
import multiprocessing
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .aggregate import PartialAggregate, finalize, merge
from .errors import (
    InfeasibleSpec,
    InvalidRate,
    MalformedDocument,
    SchemaViolation,
    UnsupportedVersion,
)
from .ingest import IngestConfig, collect_input_files, subsample
from .report import write_report_files
from .rgsf import FILE_SUFFIX, parse_scenario, write_scenario
from .safety_distance import RayCombiner, SafetyDistanceConfig, score_scenario_dist
from .speed_limit import SpeedLimitConfig, score_scenario_speed
from .synth import PlantedDistribution, SynthSpec, generate
from .types import AggregateReport, Rule, validate_scenario

__all__ = ["RunConfig", "run", "main"]

_PARSE_ERRORS = (MalformedDocument, SchemaViolation, UnsupportedVersion, InvalidRate)


@dataclass(frozen=True)
class RunConfig:
    """Everything one analyze run needs; picklable so workers can share it."""

    rules: tuple[Rule, ...]
    ingest: IngestConfig
    dist_cfg: SafetyDistanceConfig = field(default_factory=SafetyDistanceConfig)
    speed_cfg: SpeedLimitConfig = field(default_factory=SpeedLimitConfig)
    histogram_bins: int = 20
    output_dir: str = "out"
    workers: int = 1
    seed: int = 0

    def __post_init__(self):
        if not self.rules:
            raise ValueError("at least one rule must be selected")
        if self.histogram_bins < 1:
            raise ValueError("histogram_bins must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def _diag(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def _process_file(task: tuple[str, RunConfig]):
    """Parse, subsample, and score one file; never raises.

    Returns (path, per-rule partials or None, diagnostics). Runs inside
    worker processes, so all error reporting happens via the returned
    diagnostics rather than stderr.
    """
    path, cfg = task
    diagnostics: list[dict] = []
    try:
        raw = Path(path).read_bytes()
        scenario = subsample(parse_scenario(raw), cfg.ingest.target_rate_hz)
    except (*_PARSE_ERRORS, OSError) as exc:
        diagnostics.append(
            {
                "event": "scenario_error",
                "path": path,
                "error": type(exc).__name__,
                "detail": str(exc),
            }
        )
        return path, None, diagnostics

    partials: dict[Rule, PartialAggregate] = {}
    for rule in cfg.rules:
        partial = PartialAggregate(rule)
        if rule is Rule.SAFETY_DISTANCE:
            partial.add_all(score_scenario_dist(scenario, cfg.dist_cfg))
        else:
            partial.add_all(score_scenario_speed(scenario, cfg.speed_cfg))
        partials[rule] = partial
    return path, partials, diagnostics


def run(cfg: RunConfig) -> tuple[dict[Rule, AggregateReport], int]:
    """Execute an analyze run; returns (reports per rule, exit code).

    Files are distributed over ``cfg.workers`` processes; per-file partial
    aggregates merge in path order, so reports are byte-identical for any
    worker count.
    """
    try:
        files = collect_input_files(cfg.ingest.input_paths)
    except FileNotFoundError as exc:
        _diag({"event": "config_error", "detail": str(exc)})
        return {}, 2
    if not files:
        _diag({"event": "config_error", "detail": "no scenarios found"})
        return {}, 2

    tasks = [(str(p), cfg) for p in files]
    if cfg.workers == 1:
        results = [_process_file(t) for t in tasks]
    else:
        with multiprocessing.Pool(cfg.workers) as pool:
            results = pool.map(_process_file, tasks)

    totals = {rule: PartialAggregate(rule) for rule in cfg.rules}
    scenario_files = 0
    for path, partials, diagnostics in results:
        for d in diagnostics:
            _diag(d)
        if partials is None:
            if cfg.ingest.strict:
                _diag({"event": "aborted", "detail": f"strict mode: failed on {path}"})
                return {}, 3
            continue
        scenario_files += 1
        for rule, partial in partials.items():
            totals[rule] = merge(totals[rule], partial)

    if scenario_files == 0:
        _diag({"event": "config_error", "detail": "no scenarios found"})
        return {}, 2

    reports: dict[Rule, AggregateReport] = {}
    for rule in cfg.rules:
        report = finalize(totals[rule], cfg.histogram_bins)
        reports[rule] = report
        try:
            paths = write_report_files(report, cfg.output_dir)
        except OSError as exc:
            _diag({"event": "config_error", "detail": f"cannot write reports: {exc}"})
            return reports, 2
        _diag(
            {
                "event": "report_written",
                "rule": rule.value,
                "sample_count": report.sample_count,
                "dataset_mean": report.dataset_mean,
                "files": [str(p) for p in paths],
            }
        )
    return reports, 0


def _parse_rules(text: str) -> tuple[Rule, ...]:
    rules = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            rules.append(Rule(token))
        except ValueError:
            raise ValueError(
                f"unknown rule {token!r} (expected comma-separated subset of 'dist,speed')"
            ) from None
    if not rules:
        raise ValueError("no rules selected")
    return tuple(dict.fromkeys(rules))


def _cmd_analyze(args) -> int:
    try:
        rules = _parse_rules(args.rules)
        cfg = RunConfig(
            rules=rules,
            ingest=IngestConfig(
                input_paths=tuple(args.input),
                target_rate_hz=args.sample_hz,
                strict=args.strict,
            ),
            dist_cfg=SafetyDistanceConfig(
                horizon_s=args.horizon_s,
                min_speed_mps=args.min_speed_kmh / 3.6,
                max_heading_dev_rad=args.heading_dev_pct / 100.0 * math.pi,
                combine=RayCombiner(args.ray_combine),
            ),
            speed_cfg=SpeedLimitConfig(
                max_lane_dist_m=args.lane_dist_m,
                min_fraction_of_limit=args.speed_floor_frac,
            ),
            histogram_bins=args.bins,
            output_dir=args.out,
            workers=args.workers,
            seed=args.seed,
        )
    except ValueError as exc:
        _diag({"event": "config_error", "detail": str(exc)})
        return 2
    _, code = run(cfg)
    return code


def _cmd_validate(args) -> int:
    try:
        files = collect_input_files(args.input)
    except FileNotFoundError as exc:
        _diag({"event": "config_error", "detail": str(exc)})
        return 2
    if not files:
        _diag({"event": "config_error", "detail": "no scenarios found"})
        return 2
    failures = 0
    for path in files:
        try:
            scenario = parse_scenario(path.read_bytes(), check_invariants=False)
        except _PARSE_ERRORS as exc:
            print(f"{path}: {type(exc).__name__}: {exc}")
            failures += 1
            continue
        violations = validate_scenario(scenario)
        if violations:
            for violation in violations:
                print(f"{path}: {violation}")
            failures += 1
        else:
            print(f"{path}: OK")
    return 1 if failures else 0


def _cmd_synth(args) -> int:
    try:
        spec = SynthSpec(
            seed=args.seed,
            n_scenarios=args.scenarios,
            n_vehicles=args.vehicles,
            duration_s=args.duration_s,
            sample_rate_hz=args.rate_hz,
            planted_dist_rc=PlantedDistribution.parse(args.plant_dist),
            planted_speed_rc=PlantedDistribution.parse(args.plant_speed),
            speed_limit_mps=args.limit_mps,
        )
    except (InfeasibleSpec, ValueError) as exc:
        _diag({"event": "config_error", "detail": str(exc)})
        return 2
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    count = 0
    for scenario in generate(spec):
        (out / f"{scenario.scenario_id}{FILE_SUFFIX}").write_bytes(write_scenario(scenario))
        count += 1
    print(f"wrote {count} scenario file(s) to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rulegauge",
        description="Quantify how strictly recorded drivers follow traffic rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="score scenarios and write reports")
    analyze.add_argument("--input", nargs="+", required=True, help="scenario files or directories")
    analyze.add_argument("--rules", default="dist,speed", help="comma-separated: dist,speed")
    analyze.add_argument("--sample-hz", type=float, default=1.0, help="analysis frame rate")
    analyze.add_argument("--bins", type=int, default=20, help="histogram bin count")
    analyze.add_argument("--min-speed-kmh", type=float, default=5.0, help="ego speed cutoff")
    analyze.add_argument(
        "--heading-dev-pct",
        type=float,
        default=20.0,
        help="direction gate as percent of a half-turn",
    )
    analyze.add_argument("--lane-dist-m", type=float, default=10.0, help="lane matching gate")
    analyze.add_argument(
        "--speed-floor-frac", type=float, default=0.8, help="minimum fraction of the limit scored"
    )
    analyze.add_argument("--horizon-s", type=float, default=3.0, help="projection horizon")
    analyze.add_argument(
        "--ray-combine", choices=[c.value for c in RayCombiner], default="min"
    )
    analyze.add_argument("--workers", type=int, default=1)
    analyze.add_argument("--seed", type=int, default=0)
    analyze.add_argument("--out", required=True, help="output directory")
    analyze.add_argument("--strict", action="store_true", help="fail on malformed files")
    analyze.set_defaults(func=_cmd_analyze)

    validate = sub.add_parser("validate", help="validate scenario files")
    validate.add_argument("--input", nargs="+", required=True)
    validate.set_defaults(func=_cmd_validate)

    synth = sub.add_parser("synth", help="generate synthetic scenarios")
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--scenarios", type=int, default=1)
    synth.add_argument("--vehicles", type=int, default=10)
    synth.add_argument("--duration-s", type=float, default=9.0)
    synth.add_argument("--rate-hz", type=float, default=1.0)
    synth.add_argument("--plant-dist", default="const:1.0", help="const:v | uniform:a,b | mix:p,a,b")
    synth.add_argument("--plant-speed", default="const:1.0", help="const:v | uniform:a,b | mix:p,a,b")
    synth.add_argument("--limit-mps", type=float, default=20.0)
    synth.add_argument("--out", required=True)
    synth.set_defaults(func=_cmd_synth)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
