"""Scenario ingestion: file discovery, streaming, temporal subsampling.

Analysis typically runs at 1 Hz on 10 Hz recordings; ``subsample`` keeps
every k-th frame (k rounded half away from zero) starting at frame 0 so
the result is bit-exact across implementations and phases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator

from .errors import InvalidRate, MalformedDocument, SchemaViolation, UnsupportedVersion
from .rgsf import FILE_SUFFIX, parse_scenario
from .types import Scenario

__all__ = ["IngestConfig", "subsample", "collect_input_files", "stream_scenarios"]

DiagnosticSink = Callable[[dict], None]


@dataclass(frozen=True)
class IngestConfig:
    """What to read and how. ``strict`` turns malformed files into errors
    instead of diagnostics."""

    input_paths: tuple[str, ...]
    target_rate_hz: float = 1.0
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "input_paths", tuple(str(p) for p in self.input_paths))
        if not (self.target_rate_hz > 0.0 and math.isfinite(self.target_rate_hz)):
            raise ValueError(f"target_rate_hz must be > 0, got {self.target_rate_hz!r}")


def subsample(scenario: Scenario, target_rate_hz: float) -> Scenario:
    """Reduce the frame rate to roughly target_rate_hz.

    Keeps every k-th frame where k = round(native / target), rounding half
    away from zero, starting at frame 0. The result's sample_rate_hz is
    native / k; retained frames keep their original indices and times.
    """
    if not (target_rate_hz > 0.0 and math.isfinite(target_rate_hz)):
        raise InvalidRate(f"target rate must be > 0, got {target_rate_hz!r}")
    if target_rate_hz > scenario.sample_rate_hz:
        raise InvalidRate(
            f"target rate {target_rate_hz!r} Hz exceeds native rate "
            f"{scenario.sample_rate_hz!r} Hz"
        )
    k = math.floor(scenario.sample_rate_hz / target_rate_hz + 0.5)
    if k <= 1:
        return scenario
    return Scenario(
        scenario_id=scenario.scenario_id,
        sample_rate_hz=scenario.sample_rate_hz / k,
        lanes=scenario.lanes,
        frames=scenario.frames[::k],
    )


def collect_input_files(paths) -> list[Path]:
    """Expand files/directories into a sorted, deduplicated file list.

    Directories are searched recursively for ``*.rgsf.json``. A path that
    does not exist raises FileNotFoundError.
    """
    found: set[Path] = set()
    for p in paths:
        path = Path(p)
        if path.is_dir():
            found.update(q for q in path.rglob(f"*{FILE_SUFFIX}") if q.is_file())
        elif path.is_file():
            found.add(path)
        else:
            raise FileNotFoundError(f"input path does not exist: {path}")
    return sorted(found, key=str)


def stream_scenarios(
    cfg: IngestConfig, on_diagnostic: DiagnosticSink | None = None
) -> Iterator[Scenario]:
    """Yield each scenario exactly once, subsampled to the target rate.

    Order is deterministic: lexicographic by path, then in-file order.
    In non-strict mode malformed files are reported to ``on_diagnostic``
    and skipped; in strict mode the parse error propagates.
    """
    for path in collect_input_files(cfg.input_paths):
        raw = path.read_bytes()
        try:
            scenario = subsample(parse_scenario(raw), cfg.target_rate_hz)
        except (MalformedDocument, SchemaViolation, UnsupportedVersion, InvalidRate) as exc:
            if cfg.strict:
                raise
            if on_diagnostic is not None:
                on_diagnostic(
                    {
                        "event": "scenario_skipped",
                        "path": str(path),
                        "error": type(exc).__name__,
                        "detail": str(exc),
                    }
                )
            continue
        yield scenario
