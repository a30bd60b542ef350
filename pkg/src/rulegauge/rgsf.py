"""RGSF v1 codec: the neutral JSON scenario interchange format.

One scenario per UTF-8 JSON file, extension ``.rgsf.json``. All numbers
are finite IEEE-754 doubles in SI units; unknown extra fields are
ignored on input. ``write_scenario`` emits the canonical form (sorted
keys, 17-significant-digit floats) so that ``parse_scenario`` followed by
``write_scenario`` is the identity on canonical bytes.
"""

from __future__ import annotations

import json
import math

from .canonical import canonical_json_bytes
from .errors import MalformedDocument, SchemaViolation, UnsupportedVersion
from .types import Frame, Lane, Scenario, Vec2, VehicleState, validate_scenario

__all__ = ["SCHEMA_VERSION", "FILE_SUFFIX", "parse_scenario", "write_scenario"]

SCHEMA_VERSION = 1
FILE_SUFFIX = ".rgsf.json"


def parse_scenario(raw: bytes | str, *, check_invariants: bool = True) -> Scenario:
    """Parse one RGSF v1 document into a Scenario, in SI units.

    Raises MalformedDocument for bad syntax, UnsupportedVersion for an
    unknown schema_version, and SchemaViolation (naming the field path)
    for missing/ill-typed fields. With ``check_invariants`` the result is
    additionally guaranteed to pass ``validate_scenario``.
    """
    try:
        doc = json.loads(raw, parse_constant=_reject_non_finite)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from None
    except UnicodeDecodeError as exc:
        raise MalformedDocument(f"not valid UTF-8: {exc}") from None

    if not isinstance(doc, dict):
        raise SchemaViolation("", "top level must be a JSON object")

    version = doc.get("schema_version")
    if version is None:
        raise SchemaViolation("/schema_version", "missing required field")
    if isinstance(version, bool) or not isinstance(version, int):
        raise SchemaViolation("/schema_version", f"must be an integer (got {version!r})")
    if version != SCHEMA_VERSION:
        raise UnsupportedVersion(
            f"schema_version {version} is not supported (expected {SCHEMA_VERSION})"
        )

    scenario = Scenario(
        scenario_id=_string(doc, "scenario_id", ""),
        sample_rate_hz=_number(doc, "sample_rate_hz", ""),
        lanes=tuple(
            _parse_lane(item, f"/lanes/{i}")
            for i, item in enumerate(_array(doc, "lanes", ""))
        ),
        frames=tuple(
            _parse_frame(item, f"/frames/{i}")
            for i, item in enumerate(_array(doc, "frames", ""))
        ),
    )
    if check_invariants:
        violations = validate_scenario(scenario)
        if violations:
            raise SchemaViolation("", "; ".join(violations), violations=violations)
    return scenario


def write_scenario(scenario: Scenario) -> bytes:
    """Serialize a Scenario to canonical RGSF v1 bytes.

    Refuses to serialize scenarios that fail validation (non-finite
    values included), so parse(write(s)) == s holds for everything this
    function accepts.
    """
    violations = validate_scenario(scenario)
    if violations:
        raise ValueError("cannot serialize invalid scenario: " + "; ".join(violations))
    doc = {
        "schema_version": SCHEMA_VERSION,
        "scenario_id": scenario.scenario_id,
        "sample_rate_hz": float(scenario.sample_rate_hz),
        "lanes": [
            {
                "lane_id": lane.lane_id,
                "speed_limit_mps": (
                    None if lane.speed_limit_mps is None else float(lane.speed_limit_mps)
                ),
                "polyline": [[float(p.x), float(p.y)] for p in lane.polyline],
            }
            for lane in scenario.lanes
        ],
        "frames": [
            {
                "frame_index": int(frame.frame_index),
                "time_s": float(frame.time_s),
                "vehicles": [
                    {
                        "id": v.vehicle_id,
                        "x": float(v.center.x),
                        "y": float(v.center.y),
                        "heading_rad": float(v.heading),
                        "vx": float(v.velocity.x),
                        "vy": float(v.velocity.y),
                        "length_m": float(v.length),
                        "width_m": float(v.width),
                        "valid": bool(v.valid),
                    }
                    for v in frame.vehicles
                ],
            }
            for frame in scenario.frames
        ],
    }
    return canonical_json_bytes(doc)


def _reject_non_finite(token: str):
    raise MalformedDocument(f"non-finite JSON token {token!r} is not allowed")


def _get(obj: dict, key: str, parent: str):
    if key not in obj:
        raise SchemaViolation(f"{parent}/{key}", "missing required field")
    return obj[key]


def _string(obj: dict, key: str, parent: str) -> str:
    value = _get(obj, key, parent)
    if not isinstance(value, str):
        raise SchemaViolation(f"{parent}/{key}", f"must be a string (got {value!r})")
    return value


def _number(obj: dict, key: str, parent: str) -> float:
    value = _get(obj, key, parent)
    return _as_float(value, f"{parent}/{key}")


def _as_float(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaViolation(path, f"must be a number (got {value!r})")
    value = float(value)
    if not math.isfinite(value):
        raise SchemaViolation(path, f"must be finite (got {value!r})")
    return value


def _integer(obj: dict, key: str, parent: str) -> int:
    value = _get(obj, key, parent)
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaViolation(f"{parent}/{key}", f"must be an integer (got {value!r})")
    return value


def _boolean(obj: dict, key: str, parent: str) -> bool:
    value = _get(obj, key, parent)
    if not isinstance(value, bool):
        raise SchemaViolation(f"{parent}/{key}", f"must be a boolean (got {value!r})")
    return value


def _array(obj: dict, key: str, parent: str) -> list:
    value = _get(obj, key, parent)
    if not isinstance(value, list):
        raise SchemaViolation(f"{parent}/{key}", f"must be an array (got {value!r})")
    return value


def _parse_lane(item, path: str) -> Lane:
    if not isinstance(item, dict):
        raise SchemaViolation(path, "lane must be an object")
    limit = item.get("speed_limit_mps")
    if limit is not None:
        limit = _as_float(limit, f"{path}/speed_limit_mps")
    points = []
    for i, pair in enumerate(_array(item, "polyline", path)):
        ppath = f"{path}/polyline/{i}"
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaViolation(ppath, "polyline point must be an [x, y] pair")
        points.append(Vec2(_as_float(pair[0], ppath + "/0"), _as_float(pair[1], ppath + "/1")))
    return Lane(
        lane_id=_string(item, "lane_id", path),
        polyline=tuple(points),
        speed_limit_mps=limit,
    )


def _parse_frame(item, path: str) -> Frame:
    if not isinstance(item, dict):
        raise SchemaViolation(path, "frame must be an object")
    return Frame(
        frame_index=_integer(item, "frame_index", path),
        time_s=_number(item, "time_s", path),
        vehicles=tuple(
            _parse_vehicle(v, f"{path}/vehicles/{i}")
            for i, v in enumerate(_array(item, "vehicles", path))
        ),
    )


def _parse_vehicle(item, path: str) -> VehicleState:
    if not isinstance(item, dict):
        raise SchemaViolation(path, "vehicle must be an object")
    return VehicleState(
        vehicle_id=_string(item, "id", path),
        center=Vec2(_number(item, "x", path), _number(item, "y", path)),
        heading=_number(item, "heading_rad", path),
        velocity=Vec2(_number(item, "vx", path), _number(item, "vy", path)),
        length=_number(item, "length_m", path),
        width=_number(item, "width_m", path),
        valid=_boolean(item, "valid", path),
    )
