"""Canonical JSON emission: sorted keys, fixed float formatting.

Every file the toolkit writes goes through this writer so that identical
inputs produce byte-identical outputs regardless of worker count or dict
construction order. Floats are rendered with 17 significant digits, which
round-trips IEEE-754 doubles exactly.
"""

from __future__ import annotations

import json
import math

__all__ = ["format_float", "canonical_json_bytes"]


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite number cannot be serialized: {x!r}")
    return "%.17g" % x


def canonical_json_bytes(value, indent: int | None = None) -> bytes:
    """Serialize a JSON-able tree deterministically, ending with a newline."""
    parts: list[str] = []
    _emit(value, parts, indent, 0)
    parts.append("\n")
    return "".join(parts).encode("utf-8")


def _emit(value, parts: list[str], indent: int | None, depth: int) -> None:
    if value is None:
        parts.append("null")
    elif value is True:
        parts.append("true")
    elif value is False:
        parts.append("false")
    elif isinstance(value, str):
        parts.append(json.dumps(value, ensure_ascii=True))
    elif isinstance(value, int):
        parts.append(str(value))
    elif isinstance(value, float):
        parts.append(format_float(value))
    elif isinstance(value, dict):
        sep = ": " if indent is not None else ":"
        items = [(json.dumps(str(k), ensure_ascii=True) + sep, value[k]) for k in sorted(value)]
        _emit_container(items, "{", "}", parts, indent, depth)
    elif isinstance(value, (list, tuple)):
        _emit_container([("", item) for item in value], "[", "]", parts, indent, depth)
    else:
        raise TypeError(f"cannot serialize {type(value).__name__} canonically")


def _emit_container(items, open_ch, close_ch, parts, indent, depth) -> None:
    if not items:
        parts.append(open_ch + close_ch)
        return
    if indent is None:
        parts.append(open_ch)
        for i, (prefix, item) in enumerate(items):
            if i:
                parts.append(",")
            parts.append(prefix)
            _emit(item, parts, None, depth + 1)
        parts.append(close_ch)
        return
    pad = " " * (indent * (depth + 1))
    parts.append(open_ch)
    for i, (prefix, item) in enumerate(items):
        parts.append(",\n" if i else "\n")
        parts.append(pad)
        parts.append(prefix)
        _emit(item, parts, indent, depth + 1)
    parts.append("\n" + " " * (indent * depth) + close_ch)
