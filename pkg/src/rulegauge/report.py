"""Report serialization: canonical JSON, CSV driver scores, SVG plots.

Plots are plain hand-built SVG (no plotting dependency): a histogram
with a logarithmic count axis and a relative five-bar summary (four
quarter intervals plus the strictly-compliant share). All output is
byte-deterministic for a given report.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

from .canonical import canonical_json_bytes, format_float
from .types import AggregateReport, Histogram, RelativeBins

__all__ = [
    "report_to_jsonable",
    "report_json_bytes",
    "driver_scores_csv_bytes",
    "histogram_svg",
    "relative_svg",
    "write_report_files",
]

CSV_COLUMNS = ("rule", "scenario_id", "vehicle_id", "rc_mean", "frame_count")


def report_to_jsonable(report: AggregateReport) -> dict:
    return {
        "rule": report.rule.value,
        "scenario_scores": {k: float(v) for k, v in report.scenario_scores.items()},
        "dataset_mean": None if report.dataset_mean is None else float(report.dataset_mean),
        "driver_scores": [
            {
                "rule": s.rule.value,
                "scenario_id": s.scenario_id,
                "vehicle_id": s.vehicle_id,
                "rc_mean": float(s.rc_mean),
                "frame_count": int(s.frame_count),
            }
            for s in report.driver_scores
        ],
        "histogram": {
            "bin_count": report.histogram.bin_count,
            "bin_edges": [float(e) for e in report.histogram.bin_edges],
            "counts": [int(c) for c in report.histogram.counts],
        },
        "relative_bins": (
            None
            if report.relative_bins is None
            else {
                "quarters": [float(q) for q in report.relative_bins.quarters],
                "strict_share": float(report.relative_bins.strict_share),
            }
        ),
        "sample_count": int(report.sample_count),
    }


def report_json_bytes(report: AggregateReport) -> bytes:
    return canonical_json_bytes(report_to_jsonable(report), indent=2)


def driver_scores_csv_bytes(report: AggregateReport) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for s in report.driver_scores:
        writer.writerow(
            (s.rule.value, s.scenario_id, s.vehicle_id, format_float(s.rc_mean), s.frame_count)
        )
    return buffer.getvalue().encode("utf-8")


def _svg_header(width: int, height: int, title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.2f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
    ]


def histogram_svg(hist: Histogram, title: str) -> str:
    """Bar chart of bin counts with a logarithmic count axis.

    The axis floor sits at 0.5 so single-count bins remain visible;
    zero-count bins draw no bar.
    """
    width, height = 720, 420
    left, right, top, bottom = 70, 20, 48, 56
    plot_w, plot_h = width - left - right, height - top - bottom

    max_count = max(hist.counts) if hist.counts else 0
    decades = max(1, math.ceil(math.log10(max_count))) if max_count >= 1 else 1
    axis_top = 10.0**decades
    floor = 0.5
    span = math.log10(axis_top) - math.log10(floor)

    def bar_height(count: int) -> float:
        if count <= 0:
            return 0.0
        return plot_h * (math.log10(count) - math.log10(floor)) / span

    parts = _svg_header(width, height, title)
    # decade gridlines and labels
    for d in range(0, decades + 1):
        value = 10.0**d
        y = top + plot_h - plot_h * (math.log10(value) - math.log10(floor)) / span
        parts.append(
            f'<line x1="{left}" y1="{y:.2f}" x2="{left + plot_w}" y2="{y:.2f}" '
            f'stroke="#cccccc" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{int(value)}</text>'
        )
    # bars
    bin_w = plot_w / hist.bin_count
    for i, count in enumerate(hist.counts):
        h = bar_height(count)
        if h <= 0.0:
            continue
        x = left + i * bin_w
        y = top + plot_h - h
        parts.append(
            f'<rect x="{x + 1:.2f}" y="{y:.2f}" width="{bin_w - 2:.2f}" '
            f'height="{h:.2f}" fill="#4878a8"/>'
        )
    # x-axis labels at the quarter edges
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        x = left + plot_w * frac
        parts.append(
            f'<text x="{x:.2f}" y="{top + plot_h + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{frac:g}</text>'
        )
    parts.append(
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" '
        f'y2="{top + plot_h}" stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" '
        f'stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<text x="{left + plot_w / 2:.2f}" y="{height - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">driver-scenario conformity</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


RELATIVE_LABELS = ("[0,0.25)", "[0.25,0.5)", "[0.5,0.75)", "[0.75,1.0]", "= 1.0")
RELATIVE_COLORS = ("#b0413e", "#d88c3c", "#d8c23c", "#6aa84f", "#4878a8")


def relative_svg(bins: RelativeBins | None, title: str) -> str:
    """Five-bar share chart: the four quarter intervals plus the share of
    strictly compliant drivers (a subset of the last quarter)."""
    width, height = 720, 420
    left, right, top, bottom = 70, 20, 48, 72
    plot_w, plot_h = width - left - right, height - top - bottom

    parts = _svg_header(width, height, title)
    if bins is None:
        parts.append(
            f'<text x="{width / 2:.2f}" y="{height / 2:.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">no scored drivers</text>'
        )
        parts.append("</svg>")
        return "\n".join(parts) + "\n"

    values = tuple(bins.quarters) + (bins.strict_share,)
    slot_w = plot_w / len(values)
    for i, (value, label, color) in enumerate(zip(values, RELATIVE_LABELS, RELATIVE_COLORS)):
        h = plot_h * value
        x = left + i * slot_w
        y = top + plot_h - h
        parts.append(
            f'<rect x="{x + 10:.2f}" y="{y:.2f}" width="{slot_w - 20:.2f}" '
            f'height="{h:.2f}" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{x + slot_w / 2:.2f}" y="{y - 6:.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{value * 100:.1f}%</text>'
        )
        parts.append(
            f'<text x="{x + slot_w / 2:.2f}" y="{top + plot_h + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{label}</text>'
        )
    parts.append(
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" '
        f'y2="{top + plot_h}" stroke="black" stroke-width="1"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_report_files(report: AggregateReport, out_dir: str | Path) -> list[Path]:
    """Write report_<rule>.json, driver_scores_<rule>.csv, and the two SVG
    plots; returns the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tag = report.rule.value
    written = []

    json_path = out / f"report_{tag}.json"
    json_path.write_bytes(report_json_bytes(report))
    written.append(json_path)

    csv_path = out / f"driver_scores_{tag}.csv"
    csv_path.write_bytes(driver_scores_csv_bytes(report))
    written.append(csv_path)

    hist_path = out / f"histogram_{tag}.svg"
    hist_path.write_text(
        histogram_svg(report.histogram, f"Conformity distribution ({tag}), log scale"),
        encoding="utf-8",
    )
    written.append(hist_path)

    rel_path = out / f"relative_{tag}.svg"
    rel_path.write_text(
        relative_svg(report.relative_bins, f"Relative conformity shares ({tag})"),
        encoding="utf-8",
    )
    written.append(rel_path)
    return written
