"""Report serialization: canonical JSON, CSV, SVG, schema conformance."""

from __future__ import annotations

import csv
import io
import json
import math
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from rulegauge.aggregate import PartialAggregate, finalize
from rulegauge.canonical import canonical_json_bytes, format_float
from rulegauge.report import (
    driver_scores_csv_bytes,
    histogram_svg,
    relative_svg,
    report_json_bytes,
    report_to_jsonable,
    write_report_files,
)
from rulegauge.types import RcSample, Rule

DOCS = Path(__file__).resolve().parent.parent / "docs"


def small_report(rule=Rule.SAFETY_DISTANCE):
    partial = PartialAggregate(rule)
    values = {
        ("s0", "a"): [1.0, 0.9],
        ("s0", "b"): [0.4],
        ("s1", "a"): [1.0, 1.0, 1.0],
    }
    for (sid, vid), rcs in values.items():
        for t, rc in enumerate(rcs):
            partial.add(RcSample(rule, sid, vid, t, rc))
    return finalize(partial)


class TestCanonicalJson:
    def test_sorted_keys_and_newline(self):
        data = {"b": 1, "a": [1.5, True, None, "x"]}
        out = canonical_json_bytes(data)
        assert out == b'{"a":[1.5,true,null,"x"],"b":1}\n'

    def test_indent_mode(self):
        out = canonical_json_bytes({"a": [1]}, indent=2)
        assert out == b'{\n  "a": [\n    1\n  ]\n}\n'

    def test_float_17_digits_round_trips(self):
        for x in (0.1, 1 / 3, 5 / 3.6, 1e-300, 123456789.123456789):
            assert float(format_float(x)) == x

    def test_non_finite_refused(self):
        with pytest.raises(ValueError):
            canonical_json_bytes({"x": math.nan})
        with pytest.raises(ValueError):
            format_float(math.inf)

    def test_unsupported_type_refused(self):
        with pytest.raises(TypeError):
            canonical_json_bytes({"x": object()})

    def test_deterministic_across_key_insertion_orders(self):
        a = {"x": 1, "y": 2}
        b = {"y": 2, "x": 1}
        assert canonical_json_bytes(a) == canonical_json_bytes(b)


class TestReportJson:
    def test_round_trips_as_json(self):
        report = small_report()
        obj = json.loads(report_json_bytes(report))
        assert obj["rule"] == "dist"
        assert obj["sample_count"] == 6
        assert set(obj["scenario_scores"]) == {"s0", "s1"}

    def test_validates_against_published_schema(self):
        jsonschema = pytest.importorskip("jsonschema")
        schema = json.loads((DOCS / "report.schema.json").read_text())
        obj = json.loads(report_json_bytes(small_report()))
        jsonschema.validate(obj, schema)

    def test_degenerate_report_validates_too(self):
        jsonschema = pytest.importorskip("jsonschema")
        schema = json.loads((DOCS / "report.schema.json").read_text())
        report = finalize(PartialAggregate(Rule.SPEED_LIMIT))
        obj = json.loads(report_json_bytes(report))
        assert obj["dataset_mean"] is None
        assert obj["relative_bins"] is None
        jsonschema.validate(obj, schema)

    def test_rgsf_schema_accepts_writer_output(self, rng):
        jsonschema = pytest.importorskip("jsonschema")
        from rulegauge.rgsf import write_scenario
        from conftest import random_scenario

        schema = json.loads((DOCS / "rgsf.schema.json").read_text())
        doc = json.loads(write_scenario(random_scenario(rng)))
        jsonschema.validate(doc, schema)


class TestCsv:
    def test_fixed_columns_and_rows(self):
        data = driver_scores_csv_bytes(small_report()).decode()
        rows = list(csv.reader(io.StringIO(data)))
        assert rows[0] == ["rule", "scenario_id", "vehicle_id", "rc_mean", "frame_count"]
        assert len(rows) == 1 + 3
        assert rows[1][:3] == ["dist", "s0", "a"]
        assert float(rows[1][3]) == pytest.approx(0.95)
        assert rows[3][:3] == ["dist", "s1", "a"]
        assert rows[3][3] == "1"


class TestSvg:
    def test_histogram_is_well_formed_xml(self):
        svg = histogram_svg(small_report().histogram, "test")
        root = ET.fromstring(svg)
        assert root.tag.endswith("svg")
        rects = [el for el in root.iter() if el.tag.endswith("rect")]
        assert len(rects) >= 2  # background + at least one bar

    def test_relative_is_well_formed_xml(self):
        svg = relative_svg(small_report().relative_bins, "test")
        root = ET.fromstring(svg)
        texts = [el.text for el in root.iter() if el.tag.endswith("text")]
        assert any(t and t.endswith("%") for t in texts)

    def test_relative_none_renders_placeholder(self):
        svg = relative_svg(None, "empty")
        assert "no scored drivers" in svg

    def test_zero_count_bins_draw_no_bar(self):
        report = small_report()
        svg = histogram_svg(report.histogram, "t")
        bars = svg.count('fill="#4878a8"')
        assert bars == sum(1 for c in report.histogram.counts if c > 0)


class TestWriteFiles:
    def test_all_four_files_written(self, tmp_path):
        report = small_report()
        paths = write_report_files(report, tmp_path)
        names = sorted(p.name for p in paths)
        assert names == [
            "driver_scores_dist.csv",
            "histogram_dist.svg",
            "relative_dist.svg",
            "report_dist.json",
        ]
        for p in paths:
            assert p.exists() and p.stat().st_size > 0

    def test_bytes_stable_across_calls(self, tmp_path):
        report = small_report()
        first = report_json_bytes(report)
        second = report_json_bytes(report)
        assert first == second
