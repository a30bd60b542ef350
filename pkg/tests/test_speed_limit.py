"""Speed-limit rule engine: lane assignment, filtering, conformity."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from rulegauge.speed_limit import (
    SpeedLimitConfig,
    assign_lane,
    rc_speed_frame,
    score_scenario_speed,
)
from rulegauge.types import Rule

from conftest import lane, scenario, vehicle


def straight_lane(lane_id="l0", y=0.0, limit=20.0, length=100.0, step=5.0):
    n = int(length / step) + 1
    return lane(lane_id, tuple((i * step, y) for i in range(n)), limit)


class TestAssignLane:
    def test_nearest_lane_wins(self):
        near = straight_lane("near", y=2.0)
        far = straight_lane("far", y=7.0)
        assert assign_lane(vehicle(x=50.0), [far, near]).lane_id == "near"

    def test_gate_rejects_distant_nearest(self):
        distant = straight_lane("only", y=12.0)
        assert assign_lane(vehicle(x=50.0), [distant]) is None

    def test_exactly_at_gate_still_assigned(self):
        at_gate = straight_lane("edge", y=10.0)
        assert assign_lane(vehicle(x=50.0), [at_gate]).lane_id == "edge"

    def test_unlimited_nearest_blocks_assignment(self):
        # nearest lane lacks a limit; the limited lane farther away must NOT
        # be used as a fallback
        unlimited = straight_lane("no_limit", y=1.0, limit=None)
        limited = straight_lane("limited", y=4.0)
        assert assign_lane(vehicle(x=50.0), [unlimited, limited]) is None
        assert assign_lane(vehicle(x=50.0), [limited]).lane_id == "limited"

    def test_tie_broken_by_lane_id_for_any_permutation(self):
        a = straight_lane("aaa", y=3.0)
        b = straight_lane("bbb", y=-3.0)
        c = straight_lane("ccc", y=3.0)
        for perm in itertools.permutations([a, b, c]):
            assert assign_lane(vehicle(x=50.0), list(perm)).lane_id == "aaa"

    def test_empty_lane_list(self):
        assert assign_lane(vehicle(), []) is None


class TestRcSpeedFrame:
    def test_above_limit(self):
        assert rc_speed_frame(vehicle(vx=25.0), straight_lane(limit=20.0)) == 0.8

    def test_at_or_below_limit_scores_one(self):
        assert rc_speed_frame(vehicle(vx=18.0), straight_lane(limit=20.0)) == 1.0
        assert rc_speed_frame(vehicle(vx=20.0), straight_lane(limit=20.0)) == 1.0

    def test_below_80_percent_not_scored(self):
        assert rc_speed_frame(vehicle(vx=10.0), straight_lane(limit=20.0)) is None

    def test_exactly_80_percent_is_scored(self):
        assert rc_speed_frame(vehicle(vx=16.0), straight_lane(limit=20.0)) == 1.0

    def test_velocity_norm_is_used(self):
        assert rc_speed_frame(vehicle(vx=15.0, vy=20.0), straight_lane(limit=20.0)) == 0.8

    def test_lane_without_limit_is_a_programming_error(self):
        with pytest.raises(ValueError):
            rc_speed_frame(vehicle(vx=20.0), straight_lane(limit=None))

    @given(
        limit=st.floats(1.0, 60.0),
        speed=st.floats(1.0, 120.0),
        scale=st.floats(0.01, 100.0),
    )
    def test_scale_invariance(self, limit, speed, scale):
        base = rc_speed_frame(vehicle(vx=speed), straight_lane(limit=limit))
        scaled = rc_speed_frame(
            vehicle(vx=speed * scale), straight_lane(limit=limit * scale)
        )
        if base is None:
            assert scaled is None or speed >= 0.8 * limit  # boundary rounding
        elif scaled is not None:
            assert scaled == pytest.approx(base, rel=1e-12)

    @given(speed=st.floats(16.0, 500.0))
    def test_emitted_values_in_unit_interval(self, speed):
        rc = rc_speed_frame(vehicle(vx=speed), straight_lane(limit=20.0))
        assert rc is not None
        assert 0.0 < rc <= 1.0


class TestScoreScenario:
    def test_red_light_queue_discarded(self):
        queued = [vehicle(f"q{i}", x=10.0 + 8 * i, vx=0.5) for i in range(4)]
        s = scenario(vehicles=queued, lanes=[straight_lane()])
        assert score_scenario_speed(s) == []

    def test_at_limit_for_five_frames(self):
        s = scenario(vehicles=[vehicle("a", x=50.0, vx=20.0)], lanes=[straight_lane()], n_frames=5)
        samples = score_scenario_speed(s)
        assert len(samples) == 5
        assert all(x.rc == 1.0 for x in samples)
        assert samples[0].rule is Rule.SPEED_LIMIT

    def test_25_percent_over_limit(self):
        s = scenario(vehicles=[vehicle("a", x=50.0, vx=25.0)], lanes=[straight_lane()])
        samples = score_scenario_speed(s)
        # oracle: Eq. arithmetic by hand, 20 / 25 = 0.8
        assert [x.rc for x in samples] == [0.8]

    def test_no_lanes_no_samples(self):
        s = scenario(vehicles=[vehicle("a", vx=25.0)], lanes=[])
        assert score_scenario_speed(s) == []

    def test_invalid_vehicles_skipped(self):
        s = scenario(
            vehicles=[vehicle("a", x=50.0, vx=25.0, valid=False)], lanes=[straight_lane()]
        )
        assert score_scenario_speed(s) == []

    def test_vehicle_beyond_lane_gate_skipped(self):
        s = scenario(
            vehicles=[vehicle("a", x=50.0, y=11.0, vx=25.0)], lanes=[straight_lane()]
        )
        assert score_scenario_speed(s) == []

    def test_emitted_samples_satisfy_filter_bound(self):
        vehicles = [vehicle(f"v{i}", x=50.0, vx=float(s)) for i, s in enumerate((10, 16, 20, 40))]
        s = scenario(vehicles=vehicles, lanes=[straight_lane(limit=20.0)])
        samples = score_scenario_speed(s)
        assert {x.vehicle_id for x in samples} == {"v1", "v2", "v3"}
        for x in samples:
            assert 0.0 < x.rc <= 1.0


class TestConfigValidation:
    def test_bounds(self):
        with pytest.raises(ValueError):
            SpeedLimitConfig(max_lane_dist_m=0.0)
        with pytest.raises(ValueError):
            SpeedLimitConfig(min_fraction_of_limit=0.0)
        with pytest.raises(ValueError):
            SpeedLimitConfig(min_fraction_of_limit=1.5)

    def test_defaults(self):
        cfg = SpeedLimitConfig()
        assert cfg.max_lane_dist_m == 10.0
        assert cfg.min_fraction_of_limit == 0.8
