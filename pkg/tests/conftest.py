"""Shared fixture builders for the test suite."""

from __future__ import annotations

import math

import numpy as np
import pytest

from rulegauge.types import Frame, Lane, Scenario, Vec2, VehicleState


def vehicle(
    vehicle_id="v",
    x=0.0,
    y=0.0,
    heading=0.0,
    vx=0.0,
    vy=0.0,
    length=4.0,
    width=2.0,
    valid=True,
) -> VehicleState:
    return VehicleState(
        vehicle_id=vehicle_id,
        center=Vec2(x, y),
        heading=heading,
        velocity=Vec2(vx, vy),
        length=length,
        width=width,
        valid=valid,
    )


def lane(lane_id="l0", points=((0.0, 0.0), (10.0, 0.0)), limit=None) -> Lane:
    return Lane(lane_id, tuple(Vec2(x, y) for x, y in points), limit)


def scenario(vehicles=(), lanes=(), n_frames=1, rate_hz=10.0, scenario_id="s0") -> Scenario:
    frames = tuple(
        Frame(frame_index=t, time_s=t / rate_hz, vehicles=tuple(vehicles))
        for t in range(n_frames)
    )
    return Scenario(scenario_id, rate_hz, tuple(lanes), frames)


def random_scenario(rng: np.random.Generator, scenario_id="rnd") -> Scenario:
    """A structurally valid scenario with arbitrary finite values."""
    lanes = []
    for li in range(rng.integers(1, 4)):
        n_pts = int(rng.integers(2, 6))
        xs = np.cumsum(rng.uniform(0.5, 5.0, n_pts)) + rng.uniform(-100, 100)
        ys = rng.uniform(-100, 100, n_pts)
        limit = float(rng.uniform(5, 40)) if rng.random() < 0.7 else None
        lanes.append(
            Lane(f"lane{li}", tuple(Vec2(float(x), float(y)) for x, y in zip(xs, ys)), limit)
        )
    frames = []
    t = 0.0
    index = 0
    for fi in range(rng.integers(1, 5)):
        vehicles = []
        for vi in range(rng.integers(0, 5)):
            vehicles.append(
                VehicleState(
                    vehicle_id=f"veh{vi}",
                    center=Vec2(float(rng.uniform(-200, 200)), float(rng.uniform(-200, 200))),
                    heading=float(rng.uniform(-math.pi, math.pi)),
                    velocity=Vec2(float(rng.uniform(-30, 30)), float(rng.uniform(-30, 30))),
                    length=float(rng.uniform(0.5, 12)),
                    width=float(rng.uniform(0.5, 3)),
                    valid=bool(rng.random() < 0.9),
                )
            )
        frames.append(Frame(frame_index=index, time_s=t, vehicles=tuple(vehicles)))
        index += int(rng.integers(1, 4))
        t += float(rng.uniform(0.05, 0.5))
    return Scenario(scenario_id, float(rng.uniform(1, 20)), tuple(lanes), tuple(frames))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
