import math
import random

import pytest

from asid.airframe import reference_config, service_ceiling, wind_drift, \
    max_progressive_speed
from asid.flightsim import (
    BatteryExhaustedError,
    Environment,
    SensorNoise,
    SimState,
    hover_throttle,
    run_mission,
    step,
    true_sample,
)
from asid.mission import MissionCommand, MissionPlan, TAKEOFF, LAND, \
    generate_sounding_profile

CFG = reference_config()
CALM = Environment()

FT = 0.3048


def _terminal_speed_at(altitude: float) -> float:
    """Converge the vertical speed at a frozen altitude (full throttle)."""
    state = SimState(altitude=altitude, battery_remaining=1e9)
    previous = -1.0
    while state.vertical_speed - previous > 1e-9:
        previous = state.vertical_speed
        step(state, CFG, CALM, 1.0, 0.05)
        state.altitude = altitude  # hold position; probe the force balance only
    return state.vertical_speed


class TestStep:
    def test_hover_balance_keeps_speed_zero(self):
        state = SimState(altitude=0.0, battery_remaining=5000.0)
        throttle = hover_throttle(CFG)
        for _ in range(200):
            step(state, CFG, CALM, throttle, 0.01)
        assert state.vertical_speed == pytest.approx(0.0, abs=1e-12)
        assert state.altitude == pytest.approx(0.0, abs=1e-12)

    def test_sea_level_terminal_climb_is_120_ft_per_s(self):
        terminal = _terminal_speed_at(0.0)
        assert terminal / FT == pytest.approx(120.0, rel=0.15)
        # the drag default is calibrated to land almost exactly on the claim
        assert terminal / FT == pytest.approx(120.0, abs=0.5)

    def test_near_ceiling_terminal_climb_is_55_ft_per_s(self):
        near_ceiling = 0.75 * service_ceiling(CFG)
        terminal = _terminal_speed_at(near_ceiling)
        assert terminal / FT == pytest.approx(55.0, rel=0.20)

    def test_terminal_speed_monotone_decreasing_in_altitude(self):
        altitudes = [i * 1000.0 for i in range(7)]
        speeds = [_terminal_speed_at(h) for h in altitudes]
        assert all(a > b for a, b in zip(speeds, speeds[1:]))

    def test_battery_drains_with_throttle(self):
        state = SimState(battery_remaining=5000.0)
        step(state, CFG, CALM, 1.0, 0.01)
        assert state.battery_remaining < 5000.0

    def test_parameter_validation(self):
        state = SimState(battery_remaining=10.0)
        with pytest.raises(ValueError):
            step(state, CFG, CALM, 1.5, 0.01)
        with pytest.raises(ValueError):
            step(state, CFG, CALM, 0.5, 0.0)
        with pytest.raises(ValueError):
            step(state, CFG, CALM, 0.5, 0.2)


class TestTrueSample:
    def test_surface_values_exact_with_zero_noise(self):
        rng = random.Random(0)
        reading = true_sample(CALM, 0.0, 0.0, rng)
        assert reading.temperature == 15.0
        assert reading.humidity == 50.0
        assert reading.pressure == 1013.25 * 100.0

    def test_linear_lapse(self):
        rng = random.Random(0)
        reading = true_sample(CALM, 1000.0, 10.0, rng)
        assert reading.temperature == pytest.approx(15.0 - 6.5, rel=1e-12)

    def test_humidity_clamped(self):
        env = Environment(surface_humidity=3.0, humidity_lapse=0.5)
        reading = true_sample(env, 1000.0, 0.0, random.Random(0))
        assert reading.humidity == 0.0

    def test_equal_seeds_equal_samples(self):
        env = Environment(sensor_noise=SensorNoise(0.2, 0.5, 8.0))
        a = [true_sample(env, h, 0.0, random.Random(9)) for h in (0.0, 10.0)]
        b = [true_sample(env, h, 0.0, random.Random(9)) for h in (0.0, 10.0)]
        assert a == b

    def test_negative_altitude_rejected(self):
        with pytest.raises(ValueError):
            true_sample(CALM, -1.0, 0.0, random.Random(0))


class TestRunMission:
    def test_simple_up_and_down(self):
        plan = MissionPlan(home=(0.0, 0.0), commands=(
            MissionCommand(TAKEOFF, alt=10.0),
            MissionCommand(LAND),
        ))
        traj = run_mission(plan, CFG, CALM)
        assert traj.max_altitude == pytest.approx(10.0, abs=0.2)
        assert traj.samples[0][1] == 0.0
        assert traj.samples[-1][1] == 0.0

    def test_generator_plan_camera_events(self):
        plan = generate_sounding_profile(target_alt=35.0)
        traj = run_mission(plan, CFG, CALM)
        assert len(traj.camera_events) == 16
        # events cluster at the four capture levels
        levels = sorted(set(round(e.altitude) for e in traj.camera_events))
        assert levels == [10, 20, 30, 35]

    def test_altitude_never_exceeds_plan_max(self):
        plan = generate_sounding_profile(target_alt=40.0)
        traj = run_mission(plan, CFG, CALM)
        assert traj.max_altitude <= plan.max_altitude + 0.5

    def test_battery_monotone_nonincreasing(self):
        state = SimState(battery_remaining=5000.0)
        readings = []
        for _ in range(500):
            step(state, CFG, CALM, 0.7, 0.01)
            readings.append(state.battery_remaining)
        assert all(a >= b for a, b in zip(readings, readings[1:]))

    def test_landing_offset_matches_wind_drift(self):
        env = Environment(wind=118.0)
        plan = MissionPlan(home=(0.0, 0.0), commands=(
            MissionCommand(TAKEOFF, alt=10.0),
            MissionCommand(LAND),
        ))
        traj = run_mission(plan, CFG, env)
        expected = wind_drift(118.0, max_progressive_speed(CFG), traj.duration)
        assert traj.landing_offset == expected

    def test_bit_identical_across_runs(self):
        plan = generate_sounding_profile(target_alt=30.0)
        a = run_mission(plan, CFG, CALM)
        b = run_mission(plan, CFG, CALM)
        assert a.samples == b.samples
        assert a.camera_events == b.camera_events
        assert a.landing_offset == b.landing_offset

    def test_invalid_plan_rejected(self):
        from asid.mission import MissionValidationError
        plan = MissionPlan(home=(0.0, 0.0), commands=(
            MissionCommand(TAKEOFF, alt=7000.0),
            MissionCommand(LAND),
        ))
        with pytest.raises(MissionValidationError):
            run_mission(plan, CFG, CALM)

    def test_battery_exhaustion_flags_truncated_trajectory(self):
        import dataclasses
        from asid.airframe import BatterySpec
        tiny = dataclasses.replace(CFG, battery=BatterySpec(capacity_mah=20.0, c_rate=50.0))
        plan = generate_sounding_profile(target_alt=40.0)
        with pytest.raises(BatteryExhaustedError) as err:
            run_mission(plan, tiny, CALM)
        trajectory = err.value.trajectory
        assert trajectory.samples
        assert trajectory.samples[-1][1] > 0.0  # stopped mid-air

    def test_time_to_design_altitude_in_expected_band(self):
        # full-throttle climb to 20,000 ft takes 4-8 minutes
        state = SimState(battery_remaining=1e9)
        while state.altitude < 6096.0:
            step(state, CFG, CALM, 1.0, 0.02)
        assert 4.0 * 60.0 <= state.t <= 8.0 * 60.0


class TestTrajectoryExports:
    def test_csv_shape(self):
        plan = MissionPlan(home=(0.0, 0.0), commands=(
            MissionCommand(TAKEOFF, alt=10.0),
            MissionCommand(LAND),
        ))
        traj = run_mission(plan, CFG, CALM)
        lines = traj.to_csv().splitlines()
        assert lines[0] == "t,altitude,vertical_speed,heading"
        assert len(lines) == len(traj.samples) + 1

    def test_camera_manifest_is_json(self):
        import json
        plan = generate_sounding_profile(target_alt=10.0)
        traj = run_mission(plan, CFG, CALM)
        events = json.loads(traj.camera_manifest())
        assert len(events) == 4
        assert set(events[0]) == {"t", "altitude", "heading"}
        headings = [e["heading"] for e in events]
        assert headings == [90.0, 180.0, 270.0, 0.0]
