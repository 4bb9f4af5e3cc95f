# tests/unit/test_modules/test_sensing.py
from dataclasses import replace

import numpy as np
import pytest

from src.core.exceptions import DomainError, ValidationException
from src.modules.dynamics.simulator import simulate
from src.modules.gait.phase_table import CHANNEL_NAMES, GaitProgram
from src.modules.sensing.currents import attach_currents
from src.modules.sensing.electrical import ElectricalModel, piezo_current
from src.modules.sensing.estimator import (
    SenseRecord,
    default_corner,
    estimate_position,
    estimate_velocity,
)
from src.modules.sensing.round_trip import sense_records, sensing_round_trip

DT = 1e-5
TIME = np.arange(2000) * DT


@pytest.fixture
def electrical():
    return ElectricalModel(capacitance=0.8, resistance=20.0, coupling_gain=0.42)


def test_coupling_from_transmission(hamr_jr):
    lift = hamr_jr.lift_model
    model = ElectricalModel.from_transmission(lift, 0.8, 20.0, coupling_efficiency=0.25)
    assert model.coupling_gain == pytest.approx(0.25 * lift.blocked_force / lift.rated_voltage * 1e3)
    with pytest.raises(DomainError):
        ElectricalModel.from_transmission(lift, 0.8, 20.0, coupling_efficiency=0.0)


def test_resistive_current_at_constant_voltage(electrical):
    current = piezo_current(electrical, np.full(100, 100.0), np.zeros(100), DT)
    np.testing.assert_allclose(current, 100.0 / 20e6)


def test_capacitive_current_follows_voltage_slope(electrical):
    voltage = 1e4 * TIME
    current = piezo_current(electrical, voltage, np.zeros_like(voltage), DT)
    np.testing.assert_allclose(current, 0.8e-9 * 1e4 + voltage / 20e6)


def test_current_series_must_align(electrical):
    with pytest.raises(DomainError):
        piezo_current(electrical, np.zeros(10), np.zeros(9), DT)
    with pytest.raises(DomainError):
        piezo_current(electrical, np.zeros(10), np.zeros(10), 0.0)


def test_velocity_recovered_from_current(electrical):
    rng = np.random.default_rng(3)
    voltage = 100.0 * (1 + np.sin(2 * np.pi * 160.0 * TIME))
    velocity = rng.normal(0.0, 50.0, len(TIME))
    current = piezo_current(electrical, voltage, velocity, DT)
    estimate = estimate_velocity(electrical, SenseRecord(TIME, voltage, current))
    np.testing.assert_allclose(estimate, velocity, rtol=1e-6, atol=1e-6)


def test_trapezoidal_integration_without_corner():
    position = estimate_position(np.ones(len(TIME)), DT, corner=0.0)
    np.testing.assert_allclose(position, TIME + DT / 2)


def test_transmission_ratio_scales_position():
    velocity = np.cos(2 * np.pi * 100.0 * TIME)
    base = estimate_position(velocity, DT, corner=5.0)
    np.testing.assert_allclose(estimate_position(velocity, DT, 5.0, transmission_ratio=10.0), 10.0 * base)


def test_corner_limits():
    assert default_corner(160.0) == pytest.approx(10.0)
    with pytest.raises(DomainError):
        estimate_position(np.zeros(10), DT, corner=80.0, drive_frequency=160.0)
    with pytest.raises(DomainError):
        estimate_position(np.zeros(10), DT, corner=-1.0)


def test_sense_record_requires_uniform_steps():
    with pytest.raises(ValidationException):
        SenseRecord(np.array([0.0, 1.0, 3.0]), np.zeros(3), np.zeros(3))
    record = SenseRecord(TIME, np.zeros(len(TIME)), np.zeros(len(TIME)), 'FL_lift')
    assert record.dt == pytest.approx(DT)
    assert list(record.to_frame().columns) == ['t_s', 'v_volts', 'i_amps']


# ==================== ROUND TRIP ====================

@pytest.fixture
def sensed_run(hamr_jr, quick_config):
    return simulate(hamr_jr, GaitProgram.from_name('trot', 160.0), quick_config)


def test_attach_currents_reproduces_simulation(hamr_jr, sensed_run):
    stripped = replace(sensed_run, current=np.zeros_like(sensed_run.current))
    np.testing.assert_array_equal(attach_currents(stripped, hamr_jr).current, sensed_run.current)


def test_sense_records_cover_every_channel(sensed_run):
    records = sense_records(sensed_run)
    assert [r.channel for r in records] == list(CHANNEL_NAMES)
    np.testing.assert_array_equal(records[3].current, sensed_run.current[:, 3])


def test_round_trip_recovers_velocity(hamr_jr, sensed_run, quick_config):
    round_trip = sensing_round_trip(sensed_run, hamr_jr, settle=quick_config.settle_time)
    assert len(round_trip.results) == 8
    assert all(r.velocity_nrmse < 1e-6 for r in round_trip.results)
    assert all(r.corner == pytest.approx(10.0) for r in round_trip.results)
    assert all(r.current_rms > 0 for r in round_trip.results)
    frame = round_trip.traces_frame()
    assert 'FL_swing_foot_est_mm' in frame.columns
    assert len(frame) == len(round_trip.time)


def test_round_trip_needs_electrical_models(hamr_jr, sensed_run, quick_config):
    legs = tuple(replace(leg, lift_electrical=None, swing_electrical=None) for leg in hamr_jr.legs)
    with pytest.raises(DomainError):
        sensing_round_trip(sensed_run, replace(hamr_jr, legs=legs), settle=quick_config.settle_time)


def test_missing_electrical_models_reported_before_window(hamr_jr, sensed_run):
    # the default settle time lies past the end of this short run
    legs = tuple(replace(leg, lift_electrical=None, swing_electrical=None) for leg in hamr_jr.legs)
    with pytest.raises(DomainError, match="no electrical models"):
        sensing_round_trip(sensed_run, replace(hamr_jr, legs=legs))
