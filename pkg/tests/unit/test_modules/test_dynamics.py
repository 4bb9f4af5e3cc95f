# tests/unit/test_modules/test_dynamics.py
import math

import numpy as np
import pytest

from src.core.exceptions import (
    DomainError,
    SimulationDivergenceError,
    UndefinedMetricError,
    UnsupportedGaitError,
    ValidationException,
)
from src.modules.dynamics.actuator import actuator_energy, actuator_step, static_displacement
from src.modules.dynamics.contact import LegContactState, chassis_reaction, foot_contact_force, foot_reaction
from src.modules.dynamics.simulator import initial_height, simulate
from src.modules.dynamics.state import BodyState, SimConfig
from src.modules.dynamics.sweep import RunRequest, execute_run, sweep
from src.modules.gait.phase_table import GaitProgram
from src.modules.metrics.summary import STATUS_DIVERGED


# ==================== CONTACT ====================

def test_airborne_foot_has_no_force():
    normal, tangential, slip, anchor = foot_reaction(-1e-4, 0.0, 0.0, 0.0, math.nan, 50.0, 0.0, 20.0, 0.0, 0.3)
    assert (normal, tangential, slip) == (0.0, 0.0, False)
    assert math.isnan(anchor)


def test_touchdown_sticks_at_foot_position():
    normal, tangential, slip, anchor = foot_reaction(1e-4, 0.0, 2e-3, 0.0, math.nan, 50.0, 0.0, 20.0, 0.0, 0.3)
    assert normal == pytest.approx(5e-3)
    assert tangential == 0.0
    assert not slip
    assert anchor == 2e-3


def test_friction_cone_limits_tangential_force():
    normal, tangential, slip, anchor = foot_reaction(1e-4, 0.0, 0.0, 0.0, 1e-3, 50.0, 0.0, 20.0, 0.0, 0.3)
    assert slip
    assert tangential == pytest.approx(0.3 * normal)
    # the stick point is dragged so the spring carries the cone limit
    assert anchor == pytest.approx(0.3 * normal / 20.0)


def test_foot_contact_force_uses_stiffness_curve(hamr_jr):
    leg = LegContactState(hip_x=0.0, hip_z=0.0, leg_length=5.2, foot_offset=0.0,
                          stiffness_curve=hamr_jr.stiffness_curve, tangential_stiffness=20.0)
    body = BodyState(x=0.0, z=5.0, pitch=0.0, x_dot=0.0, z_dot=0.0, pitch_rate=0.0)
    force = foot_contact_force(leg, body, mu=0.3)
    assert force.normal == pytest.approx(53.315 * 0.2, rel=1e-6)
    assert force.tangential == 0.0
    assert force.anchor_x == pytest.approx(0.0)
    assert force.foot_z == pytest.approx(-0.2)
    assert force.stored_energy == pytest.approx(0.5 * 53.315 * 0.2 ** 2, rel=1e-6)


def test_airborne_foot_reports_position(hamr_jr):
    leg = LegContactState(hip_x=3.0, hip_z=0.0, leg_length=4.5, foot_offset=0.5,
                          stiffness_curve=hamr_jr.stiffness_curve, tangential_stiffness=20.0)
    body = BodyState(x=1.0, z=5.0, pitch=0.0, x_dot=0.0, z_dot=0.0, pitch_rate=0.0)
    force = foot_contact_force(leg, body, mu=0.3)
    assert force.normal == 0.0
    assert force.anchor_x is None
    assert (force.foot_x, force.foot_z) == pytest.approx((4.5, 0.5))


def test_chassis_reaction_regularized_friction():
    normal, tangential = chassis_reaction(1e-4, 0.0, 5e-5, 2000.0, 0.0, 0.3, 1e-4)
    assert normal == pytest.approx(0.2)
    assert tangential == pytest.approx(-0.3 * 0.2 * 0.5)
    assert chassis_reaction(-1e-4, 0.0, 0.0, 2000.0, 0.0, 0.3, 1e-4) == (0.0, 0.0)


# ==================== ACTUATOR ====================

def test_actuator_settles_to_static_displacement(hamr_jr):
    m = hamr_jr.swing_model
    q, q_dot = 0.0, 0.0
    for _ in range(20000):
        q, q_dot = actuator_step(m, q, q_dot, 200.0, 0.0, 1e-5)
    assert q == pytest.approx(static_displacement(m, 200.0), rel=1e-4)
    assert actuator_energy(m, q, 0.0) == pytest.approx(0.5 * m.k_total * q ** 2)


def test_actuator_step_rejects_non_positive_dt(hamr_jr):
    with pytest.raises(DomainError):
        actuator_step(hamr_jr.lift_model, 0.0, 0.0, 100.0, 0.0, 0.0)


# ==================== CONFIG ====================

def test_default_timestep(hamr_jr):
    cfg = SimConfig()
    assert cfg.resolve_timestep(160.0, hamr_jr.max_natural_frequency) == pytest.approx(1e-5)


def test_explicit_timestep_above_stability_limit(hamr_jr):
    with pytest.raises(DomainError):
        SimConfig(timestep=1e-4).resolve_timestep(160.0, hamr_jr.max_natural_frequency)


def test_run_duration_follows_cycles():
    cfg = SimConfig(cycles=3, min_window=0.25, settle_time=0.2)
    assert cfg.run_duration(1.0) == pytest.approx(3.2)
    assert cfg.run_duration(280.0) == pytest.approx(0.2 + 70 / 280.0)
    assert SimConfig(duration=0.5).run_duration(10.0) == 0.5


def test_duration_must_exceed_settle():
    with pytest.raises(ValidationException):
        SimConfig(duration=0.1, settle_time=0.2)


def test_cycles_config_ignores_duration():
    cfg = SimConfig(duration=0.1, settle_time=0.2, cycles=3)
    assert cfg.run_duration(10.0) == pytest.approx(0.2 + 3 / 10.0)


# ==================== SIMULATION ====================

@pytest.fixture
def trot_run(hamr_jr, quick_config):
    return simulate(hamr_jr, GaitProgram.from_name('trot', 160.0), quick_config)


def test_trajectory_records(trot_run, quick_config):
    traj = trot_run
    assert traj.body.shape == (len(traj), 6)
    assert np.all(np.diff(traj.time) > 0)
    assert traj.time[-1] == pytest.approx(quick_config.duration, abs=traj.sample_period)
    assert np.all(np.isfinite(traj.body))
    assert traj.voltage.min() >= 0.0 and traj.voltage.max() <= 200.0 + 1e-9
    assert np.any(traj.contact)
    assert np.any(traj.current != 0.0)
    assert traj.meta['gait'] == 'trot'


def test_trajectory_frame_columns(trot_run):
    frame = trot_run.to_frame()
    assert len(frame) == len(trot_run)
    for column in ('t_s', 'x_mm', 'FL_foot_z_mm', 'RR_contact', 'FL_lift_i_amps', 'energy_uj'):
        assert column in frame.columns


def test_body_state_at_sample(trot_run):
    state = trot_run.body_state(-1)
    assert state.x == trot_run.x[-1]
    assert state.z == trot_run.z[-1]


def test_simulation_is_deterministic(hamr_jr, quick_config, trot_run):
    again = simulate(hamr_jr, GaitProgram.from_name('trot', 160.0), quick_config)
    np.testing.assert_array_equal(again.body, trot_run.body)
    np.testing.assert_array_equal(again.current, trot_run.current)


def test_repetitions_draw_different_perturbations(hamr_jr):
    cfg = SimConfig(duration=0.01, settle_time=0.0, randomize_phase=True, initial_jitter=0.02)
    program = GaitProgram.from_name('pronk', 100.0)
    first = simulate(hamr_jr, program, cfg, repetition=0)
    second = simulate(hamr_jr, program, cfg, repetition=1)
    assert first.meta['time_offset'] != second.meta['time_offset']
    assert first.body[0, 1] != second.body[0, 1]


def test_initial_height_clears_supports(hamr_jr):
    program = GaitProgram.from_name('trot', 10.0)
    assert initial_height(hamr_jr, program) > hamr_jr.belly_height
    assert initial_height(hamr_jr, program) > hamr_jr.rest_length + 1.04


def test_invalid_program_is_rejected(hamr_jr, quick_config):
    program = GaitProgram.from_name('trot', 10.0, voltage=300.0)
    with pytest.raises(ValidationException):
        simulate(hamr_jr, program, quick_config)


def test_non_finite_state_raises(hamr_jr, monkeypatch):
    monkeypatch.setattr("src.modules.dynamics.contact.foot_reaction",
                        lambda *args: (math.nan, 0.0, False, math.nan))
    cfg = SimConfig(duration=0.01, settle_time=0.0, initial_height=4.0)
    with pytest.raises(SimulationDivergenceError) as excinfo:
        simulate(hamr_jr, GaitProgram.from_name('pronk', 100.0), cfg)
    assert excinfo.value.step == 1

    summary = execute_run(RunRequest(7, hamr_jr, GaitProgram.from_name('pronk', 100.0), cfg))
    assert summary.status == STATUS_DIVERGED
    assert summary.run_id == 7
    assert math.isnan(summary.mean_speed)


def test_ground_reaction_loads_actuators(hamr_jr, monkeypatch):
    import src.modules.dynamics.simulator as simulator

    loads = {"lift": [], "swing": []}

    def recording_step(m, q, q_dot, voltage, external_force, dt):
        loads[m.dof_kind.value].append(external_force)
        return actuator_step(m, q, q_dot, voltage, external_force, dt)

    monkeypatch.setattr(simulator, "actuator_step", recording_step)
    cfg = SimConfig(duration=0.02, settle_time=0.0)
    traj = simulate(hamr_jr, GaitProgram.from_name("trot", 100.0), cfg)
    assert np.any(traj.contact)
    # the ground only ever pushes the lift actuators back
    assert max(loads["lift"]) <= 0.0
    assert min(loads["lift"]) < 0.0
    assert any(f != 0.0 for f in loads["swing"])


# ==================== SWEEP ====================

def test_sweep_orders_runs(hamr_jr, quick_config):
    summaries = sweep(hamr_jr, ['trot', 'pronk'], [120.0], quick_config, repetitions=2, progress=False)
    assert [s.run_id for s in summaries] == [0, 1, 2, 3]
    assert [(s.gait, s.repetition) for s in summaries] == [('trot', 0), ('trot', 1), ('pronk', 0), ('pronk', 1)]
    assert all(s.ok for s in summaries)
    assert all(s.voltage == 200.0 for s in summaries)


def test_sweep_rejects_bad_inputs(hamr_jr, quick_config):
    with pytest.raises(DomainError):
        sweep(hamr_jr, [], [10.0], quick_config)
    with pytest.raises(DomainError):
        sweep(hamr_jr, ['trot'], [], quick_config)
    with pytest.raises(DomainError):
        sweep(hamr_jr, ['trot'], [10.0], quick_config, repetitions=0)
    with pytest.raises(UnsupportedGaitError):
        sweep(hamr_jr, ['jump'], [10.0], quick_config)


def test_window_after_run_end(trot_run):
    with pytest.raises(UndefinedMetricError):
        trot_run.window(1.0)
