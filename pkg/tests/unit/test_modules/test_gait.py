# tests/unit/test_modules/test_gait.py
import numpy as np
import pytest

from src.core.exceptions import UnsupportedGaitError, ValidationException
from src.modules.gait.drive import channel_index, drive_waveforms, leg_channel_indices, synthesize_drive
from src.modules.gait.phase_table import (
    CHANNEL_NAMES,
    Dof,
    GaitProgram,
    Leg,
    gait_phase_table,
    validate_gait,
)


def test_phase_tables():
    assert gait_phase_table('trot') == {Leg.FL: 0.0, Leg.FR: 0.5, Leg.RL: 0.5, Leg.RR: 0.0}
    assert set(gait_phase_table('Pronk').values()) == {0.0}
    assert gait_phase_table('bound') == {Leg.FL: 0.0, Leg.FR: 0.0, Leg.RL: 0.5, Leg.RR: 0.5}


@pytest.mark.parametrize("name", ["jump", "gallop", ""])
def test_unsupported_gaits(name):
    with pytest.raises(UnsupportedGaitError):
        gait_phase_table(name)


def test_channel_order():
    assert CHANNEL_NAMES[:2] == ('FL_lift', 'FL_swing')
    assert channel_index(Leg.RR, Dof.SWING) == 7
    assert leg_channel_indices()[Leg.FR] == (2, 3)


def test_valid_program():
    program = GaitProgram.from_name('trot', 160.0)
    ok, violations = validate_gait(program, 200.0)
    assert ok and violations == []


def test_invalid_program_collects_violations():
    program = GaitProgram.custom({'FL': 0.0, 'FR': 1.0, 'RL': 0.5}, frequency=-1.0, voltage=250.0)
    ok, violations = validate_gait(program, 200.0)
    assert not ok
    text = " ".join(violations)
    assert "missing legs ['RR']" in text
    assert "phase[FR]" in text
    assert "frequency" in text
    assert "voltage" in text


def test_custom_program_rejects_unknown_leg():
    with pytest.raises(ValidationException):
        GaitProgram.custom({'XX': 0.0}, 10.0)


def test_drive_is_unipolar_and_bounded():
    program = GaitProgram.from_name('trot', 50.0, voltage=150.0)
    times = np.linspace(0.0, 0.04, 401)
    volts = drive_waveforms(program, times)
    assert volts.shape == (401, 8)
    assert volts.min() >= 0.0
    assert volts.max() <= 150.0 + 1e-9


def test_trot_diagonals_in_phase_and_pairs_opposed():
    program = GaitProgram.from_name('trot', 10.0)
    for t in (0.0, 0.013, 0.07):
        v = synthesize_drive(program, t)
        fl, fr, rl, rr = (channel_index(leg, Dof.SWING) for leg in Leg)
        assert v[fl] == pytest.approx(v[rr])
        assert v[fr] == pytest.approx(v[rl])
        assert v[fl] + v[fr] == pytest.approx(200.0)


def test_lift_leads_swing_by_quarter_cycle():
    program = GaitProgram.from_name('pronk', 10.0)
    lift = channel_index(Leg.FL, Dof.LIFT)
    swing = channel_index(Leg.FL, Dof.SWING)
    # swing reaches at t + T/4 the value lift had at t
    assert synthesize_drive(program, 0.025)[swing] == pytest.approx(synthesize_drive(program, 0.0)[lift])


def test_vectorized_drive_matches_pointwise():
    program = GaitProgram.from_name('bound', 33.0)
    times = np.array([0.0, 0.001, 0.0123])
    expected = np.vstack([synthesize_drive(program, t) for t in times])
    np.testing.assert_allclose(drive_waveforms(program, times), expected)


def test_shifted_wraps_phases():
    program = GaitProgram.from_name('trot', 10.0).shifted(0.75)
    assert program.phases[Leg.FR] == pytest.approx(0.25)
    assert program.phases[Leg.FL] == pytest.approx(0.75)
