# tests/unit/test_modules/test_presets.py
import pytest

from src.core.exceptions import ValidationException
from src.modules.gait.phase_table import Leg
from src.presets.loader import list_presets, load_preset, preset_data, preset_text, robot_from_dict


def test_shipped_presets():
    assert list_presets() == ['hamr-jr', 'hamr-vi']


def test_preset_text_keeps_provenance_comments():
    text = preset_text('hamr-jr')
    assert text.startswith('#')
    assert 'name: hamr-jr' in text


def test_unknown_preset():
    with pytest.raises(KeyError):
        preset_text('hamr-xl')


def test_hamr_jr_values(hamr_jr):
    assert hamr_jr.name == 'hamr-jr'
    assert hamr_jr.body.body_mass == pytest.approx(0.32)
    assert hamr_jr.actuator.stiffness == pytest.approx(3200.0)
    assert hamr_jr.lift_model.natural_frequency == pytest.approx(237.3)
    assert hamr_jr.swing_model.natural_frequency == pytest.approx(279.1)
    assert hamr_jr.rated_voltage == 200.0
    assert [leg.leg for leg in hamr_jr.legs] == list(Leg)
    assert hamr_jr.characteristics['speed'] == pytest.approx(313.0)


def test_hamr_vi_values(hamr_vi):
    assert hamr_vi.body.body_length == pytest.approx(45.1)
    assert hamr_vi.actuator.stiffness == pytest.approx(800.0)
    assert hamr_vi.lift_model.natural_frequency == pytest.approx(81.3)
    assert hamr_vi.leg(Leg.RR).hip_position == (-14.0, -10.0, 0.0)


def test_overrides_replace_scalars():
    robot = load_preset('hamr-jr', mu=0.9, payload=0.16)
    assert robot.mu == 0.9
    assert robot.total_mass == pytest.approx(0.48)


def test_unknown_override_rejected():
    with pytest.raises(ValidationException):
        load_preset('hamr-jr', body_mass=1.0)


def test_invalid_override_rejected():
    with pytest.raises(ValidationException):
        load_preset('hamr-jr', mu=-0.1)


def test_missing_section_rejected():
    data = preset_data('hamr-jr')
    del data['lift']
    with pytest.raises(ValidationException):
        robot_from_dict(data)


def test_unexpected_field_rejected():
    data = preset_data('hamr-vi')
    data['body']['colour'] = 'red'
    with pytest.raises(ValidationException):
        robot_from_dict(data)
