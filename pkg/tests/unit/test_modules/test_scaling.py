# tests/unit/test_modules/test_scaling.py
import math

import pytest

from src.core.exceptions import DomainError, ValidationException
from src.modules.scaling.allometry import (
    StiffnessMode,
    actuator_stiffness_factor,
    compose,
    deflection_factor,
    flexure_stiffness_factor,
    force_factor,
    mass_factor,
    resonance_factor,
    scale_actuator,
    scale_chassis,
    scale_flexure,
    speed_factor,
    stiffness_factor,
)
from src.modules.scaling.report import BASE_VALUES, measured_pairs, report_to_frame, scaling_report
from src.modules.scaling.robot_scaling import scale_robot
from src.modules.scaling.specs import NAMED_TRANSFORMS, ActuatorSpec, AllometricTransform, BodyPlan

HALF = NAMED_TRANSFORMS['half']


# ==================== FACTORS ====================

def test_half_transform_factors():
    assert mass_factor(HALF) == pytest.approx(0.25)
    assert deflection_factor(HALF) == pytest.approx(0.25)
    assert force_factor(HALF) == pytest.approx(1.0)
    assert actuator_stiffness_factor(HALF) == pytest.approx(4.0)
    assert flexure_stiffness_factor(HALF) == pytest.approx(0.5)


def test_half_transform_composed_factors():
    sf = stiffness_factor(HALF)
    rf = resonance_factor(sf, mass_factor(HALF))
    assert sf == pytest.approx(4.5)
    assert rf == pytest.approx(math.sqrt(18.0))
    assert speed_factor(0.25, rf) == pytest.approx(0.25 * math.sqrt(18.0))
    assert speed_factor(0.25, rf, HALF.s_length) == pytest.approx(0.5 * math.sqrt(18.0))


def test_identity_transform_keeps_everything():
    identity = NAMED_TRANSFORMS['identity']
    assert identity.is_identity
    assert stiffness_factor(identity, StiffnessMode.COMPONENT_SUM, 800.0, 121.0) == pytest.approx(1.0)
    assert resonance_factor(1.0, mass_factor(identity)) == pytest.approx(1.0)


def test_component_sum_weights_by_component_stiffness():
    factor = stiffness_factor(HALF, StiffnessMode.COMPONENT_SUM, k_act=800.0, k_flex=121.0)
    assert factor == pytest.approx((4.0 * 800.0 + 0.5 * 121.0) / 921.0)


def test_component_sum_needs_components():
    with pytest.raises(DomainError):
        stiffness_factor(HALF, StiffnessMode.COMPONENT_SUM)
    with pytest.raises(DomainError):
        stiffness_factor(HALF, StiffnessMode.COMPONENT_SUM, 0.0, 0.0)


def test_flexure_length_scaling_softens_joint():
    assert flexure_stiffness_factor(HALF, scale_length=True) == pytest.approx(1.0)


@pytest.mark.parametrize("factors", [(0.0, 1.0, 1.0), (1.0, -0.5, 1.0), (1.0, 1.0, math.nan)])
def test_transform_rejects_non_positive_factors(factors):
    with pytest.raises(DomainError):
        AllometricTransform(*factors)


def test_resonance_factor_rejects_zero_mass():
    with pytest.raises(DomainError):
        resonance_factor(4.5, 0.0)


def test_compose_multiplies_elementwise():
    combined = compose(HALF, NAMED_TRANSFORMS['thick-flexure'])
    assert combined == AllometricTransform(0.5, 0.5, 2.0)
    assert mass_factor(combined) == pytest.approx(mass_factor(HALF) * 2.0)


# ==================== COMPONENTS ====================

def test_actuator_requires_consistent_stiffness():
    with pytest.raises(ValidationException):
        ActuatorSpec(10.0, 2.6, 483.525, 386.82, 900.0, 3.2, 5.0)


def test_scale_actuator_half(hamr_vi):
    scaled = scale_actuator(hamr_vi.actuator, HALF)
    assert scaled.stiffness == pytest.approx(3200.0)
    assert scaled.free_deflection == pytest.approx(483.525 / 4)
    assert scaled.blocked_force == pytest.approx(386.82)
    assert scaled.capacitance == pytest.approx(3.2 / 4)
    assert scaled.rated_voltage == hamr_vi.actuator.rated_voltage


def test_scale_chassis_half():
    plan = scale_chassis(BodyPlan(45.0, 26.0, 1.4, 1000.0), HALF)
    assert plan.body_length == pytest.approx(22.5)
    assert plan.body_width == pytest.approx(13.0)
    assert plan.body_mass == pytest.approx(0.35)
    assert plan.chassis_thickness == pytest.approx(1000.0)


def test_scale_flexure_keeps_length_by_default(hamr_vi):
    flexure = hamr_vi.flexures[0]
    scaled = scale_flexure(flexure, HALF)
    assert scaled.length == flexure.length
    assert scaled.width == pytest.approx(flexure.width / 2)
    assert scaled.stiffness == pytest.approx(flexure.stiffness / 2)
    assert scaled.max_angle == flexure.max_angle


def test_scale_flexure_length_scales_range_of_motion(hamr_vi):
    flexure = hamr_vi.flexures[0]
    scaled = scale_flexure(flexure, HALF, scale_length=True)
    assert scaled.length == pytest.approx(flexure.length / 2)
    assert scaled.max_angle == pytest.approx(flexure.max_angle / 2)
    assert scaled.stiffness == pytest.approx(flexure.stiffness)


# ==================== ROBOT ====================

def test_scale_robot_half(hamr_vi):
    scaled = scale_robot(hamr_vi, HALF)
    # actuator 800 N/m x4, reflected flexures 121 N/m x0.5, mass x0.25
    rf = math.sqrt((4.0 * 800.0 + 0.5 * 121.0) / 921.0 / 0.25)
    assert scaled.body.body_length == pytest.approx(45.1 / 2)
    assert scaled.body.body_mass == pytest.approx(1.41 / 4)
    assert scaled.lift_model.natural_frequency == pytest.approx(hamr_vi.lift_model.natural_frequency * rf)
    assert scaled.swing_model.natural_frequency == pytest.approx(hamr_vi.swing_model.natural_frequency * rf)
    assert scaled.lift_model.quality_factor == hamr_vi.lift_model.quality_factor
    assert scaled.leg(scaled.legs[0].leg).hip_x == pytest.approx(hamr_vi.legs[0].hip_x / 2)
    assert scaled.geometry == hamr_vi.geometry
    assert scaled.characteristics == {}


def test_scale_robot_component_sum_uses_robot_components(hamr_vi):
    scaled = scale_robot(hamr_vi, HALF, StiffnessMode.COMPONENT_SUM)
    expected = (4.0 * 800.0 + 0.5 * 121.0) / 921.0
    assert scaled.lift_model.k_total == pytest.approx(hamr_vi.lift_model.k_total * expected)


def test_scale_robot_identity_round_trip(hamr_jr):
    same = scale_robot(hamr_jr, NAMED_TRANSFORMS['identity'])
    assert same.body == hamr_jr.body
    assert same.lift_model.k_total == pytest.approx(hamr_jr.lift_model.k_total)
    assert same.lift_model.natural_frequency == pytest.approx(hamr_jr.lift_model.natural_frequency)
    assert same.swing_model.natural_frequency == pytest.approx(hamr_jr.swing_model.natural_frequency)


@pytest.mark.parametrize("preset", ["hamr_jr", "hamr_vi"])
@pytest.mark.parametrize("scale_flexure_length", [False, True])
def test_identity_transform_preserves_robot(request, preset, scale_flexure_length):
    robot = request.getfixturevalue(preset)
    same = scale_robot(robot, NAMED_TRANSFORMS['identity'], scale_flexure_length=scale_flexure_length)
    for before, after in zip(robot.legs, same.legs):
        assert after.lift.k_total == pytest.approx(before.lift.k_total)
        assert after.swing.k_total == pytest.approx(before.swing.k_total)
        assert after.lift.effective_mass == pytest.approx(before.lift.effective_mass)
        assert after.lift.quasi_static_gain == pytest.approx(before.lift.quasi_static_gain)
        assert (after.hip_x, after.hip_y) == pytest.approx((before.hip_x, before.hip_y))
    assert same.rest_length == pytest.approx(robot.rest_length)
    assert same.belly_height == pytest.approx(robot.belly_height)
    assert same.flexures == robot.flexures


def test_factor_sum_is_not_an_identity(hamr_jr):
    # actuator and flexure factors add up to 2 at unit scale
    doubled = scale_robot(hamr_jr, NAMED_TRANSFORMS['identity'], StiffnessMode.FACTOR_SUM)
    assert doubled.lift_model.k_total == pytest.approx(2.0 * hamr_jr.lift_model.k_total)


# ==================== REPORT ====================

def test_scaling_report_theoretical_rows(hamr_vi):
    rows = {row.quantity: row for row in scaling_report(hamr_vi, HALF)}
    assert list(rows) == list(BASE_VALUES)
    assert rows['body_mass'].factor_theoretical == pytest.approx(0.25)
    assert rows['vertical_stiffness'].factor_theoretical == pytest.approx(4.5)
    assert rows['lift_resonance'].factor_theoretical == pytest.approx(4.243, abs=1e-3)
    assert rows['speed'].factor_theoretical == pytest.approx(1.061, abs=1e-3)
    assert rows['speed_bl'].factor_theoretical == pytest.approx(2.121, abs=1e-3)
    assert rows['quasi_static_stride_length'].scaled == pytest.approx(8.4 * 0.25)
    assert all(row.factor_experimental is None for row in rows.values())


def test_scaling_report_experimental_factors(hamr_vi, hamr_jr):
    rows = {row.quantity: row for row in scaling_report(hamr_vi, HALF, measured_pairs(hamr_vi, hamr_jr))}
    assert rows['body_mass'].factor_experimental == pytest.approx(0.32 / 1.41)
    assert rows['vertical_stiffness'].factor_experimental == pytest.approx(32.42 / 9.21)
    assert rows['lift_resonance'].factor_experimental == pytest.approx(237.3 / 81.3)
    assert rows['quasi_static_stride_length'].factor_experimental == pytest.approx(1.9 / 8.4)


def test_report_to_frame_columns(hamr_vi):
    frame = report_to_frame(scaling_report(hamr_vi, HALF))
    assert list(frame.columns) == ['quantity', 'base', 'scaled', 'factor_theoretical',
                                   'factor_experimental', 'unit']
    assert len(frame) == len(BASE_VALUES)


def test_predicted_half_scale_resonances():
    rf = resonance_factor(stiffness_factor(HALF), mass_factor(HALF))
    assert 81.3 * rf == pytest.approx(344.9, abs=1.0)
    assert 103.0 * rf == pytest.approx(437.0, abs=1.0)
