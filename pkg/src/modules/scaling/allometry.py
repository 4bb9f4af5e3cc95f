import math
from dataclasses import replace
from enum import Enum
from typing import Optional

from src.core.exceptions import DomainError
from src.modules.scaling.specs import ActuatorSpec, AllometricTransform, BodyPlan, FlexureSpec

MODULE = "SCALING"


class StiffnessMode(Enum):
    """How the transmission stiffness factor is composed"""
    FACTOR_SUM = "factor_sum"           # actuator factor + flexure factor
    COMPONENT_SUM = "component_sum"     # (a*k_act + b*k_flex) / (k_act + k_flex)


# ==================== ELEMENTARY FACTORS ====================

def mass_factor(t: AllometricTransform) -> float:
    """Volume-proportional mass factor"""
    return t.s_length * t.s_width * t.s_thickness


def deflection_factor(t: AllometricTransform) -> float:
    """Actuator free-deflection factor (d grows with length squared)"""
    return t.s_length ** 2


def force_factor(t: AllometricTransform) -> float:
    return t.s_width / t.s_length


def actuator_stiffness_factor(t: AllometricTransform) -> float:
    return t.s_width / t.s_length ** 3


def flexure_stiffness_factor(t: AllometricTransform, scale_length: bool = False) -> float:
    """
    Flexure bending stiffness factor, proportional to w*t^3/l

    Args:
        t: Transform
        scale_length: Whether flexure length follows s_length (held fixed by default)
    """
    factor = t.s_width * t.s_thickness ** 3
    if scale_length:
        factor /= t.s_length
    return factor


# ==================== COMPONENT TRANSFORMS ====================

def scale_chassis(plan: BodyPlan, t: AllometricTransform) -> BodyPlan:
    """Scale body length, width, thickness and (volume-proportional) mass"""
    return BodyPlan(
        body_length=t.s_length * plan.body_length,
        body_width=t.s_width * plan.body_width,
        body_mass=mass_factor(t) * plan.body_mass,
        chassis_thickness=t.s_thickness * plan.chassis_thickness,
    )


def scale_actuator(a: ActuatorSpec, t: AllometricTransform) -> ActuatorSpec:
    """
    Scale a bending actuator

    Deflection follows l^2, force w/l, stiffness w/l^3, capacitance l*w and
    resistance 1/(l*w). Rated voltage does not change.
    """
    area = t.s_length * t.s_width
    return ActuatorSpec(
        length=t.s_length * a.length,
        width=t.s_width * a.width,
        free_deflection=deflection_factor(t) * a.free_deflection,
        blocked_force=force_factor(t) * a.blocked_force,
        stiffness=actuator_stiffness_factor(t) * a.stiffness,
        capacitance=area * a.capacitance,
        resistance=a.resistance / area,
        rated_voltage=a.rated_voltage,
    )


def scale_flexure(f: FlexureSpec, t: AllometricTransform, scale_length: bool = False) -> FlexureSpec:
    """
    Scale a flexure joint

    By default length and range of motion stay fixed, so stiffness changes
    with w*t^3 only. With scale_length the length follows s_length, the
    stiffness gains 1/s_length and max_angle is multiplied by s_length as
    well, the range of motion growing with the flexure.
    """
    length_factor = t.s_length if scale_length else 1.0
    return replace(
        f,
        length=length_factor * f.length,
        width=t.s_width * f.width,
        thickness=t.s_thickness * f.thickness,
        max_angle=length_factor * f.max_angle,
        stiffness=flexure_stiffness_factor(t, scale_length) * f.stiffness,
    )


# ==================== COMPOSED FACTORS ====================

def total_stiffness_factor(t: AllometricTransform, scale_length: bool = False) -> float:
    """Sum of the actuator and flexure stiffness factors (4 + 0.5 for the half transform)"""
    return actuator_stiffness_factor(t) + flexure_stiffness_factor(t, scale_length)


def component_sum_stiffness(t: AllometricTransform, k_act: float, k_flex: float,
                            scale_length: bool = False) -> float:
    """Scaled parallel stiffness k_act' + k_flex' from the base components (N/m)"""
    return (actuator_stiffness_factor(t) * k_act
            + flexure_stiffness_factor(t, scale_length) * k_flex)


def stiffness_factor(t: AllometricTransform, mode: StiffnessMode = StiffnessMode.FACTOR_SUM,
                     k_act: Optional[float] = None, k_flex: Optional[float] = None,
                     scale_length: bool = False) -> float:
    """
    Transmission stiffness factor in the requested mode

    Args:
        t: Transform
        mode: FACTOR_SUM or COMPONENT_SUM
        k_act: Base actuator stiffness, required for COMPONENT_SUM
        k_flex: Base reflected flexure stiffness, required for COMPONENT_SUM
        scale_length: Whether flexure length follows s_length

    Returns:
        Ratio of scaled to base transmission stiffness
    """
    if mode is StiffnessMode.FACTOR_SUM:
        return total_stiffness_factor(t, scale_length)

    if k_act is None or k_flex is None:
        raise DomainError(MODULE, "component-sum mode needs k_act and k_flex")
    if k_act < 0 or k_flex < 0 or k_act + k_flex <= 0:
        raise DomainError(MODULE, f"component stiffnesses must be non-negative with a positive sum, "
                                  f"got k_act={k_act}, k_flex={k_flex}")
    return component_sum_stiffness(t, k_act, k_flex, scale_length) / (k_act + k_flex)


def resonance_factor(stiffness_factor: float, mass_factor: float) -> float:
    """Natural-frequency factor sqrt(stiffness/mass)"""
    if not stiffness_factor > 0 or not mass_factor > 0:
        raise DomainError(
            MODULE,
            f"resonance factor needs positive inputs, got stiffness={stiffness_factor}, "
            f"mass={mass_factor}"
        )
    return math.sqrt(stiffness_factor / mass_factor)


def speed_factor(deflection_factor: float, resonance_factor: float,
                 s_length: Optional[float] = None) -> float:
    """
    Running-speed factor v ~ d * omega

    Args:
        deflection_factor: Stride (actuator deflection) factor
        resonance_factor: Natural-frequency factor
        s_length: When given, the result is normalized to body lengths per second

    Returns:
        Absolute speed factor, or the body-length-normalized factor
    """
    if not deflection_factor > 0 or not resonance_factor > 0:
        raise DomainError(
            MODULE,
            f"speed factor needs positive inputs, got deflection={deflection_factor}, "
            f"resonance={resonance_factor}"
        )
    factor = deflection_factor * resonance_factor
    if s_length is not None:
        if not s_length > 0:
            raise DomainError(MODULE, f"s_length must be positive, got {s_length}")
        factor /= s_length
    return factor


def compose(t1: AllometricTransform, t2: AllometricTransform) -> AllometricTransform:
    """Element-wise product transform (t1 applied first)"""
    return t1.compose(t2)
