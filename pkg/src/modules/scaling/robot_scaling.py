from dataclasses import replace

from loguru import logger

from src.core.exceptions import DomainError
from src.modules.dynamics.robot import LegSpec, RobotSpec
from src.modules.scaling.allometry import (
    StiffnessMode,
    deflection_factor,
    mass_factor,
    scale_actuator,
    scale_chassis,
    scale_flexure,
    stiffness_factor,
)
from src.modules.scaling.specs import AllometricTransform
from src.modules.transmission.model import reflected_flexure_stiffness

MODULE = "SCALING"


def robot_stiffness_factor(robot: RobotSpec, t: AllometricTransform,
                           mode: StiffnessMode = StiffnessMode.COMPONENT_SUM,
                           scale_flexure_length: bool = False) -> float:
    """Transmission stiffness factor, using the robot's components in component-sum mode"""
    if mode is StiffnessMode.FACTOR_SUM:
        return stiffness_factor(t, mode, scale_length=scale_flexure_length)
    if robot.actuator is None or not robot.flexures or robot.geometry is None:
        raise DomainError(
            MODULE, f"robot '{robot.name}' lacks actuator/flexure components for component-sum scaling"
        )
    k_flex = reflected_flexure_stiffness(robot.flexures, robot.geometry)
    return stiffness_factor(t, mode, robot.actuator.stiffness, k_flex, scale_flexure_length)


def scale_robot(robot: RobotSpec, t: AllometricTransform,
                mode: StiffnessMode = StiffnessMode.COMPONENT_SUM,
                scale_flexure_length: bool = False) -> RobotSpec:
    """
    Apply an allometric transform to a complete robot

    Lengths along the body follow s_length and lateral positions s_width;
    the chassis clearance above rest length is a lift excursion and follows
    the deflection factor.
    Transmission stiffness follows the selected stiffness mode (by default
    the robot's own actuator and flexure stiffnesses, so the identity
    transform returns an equivalent robot), effective
    masses the mass factor and gains the deflection factor; quality factors,
    transmission ratios and flexure moment arms are kept. Measured
    characteristics do not carry over.

    Args:
        robot: Base robot
        t: Transform
        mode: Stiffness composition
        scale_flexure_length: Let flexure length follow s_length

    Returns:
        Scaled RobotSpec
    """
    sf = robot_stiffness_factor(robot, t, mode, scale_flexure_length)
    mf = mass_factor(t)
    df = deflection_factor(t)
    sl, sw = t.s_length, t.s_width
    logger.debug(f"Scaling {robot.name}: stiffness x{sf:.4g}, mass x{mf:.4g}, deflection x{df:.4g}")

    legs = []
    for leg in robot.legs:
        lift = leg.lift.scaled(sf, mf, df)
        swing = leg.swing.scaled(sf, mf, df)
        # coupling follows the blocked force k*gain/ratio
        electrical_factors = (sl * sw, 1.0 / (sl * sw), sf * df)
        legs.append(LegSpec(
            leg=leg.leg,
            lift=lift,
            swing=swing,
            stiffness_curve=leg.stiffness_curve.scaled(sl, sf),
            hip_x=leg.hip_x * sl,
            hip_y=leg.hip_y * sw,
            hip_z=leg.hip_z * sl,
            lift_electrical=leg.lift_electrical.scaled(*electrical_factors) if leg.lift_electrical else None,
            swing_electrical=leg.swing_electrical.scaled(*electrical_factors) if leg.swing_electrical else None,
        ))

    return replace(
        robot,
        name=f"{robot.name}-scaled",
        body=scale_chassis(robot.body, t),
        legs=tuple(legs),
        rest_length=robot.rest_length * sl,
        # the belly offset above rest length is a lift excursion
        belly_height=robot.rest_length * sl + (robot.belly_height - robot.rest_length) * df,
        payload=robot.payload * mf,
        actuator=scale_actuator(robot.actuator, t) if robot.actuator else None,
        flexures=tuple(scale_flexure(f, t, scale_flexure_length) for f in robot.flexures),
        reference_vertical_stiffness=(robot.reference_vertical_stiffness * sf
                                      if robot.reference_vertical_stiffness else None),
        leg_length=robot.leg_length * sl if robot.leg_length else None,
        characteristics={},
    )
