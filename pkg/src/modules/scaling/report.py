from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Tuple

import pandas as pd
from loguru import logger

from src.core.base_module import ValidatedSpec
from src.core.validators import relative_close
from src.modules.dynamics.robot import RobotSpec
from src.modules.scaling.allometry import (
    StiffnessMode,
    deflection_factor,
    mass_factor,
    resonance_factor,
    speed_factor,
)
from src.modules.scaling.robot_scaling import robot_stiffness_factor
from src.modules.scaling.specs import AllometricTransform
from src.modules.transmission.model import quasi_static_leg_displacement

MODULE = "SCALING"


class MeasuredPair(NamedTuple):
    """Measured value of one quantity on the base and on the scaled robot"""
    base: Optional[float]
    scaled: Optional[float]


@dataclass(frozen=True)
class ScalingReport(ValidatedSpec):
    """One comparison row"""
    quantity: str
    base: float
    scaled: float
    factor_theoretical: float
    factor_experimental: Optional[float] = None
    unit: str = ""

    module_name = MODULE

    def __post_init__(self):
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        if self.base == 0:
            errors.append(f"{self.quantity}: base value must be non-zero")
        elif not relative_close(self.factor_theoretical, self.scaled / self.base, 1e-9):
            errors.append(
                f"{self.quantity}: theoretical factor {self.factor_theoretical} != "
                f"scaled/base {self.scaled / self.base}"
            )
        return len(errors) == 0, errors


def _characteristic(name: str) -> Callable[[RobotSpec], Optional[float]]:
    return lambda robot: robot.characteristics.get(name)


def _quasi_static_trot_stride(robot: RobotSpec) -> Optional[float]:
    recorded = robot.characteristics.get('quasi_static_stride_length')
    if recorded is not None:
        return recorded
    # two diagonal pairs each advance one swing excursion per cycle
    return 2.0 * quasi_static_leg_displacement(robot.swing_model, robot.swing_model.rated_voltage)


def _speed_bl(robot: RobotSpec) -> Optional[float]:
    recorded = robot.characteristics.get('speed_bl')
    if recorded is not None:
        return recorded
    speed = robot.characteristics.get('speed')
    return None if speed is None else speed / robot.body.body_length


# quantity -> (unit, how to read the base value from a robot)
BASE_VALUES: Dict[str, Tuple[str, Callable[[RobotSpec], Optional[float]]]] = {
    'body_length': ('mm', lambda r: r.body.body_length),
    'body_mass': ('g', lambda r: r.body.body_mass),
    'vertical_stiffness': ('N/m', lambda r: r.reference_vertical_stiffness
                           or r.characteristics.get('vertical_stiffness')),
    'lift_resonance': ('Hz', lambda r: r.lift_model.natural_frequency),
    'swing_resonance': ('Hz', lambda r: r.swing_model.natural_frequency),
    'stride_frequency': ('Hz', _characteristic('stride_frequency')),
    'quasi_static_stride_length': ('mm', _quasi_static_trot_stride),
    'stride_length': ('mm', _characteristic('stride_length')),
    'speed': ('mm/s', _characteristic('speed')),
    'speed_bl': ('BL/s', _speed_bl),
}


def theoretical_factors(base: RobotSpec, t: AllometricTransform,
                        mode: StiffnessMode = StiffnessMode.FACTOR_SUM,
                        scale_flexure_length: bool = False) -> Dict[str, float]:
    """Predicted factor for every report quantity"""
    mf = mass_factor(t)
    df = deflection_factor(t)
    sf = robot_stiffness_factor(base, t, mode, scale_flexure_length)
    rf = resonance_factor(sf, mf)
    return {
        'body_length': t.s_length,
        'body_mass': mf,
        'vertical_stiffness': sf,
        'lift_resonance': rf,
        'swing_resonance': rf,
        'stride_frequency': rf,
        'quasi_static_stride_length': df,
        'stride_length': df,
        'speed': speed_factor(df, rf),
        'speed_bl': speed_factor(df, rf, t.s_length),
    }


def measured_pairs(base: RobotSpec, scaled: RobotSpec) -> Dict[str, MeasuredPair]:
    """Pair the recorded characteristics of two robots by quantity name"""
    pairs = {}
    for quantity in BASE_VALUES:
        if quantity in base.characteristics or quantity in scaled.characteristics:
            pairs[quantity] = MeasuredPair(base.characteristics.get(quantity),
                                           scaled.characteristics.get(quantity))
    return pairs


def scaling_report(base: RobotSpec, t: AllometricTransform,
                   measured: Optional[Mapping[str, MeasuredPair]] = None,
                   mode: StiffnessMode = StiffnessMode.FACTOR_SUM,
                   scale_flexure_length: bool = False) -> List[ScalingReport]:
    """
    Predicted (and optionally measured) scaling of the key characteristics

    Rows whose base value the robot cannot provide are skipped with a
    warning; a measured pair with a missing side leaves that row's
    experimental factor empty.

    Args:
        base: Robot being scaled
        t: Transform
        measured: Measured values per quantity for the base and scaled robots
        mode: Stiffness composition
        scale_flexure_length: Let flexure length follow s_length

    Returns:
        Rows in a fixed quantity order
    """
    factors = theoretical_factors(base, t, mode, scale_flexure_length)
    measured = measured or {}

    rows = []
    for quantity, (unit, read) in BASE_VALUES.items():
        base_value = read(base)
        if base_value is None:
            logger.warning(f"{base.name} has no value for '{quantity}'; row omitted")
            continue

        factor = factors[quantity]
        experimental = None
        pair = measured.get(quantity)
        if pair is not None and pair.base and pair.scaled is not None:
            experimental = pair.scaled / pair.base
        elif pair is not None:
            logger.warning(f"Measured pair for '{quantity}' is incomplete; experimental factor omitted")

        rows.append(ScalingReport(quantity, base_value, base_value * factor, factor, experimental, unit))
    return rows


def report_to_frame(rows: List[ScalingReport]) -> pd.DataFrame:
    return pd.DataFrame({
        'quantity': [r.quantity for r in rows],
        'base': [r.base for r in rows],
        'scaled': [r.scaled for r in rows],
        'factor_theoretical': [r.factor_theoretical for r in rows],
        'factor_experimental': [r.factor_experimental for r in rows],
        'unit': [r.unit for r in rows],
    })
