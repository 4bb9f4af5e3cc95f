from pathlib import Path
from typing import Dict, List, Mapping

import yaml
from loguru import logger

from src.core.exceptions import ValidationException
from src.modules.dynamics.robot import ChassisContact, LegSpec, RobotSpec
from src.modules.gait.phase_table import Leg
from src.modules.scaling.specs import ActuatorSpec, BodyPlan, FlexureSpec
from src.modules.sensing.electrical import ElectricalModel
from src.modules.transmission.model import DofKind, TransmissionGeometry, TransmissionModel
from src.modules.transmission.stiffness import VerticalStiffnessCurve

MODULE = "PRESETS"
PRESET_DIR = Path(__file__).parent

# scalar RobotSpec fields a config may override on top of a preset
OVERRIDABLE_FIELDS = ('mu', 'payload', 'rest_length', 'belly_height', 'contact_damping_ratio',
                      'serial_compliance', 'leg_length', 'reference_vertical_stiffness')


def _preset_path(name: str) -> Path:
    return PRESET_DIR / f"{name.strip().lower().replace('-', '_')}.yaml"


def list_presets() -> List[str]:
    """Names of the shipped presets"""
    return sorted(path.stem.replace('_', '-') for path in PRESET_DIR.glob('*.yaml'))


def preset_text(name: str) -> str:
    """Raw YAML of a preset, provenance comments included"""
    path = _preset_path(name)
    if not path.exists():
        raise KeyError(f"unknown preset '{name}' (available: {', '.join(list_presets())})")
    return path.read_text(encoding='utf-8')


def preset_data(name: str) -> Dict:
    return yaml.safe_load(preset_text(name))


def _transmission(kind: DofKind, section: Mapping, rated_voltage: float) -> TransmissionModel:
    return TransmissionModel.from_resonance(
        kind,
        k_total=float(section['k_total']),
        resonance=float(section['resonance']),
        quality_factor=float(section['quality_factor']),
        transmission_ratio=float(section['transmission_ratio']),
        quasi_static_gain=float(section['quasi_static_gain']),
        rated_voltage=rated_voltage,
    )


def robot_from_dict(data: Mapping) -> RobotSpec:
    """
    Build a RobotSpec from preset-shaped data

    All four legs share the lift/swing models and stiffness curve; the
    electrical models take capacitance and resistance from the actuator
    section.

    Args:
        data: Mapping with the sections of a preset file

    Returns:
        Validated RobotSpec

    Raises:
        ValidationException: missing sections or invalid values
    """
    try:
        actuator_section = dict(data['actuator'])
        if 'stiffness' in actuator_section:
            actuator = ActuatorSpec(**actuator_section)
        else:
            actuator = ActuatorSpec.from_force_deflection(**actuator_section)
        flexure_rows = [dict(row) for row in data.get('flexures', [])]
        arms = [row.pop('moment_arm') for row in flexure_rows]
        flexures = tuple(FlexureSpec(**row) for row in flexure_rows)

        rated = actuator.rated_voltage
        lift = _transmission(DofKind.LIFT, data['lift'], rated)
        swing = _transmission(DofKind.SWING, data['swing'], rated)
        curve = VerticalStiffnessCurve(**data['stiffness_curve'])

        efficiency = float(data.get('electrical', {}).get('coupling_efficiency', 0.25))
        lift_electrical = ElectricalModel.from_transmission(
            lift, actuator.capacitance, actuator.resistance, efficiency)
        swing_electrical = ElectricalModel.from_transmission(
            swing, actuator.capacitance, actuator.resistance, efficiency)

        legs = []
        for leg in Leg:
            hip_x, hip_y, hip_z = (float(v) for v in data['hips'][leg.value])
            legs.append(LegSpec(leg, lift, swing, curve, hip_x, hip_y, hip_z,
                                lift_electrical, swing_electrical))

        optional = {key: data[key] for key in OVERRIDABLE_FIELDS if data.get(key) is not None}
        return RobotSpec(
            name=str(data['name']),
            body=BodyPlan(**data['body']),
            legs=tuple(legs),
            chassis=ChassisContact(**data.get('chassis', {})),
            actuator=actuator,
            flexures=flexures,
            geometry=TransmissionGeometry(tuple(arms)) if arms else None,
            characteristics=dict(data.get('characteristics', {})),
            **optional,
        )
    except KeyError as e:
        raise ValidationException(MODULE, f"robot definition is missing {e}")
    except TypeError as e:
        raise ValidationException(MODULE, f"robot definition has unexpected fields: {e}")


def load_preset(name: str, **overrides) -> RobotSpec:
    """
    Load a shipped robot preset

    Args:
        name: "hamr-vi" or "hamr-jr"
        **overrides: Scalar fields replacing the preset's values

    Returns:
        RobotSpec
    """
    data = preset_data(name)
    unknown = sorted(set(overrides) - set(OVERRIDABLE_FIELDS))
    if unknown:
        raise ValidationException(MODULE, f"cannot override {unknown} (allowed: {list(OVERRIDABLE_FIELDS)})")
    data.update({key: value for key, value in overrides.items() if value is not None})
    robot = robot_from_dict(data)
    logger.debug(f"Loaded preset {robot.name} (overrides: {overrides or 'none'})")
    return robot
