from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Optional, Tuple

from src.core.base_module import ValidatedSpec
from src.core.validators import (
    require_distinct,
    require_in_range,
    require_non_negative,
    require_positive,
)
from src.modules.gait.phase_table import Leg
from src.modules.scaling.specs import ActuatorSpec, BodyPlan, FlexureSpec
from src.modules.sensing.electrical import ElectricalModel
from src.modules.transmission.model import DofKind, TransmissionGeometry, TransmissionModel
from src.modules.transmission.stiffness import VerticalStiffnessCurve

MODULE = "DYNAMICS"


@dataclass(frozen=True)
class LegSpec(ValidatedSpec):
    """One leg: lift and swing transmissions, stiffness curve, hip position (mm, body frame)"""
    leg: Leg
    lift: TransmissionModel
    swing: TransmissionModel
    stiffness_curve: VerticalStiffnessCurve
    hip_x: float
    hip_y: float
    hip_z: float = 0.0
    lift_electrical: Optional[ElectricalModel] = None
    swing_electrical: Optional[ElectricalModel] = None

    module_name = MODULE

    def __post_init__(self):
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        if self.lift.dof_kind is not DofKind.LIFT:
            errors.append(f"{self.leg.value}: lift transmission has dof_kind {self.lift.dof_kind.value}")
        if self.swing.dof_kind is not DofKind.SWING:
            errors.append(f"{self.leg.value}: swing transmission has dof_kind {self.swing.dof_kind.value}")
        return len(errors) == 0, errors

    @property
    def hip_position(self) -> Tuple[float, float, float]:
        return (self.hip_x, self.hip_y, self.hip_z)

    def electrical(self, kind: DofKind) -> Optional[ElectricalModel]:
        return self.lift_electrical if kind is DofKind.LIFT else self.swing_electrical


@dataclass(frozen=True)
class ChassisContact(ValidatedSpec):
    """Compliant support under the chassis, one point under each hip row"""
    stiffness: float = 2000.0       # N/m per support point
    damping_ratio: float = 1.0
    friction: float = 0.2

    module_name = MODULE

    def __post_init__(self):
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        require_positive(errors, "stiffness", self.stiffness)
        require_non_negative(errors, "damping_ratio", self.damping_ratio)
        require_non_negative(errors, "friction", self.friction)
        return len(errors) == 0, errors


@dataclass(frozen=True)
class RobotSpec(ValidatedSpec):
    """
    Complete description of a simulated robot

    Legs must be listed once each. Component-level fields (actuator,
    flexures, geometry) are optional and only needed for scaling reports;
    characteristics holds measured reference values keyed by report
    quantity name.
    """
    name: str
    body: BodyPlan
    legs: Tuple[LegSpec, ...]
    rest_length: float                          # mm
    belly_height: float                         # mm, hip height at which the chassis touches down
    mu: float = 0.3
    payload: float = 0.0                        # g
    chassis: ChassisContact = field(default_factory=ChassisContact)
    contact_damping_ratio: float = 0.1
    serial_compliance: float = 1.0
    actuator: Optional[ActuatorSpec] = None
    flexures: Tuple[FlexureSpec, ...] = ()
    geometry: Optional[TransmissionGeometry] = None
    reference_vertical_stiffness: Optional[float] = None    # N/m
    leg_length: Optional[float] = None                      # mm
    characteristics: Mapping[str, float] = field(default_factory=dict)

    module_name = MODULE

    def __post_init__(self):
        object.__setattr__(self, 'legs', tuple(self.legs))
        object.__setattr__(self, 'flexures', tuple(self.flexures))
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        require_positive(errors, "mu", self.mu)
        require_positive(errors, "rest_length", self.rest_length)
        require_positive(errors, "belly_height", self.belly_height)
        require_non_negative(errors, "payload", self.payload)
        require_non_negative(errors, "contact_damping_ratio", self.contact_damping_ratio)
        require_in_range(errors, "serial_compliance", self.serial_compliance, 1.0, 100.0)

        if len(self.legs) != 4:
            errors.append(f"exactly four legs are required, got {len(self.legs)}")
        require_distinct(errors, "legs", [leg.leg for leg in self.legs])
        require_distinct(errors, "hip positions", [leg.hip_position for leg in self.legs])

        if self.geometry is not None and len(self.geometry.moment_arms) != len(self.flexures):
            errors.append(
                f"{len(self.flexures)} flexures need as many moment arms, "
                f"got {len(self.geometry.moment_arms)}"
            )
        if self.reference_vertical_stiffness is not None:
            require_positive(errors, "reference_vertical_stiffness", self.reference_vertical_stiffness)
        if self.leg_length is not None:
            require_positive(errors, "leg_length", self.leg_length)
        return len(errors) == 0, errors

    # ==================== DERIVED QUANTITIES ====================

    @property
    def total_mass(self) -> float:
        """Body plus payload (g)"""
        return self.body.body_mass + self.payload

    @property
    def total_mass_kg(self) -> float:
        return self.total_mass * 1e-3

    @property
    def pitch_inertia(self) -> float:
        """Slender-body pitch inertia of the chassis alone (kg*m^2)"""
        length_m = self.body.body_length * 1e-3
        return self.body.body_mass * 1e-3 * length_m ** 2 / 12.0

    @property
    def rated_voltage(self) -> float:
        return min(min(leg.lift.rated_voltage, leg.swing.rated_voltage) for leg in self.legs)

    @property
    def max_natural_frequency(self) -> float:
        return max(max(leg.lift.natural_frequency, leg.swing.natural_frequency) for leg in self.legs)

    @property
    def lift_model(self) -> TransmissionModel:
        """Lift transmission of the first leg (presets share one model across legs)"""
        return self.legs[0].lift

    @property
    def swing_model(self) -> TransmissionModel:
        return self.legs[0].swing

    @property
    def stiffness_curve(self) -> VerticalStiffnessCurve:
        return self.legs[0].stiffness_curve

    def leg(self, which: Leg) -> LegSpec:
        for spec in self.legs:
            if spec.leg is which:
                return spec
        raise KeyError(which)

    def legs_by_position(self) -> Dict[Leg, LegSpec]:
        return {spec.leg: spec for spec in self.legs}

    def with_payload(self, payload: float) -> "RobotSpec":
        return replace(self, payload=payload)
