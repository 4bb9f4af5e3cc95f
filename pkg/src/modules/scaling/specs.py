from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.core.base_module import ValidatedSpec
from src.core.exceptions import DomainError
from src.core.validators import relative_close, require_positive


# ==================== SCALING VALUE TYPES ====================

@dataclass(frozen=True)
class BodyPlan(ValidatedSpec):
    """Chassis dimensions and mass"""
    body_length: float          # mm
    body_width: float           # mm
    body_mass: float            # g
    chassis_thickness: float    # um

    module_name = "SCALING"

    def __post_init__(self):
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        require_positive(errors, "body_length", self.body_length)
        require_positive(errors, "body_width", self.body_width)
        require_positive(errors, "body_mass", self.body_mass)
        require_positive(errors, "chassis_thickness", self.chassis_thickness)
        return len(errors) == 0, errors


@dataclass(frozen=True)
class ActuatorSpec(ValidatedSpec):
    """
    Lumped linear piezoelectric bending actuator

    Stiffness must equal blocked force over free deflection, both at the
    rated voltage.
    """
    length: float               # mm
    width: float                # mm
    free_deflection: float      # um at rated voltage
    blocked_force: float        # mN at rated voltage
    stiffness: float            # N/m
    capacitance: float          # nF
    resistance: float           # MOhm
    rated_voltage: float = 200.0

    module_name = "SCALING"
    CONSISTENCY_TOLERANCE = 1e-9

    def __post_init__(self):
        self.ensure_valid()

    @classmethod
    def from_force_deflection(cls, length: float, width: float, free_deflection: float,
                              blocked_force: float, capacitance: float, resistance: float,
                              rated_voltage: float = 200.0) -> "ActuatorSpec":
        """Build an actuator whose stiffness follows from F/d"""
        stiffness = (blocked_force * 1e-3) / (free_deflection * 1e-6)
        return cls(length, width, free_deflection, blocked_force, stiffness,
                   capacitance, resistance, rated_voltage)

    @property
    def implied_stiffness(self) -> float:
        """Blocked force over free deflection (N/m)"""
        return (self.blocked_force * 1e-3) / (self.free_deflection * 1e-6)

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        for name in ("length", "width", "free_deflection", "blocked_force",
                     "stiffness", "capacitance", "resistance", "rated_voltage"):
            require_positive(errors, name, getattr(self, name))
        if not errors and not relative_close(self.stiffness, self.implied_stiffness,
                                             self.CONSISTENCY_TOLERANCE):
            errors.append(
                f"stiffness {self.stiffness} N/m inconsistent with blocked_force/"
                f"free_deflection = {self.implied_stiffness} N/m"
            )
        return len(errors) == 0, errors


@dataclass(frozen=True)
class FlexureSpec(ValidatedSpec):
    """Compliant flexure joint"""
    length: float               # um
    width: float                # um
    thickness: float            # um
    max_angle: float            # rad
    stiffness: float            # N*mm/rad

    module_name = "SCALING"

    def __post_init__(self):
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        for name in ("length", "width", "thickness", "max_angle", "stiffness"):
            require_positive(errors, name, getattr(self, name))
        return len(errors) == 0, errors


@dataclass(frozen=True)
class AllometricTransform(ValidatedSpec):
    """Independent scale factors for length, width and thickness"""
    s_length: float = 1.0
    s_width: float = 1.0
    s_thickness: float = 1.0

    module_name = "SCALING"

    def __post_init__(self):
        is_valid, errors = self.validate_data()
        if not is_valid:
            raise DomainError(self.module_name, f"invalid scale factors: {errors}")

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        require_positive(errors, "s_length", self.s_length)
        require_positive(errors, "s_width", self.s_width)
        require_positive(errors, "s_thickness", self.s_thickness)
        return len(errors) == 0, errors

    def compose(self, other: "AllometricTransform") -> "AllometricTransform":
        """Transform equivalent to applying self, then other"""
        return AllometricTransform(
            self.s_length * other.s_length,
            self.s_width * other.s_width,
            self.s_thickness * other.s_thickness,
        )

    @property
    def is_identity(self) -> bool:
        return self.s_length == 1.0 and self.s_width == 1.0 and self.s_thickness == 1.0


NAMED_TRANSFORMS: Dict[str, AllometricTransform] = {
    'identity': AllometricTransform(1.0, 1.0, 1.0),
    'half': AllometricTransform(0.5, 0.5, 1.0),
    # flexure layer twice as thick, nothing else changed
    'thick-flexure': AllometricTransform(1.0, 1.0, 2.0),
}
