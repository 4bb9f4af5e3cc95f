from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.core.base_module import ValidatedSpec
from src.core.exceptions import DomainError
from src.core.validators import relative_close, require_positive

MODULE = "METRICS"


def relative_leg_stiffness(k: float, leg_length: float, mass: float, gravity: float = 9.81) -> float:
    """
    Dimensionless leg stiffness k*l/(m*g)

    Args:
        k: Vertical leg stiffness (N/m)
        leg_length: mm
        mass: g
        gravity: m/s^2
    """
    errors = []
    for name, value in (("k", k), ("leg_length", leg_length), ("mass", mass), ("gravity", gravity)):
        require_positive(errors, name, value)
    if errors:
        raise DomainError(MODULE, f"relative leg stiffness needs positive inputs: {errors}")
    # mm over g leaves the ratio unchanged
    return k * leg_length / (mass * gravity)


@dataclass(frozen=True)
class LegStiffnessReport(ValidatedSpec):
    vertical_stiffness: float       # N/m
    leg_length: float               # mm
    mass: float                     # g
    gravity: float                  # m/s^2
    k_rel: float

    module_name = MODULE

    def __post_init__(self):
        self.ensure_valid()

    @classmethod
    def compute(cls, vertical_stiffness: float, leg_length: float, mass: float,
                gravity: float = 9.81) -> "LegStiffnessReport":
        k_rel = relative_leg_stiffness(vertical_stiffness, leg_length, mass, gravity)
        return cls(vertical_stiffness, leg_length, mass, gravity, k_rel)

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        for name in ("vertical_stiffness", "leg_length", "mass", "gravity", "k_rel"):
            require_positive(errors, name, getattr(self, name))
        if not errors:
            expected = self.vertical_stiffness * self.leg_length / (self.mass * self.gravity)
            if not relative_close(self.k_rel, expected, 1e-9):
                errors.append(f"k_rel {self.k_rel} does not match k*l/(m*g) = {expected}")
        return len(errors) == 0, errors


def leg_stiffness_report(robot, gravity: float = 9.81,
                         leg_length: Optional[float] = None) -> LegStiffnessReport:
    """
    Relative leg stiffness of a robot from its reference vertical stiffness

    Falls back to the lowest-stiffness end of the curve when the robot has
    no reference value.
    """
    stiffness = robot.reference_vertical_stiffness or robot.stiffness_curve.k_at_highest
    length = leg_length or robot.leg_length
    if length is None:
        raise DomainError(MODULE, f"robot '{robot.name}' has no leg_length for relative stiffness")
    return LegStiffnessReport.compute(stiffness, length, robot.body.body_mass, gravity)
