from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from src.core.base_module import ValidatedSpec
from src.core.exceptions import DomainError
from src.core.validators import require_positive

MODULE = "TRANSMISSION"


@dataclass(frozen=True)
class VerticalStiffnessCurve(ValidatedSpec):
    """
    Leg vertical stiffness as a function of leg height

    The leg is stiffest at its lowest position and softest at its highest.
    """
    leg_height_min: float       # mm
    leg_height_max: float       # mm
    k_at_lowest: float          # N/m
    k_at_highest: float         # N/m
    shape_exponent: float = 1.0

    module_name = MODULE

    def __post_init__(self):
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        require_positive(errors, "k_at_highest", self.k_at_highest)
        require_positive(errors, "shape_exponent", self.shape_exponent)
        if not self.k_at_lowest > self.k_at_highest:
            errors.append(
                f"k_at_lowest ({self.k_at_lowest}) must exceed k_at_highest ({self.k_at_highest})"
            )
        if not self.leg_height_max > self.leg_height_min:
            errors.append(
                f"leg_height_max ({self.leg_height_max}) must exceed "
                f"leg_height_min ({self.leg_height_min})"
            )
        return len(errors) == 0, errors

    def stiffness_clamped(self, leg_height: float) -> float:
        """Stiffness with the height clamped into the curve's range (N/m)"""
        span = self.leg_height_max - self.leg_height_min
        fraction = (leg_height - self.leg_height_min) / span
        if fraction <= 0.0:
            return self.k_at_lowest
        if fraction >= 1.0:
            return self.k_at_highest
        return self.k_at_lowest + (self.k_at_highest - self.k_at_lowest) * fraction ** self.shape_exponent

    def sample(self, n_points: int = 50) -> Tuple[np.ndarray, np.ndarray]:
        """Evenly spaced (heights mm, stiffness N/m) over the full range"""
        if n_points < 2:
            raise DomainError(MODULE, f"n_points must be >= 2, got {n_points}")
        heights = np.linspace(self.leg_height_min, self.leg_height_max, n_points)
        stiffness = np.array([self.stiffness_clamped(z) for z in heights])
        return heights, stiffness

    def scaled(self, length_factor: float, stiffness_factor: float) -> "VerticalStiffnessCurve":
        return VerticalStiffnessCurve(
            leg_height_min=self.leg_height_min * length_factor,
            leg_height_max=self.leg_height_max * length_factor,
            k_at_lowest=self.k_at_lowest * stiffness_factor,
            k_at_highest=self.k_at_highest * stiffness_factor,
            shape_exponent=self.shape_exponent,
        )


def vertical_leg_stiffness(curve: VerticalStiffnessCurve, leg_height: float) -> float:
    """
    Vertical leg stiffness at a leg height

    Args:
        curve: Stiffness curve
        leg_height: Height within [leg_height_min, leg_height_max] (mm)

    Returns:
        Stiffness (N/m)

    Raises:
        DomainError: height outside the curve's range
    """
    if not curve.leg_height_min <= leg_height <= curve.leg_height_max:
        raise DomainError(
            MODULE,
            f"leg height {leg_height} mm outside [{curve.leg_height_min}, {curve.leg_height_max}] mm"
        )
    return curve.stiffness_clamped(leg_height)
