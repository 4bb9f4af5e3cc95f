import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from typing import List, Sequence, Tuple

from src.core.base_module import ValidatedSpec
from src.core.exceptions import DomainError
from src.core.validators import require_positive
from src.modules.scaling.specs import ActuatorSpec, FlexureSpec

MODULE = "TRANSMISSION"


class DofKind(Enum):
    """Actuated degree of freedom of a leg"""
    LIFT = "lift"
    SWING = "swing"


@dataclass(frozen=True)
class TransmissionGeometry(ValidatedSpec):
    """Moment arm (mm) through which each flexure acts, one per flexure"""
    moment_arms: Tuple[float, ...]

    module_name = MODULE

    def __post_init__(self):
        object.__setattr__(self, 'moment_arms', tuple(self.moment_arms))
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        if len(self.moment_arms) == 0:
            errors.append("at least one moment arm is required")
        return len(errors) == 0, errors


@dataclass(frozen=True)
class TransmissionModel(ValidatedSpec):
    """
    Lumped second-order model of one leg DOF, referred to the actuator side

    Stiffness and effective mass live on the actuator side; the
    transmission ratio maps actuator displacement to leg displacement and
    quasi_static_gain is the leg displacement per volt (peak-to-peak).
    """
    dof_kind: DofKind
    k_total: float              # N/m
    effective_mass: float       # mg
    quality_factor: float
    transmission_ratio: float
    quasi_static_gain: float    # um/V at the leg
    rated_voltage: float = 200.0

    module_name = MODULE

    def __post_init__(self):
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        for name in ("k_total", "effective_mass", "quality_factor",
                     "transmission_ratio", "quasi_static_gain", "rated_voltage"):
            require_positive(errors, name, getattr(self, name))
        if not isinstance(self.dof_kind, DofKind):
            errors.append(f"dof_kind must be a DofKind, got {self.dof_kind!r}")
        return len(errors) == 0, errors

    @classmethod
    def from_resonance(cls, dof_kind: DofKind, k_total: float, resonance: float,
                       quality_factor: float, transmission_ratio: float,
                       quasi_static_gain: float, rated_voltage: float = 200.0) -> "TransmissionModel":
        """
        Back-solve the effective mass from a measured resonance

        Args:
            resonance: Measured natural frequency (Hz)

        Returns:
            Model whose natural frequency equals the measured one
        """
        if not resonance > 0:
            raise DomainError(MODULE, f"resonance must be positive, got {resonance}")
        effective_mass = k_total / (2 * math.pi * resonance) ** 2 * 1e6
        return cls(dof_kind, k_total, effective_mass, quality_factor,
                   transmission_ratio, quasi_static_gain, rated_voltage)

    @cached_property
    def effective_mass_kg(self) -> float:
        return self.effective_mass * 1e-6

    @cached_property
    def natural_frequency(self) -> float:
        """Hz"""
        return math.sqrt(self.k_total / self.effective_mass_kg) / (2 * math.pi)

    @cached_property
    def damping(self) -> float:
        """Viscous damping coefficient b = sqrt(k*m)/Q (N*s/m)"""
        return math.sqrt(self.k_total * self.effective_mass_kg) / self.quality_factor

    @cached_property
    def blocked_force(self) -> float:
        """Actuator-side drive force at rated voltage (N)"""
        return self.k_total * self.quasi_static_gain * 1e-6 * self.rated_voltage / self.transmission_ratio

    @cached_property
    def leg_stiffness(self) -> float:
        """Stiffness seen at the leg, k_total / ratio^2 (N/m)"""
        return self.k_total / self.transmission_ratio ** 2

    def drive_force(self, voltage: float) -> float:
        """Actuator-side force for a drive voltage (N)"""
        return self.blocked_force * voltage / self.rated_voltage

    def scaled(self, stiffness_factor: float, mass_factor: float,
               deflection_factor: float) -> "TransmissionModel":
        """Copy with scaled stiffness, mass and gain; Q and ratio unchanged"""
        return replace(
            self,
            k_total=self.k_total * stiffness_factor,
            effective_mass=self.effective_mass * mass_factor,
            quasi_static_gain=self.quasi_static_gain * deflection_factor,
        )


# ==================== OPERATIONS ====================

def reflected_flexure_stiffness(flexures: Sequence[FlexureSpec],
                                geometry: TransmissionGeometry) -> float:
    """Sum of flexure rotational stiffnesses reflected to the actuator (N/m)"""
    if len(flexures) == 0:
        raise DomainError(MODULE, "at least one flexure is required")
    if len(geometry.moment_arms) != len(flexures):
        raise DomainError(
            MODULE,
            f"{len(flexures)} flexures need {len(flexures)} moment arms, "
            f"got {len(geometry.moment_arms)}"
        )

    total = 0.0
    for idx, (flexure, arm) in enumerate(zip(flexures, geometry.moment_arms)):
        if arm == 0:
            raise DomainError(MODULE, f"moment arm {idx} is zero")
        # N*mm/rad over mm^2 gives N/mm
        total += flexure.stiffness / arm ** 2 * 1e3
    return total


def total_stiffness(actuator: ActuatorSpec, flexures: Sequence[FlexureSpec],
                    geometry: TransmissionGeometry) -> float:
    """
    Overall transmission stiffness

    Args:
        actuator: Actuator in parallel with the flexures
        flexures: Flexure joints of the transmission
        geometry: Moment arm of each flexure

    Returns:
        k_act plus the reflected flexure stiffnesses (N/m)
    """
    return actuator.stiffness + reflected_flexure_stiffness(flexures, geometry)


def natural_frequency(m: TransmissionModel) -> float:
    return m.natural_frequency


def quasi_static_leg_displacement(m: TransmissionModel, voltage: float) -> float:
    """Peak-to-peak leg displacement (mm) without dynamic amplification"""
    if not 0 <= voltage <= m.rated_voltage:
        raise DomainError(
            MODULE, f"voltage must lie in [0, {m.rated_voltage}] V, got {voltage}"
        )
    return m.quasi_static_gain * voltage * 1e-3
