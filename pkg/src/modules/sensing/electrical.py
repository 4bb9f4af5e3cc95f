from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from src.core.base_module import ValidatedSpec
from src.core.exceptions import DomainError
from src.core.validators import require_positive
from src.modules.transmission.model import TransmissionModel

MODULE = "SENSING"


@dataclass(frozen=True)
class ElectricalModel(ValidatedSpec):
    """Capacitive, resistive and motional current terms of one actuator"""
    capacitance: float          # nF
    resistance: float           # MOhm
    coupling_gain: float        # uA per mm/s of actuator tip velocity

    module_name = MODULE

    def __post_init__(self):
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        require_positive(errors, "capacitance", self.capacitance)
        require_positive(errors, "resistance", self.resistance)
        require_positive(errors, "coupling_gain", self.coupling_gain)
        return len(errors) == 0, errors

    @classmethod
    def from_transmission(cls, model: TransmissionModel, capacitance: float, resistance: float,
                          coupling_efficiency: float = 0.25) -> "ElectricalModel":
        """
        Derive the motional coupling from the mechanical model

        The electromechanical coupling of a lumped actuator is F_b/V_rated
        (N/V, equal to A*s/m); coupling_efficiency scales it to the fraction
        seen at the drive terminals.
        """
        if not coupling_efficiency > 0:
            raise DomainError(MODULE, f"coupling efficiency must be positive, got {coupling_efficiency}")
        # N/V -> A per m/s -> uA per mm/s
        gain = coupling_efficiency * model.blocked_force / model.rated_voltage * 1e3
        return cls(capacitance, resistance, gain)

    @property
    def capacitance_f(self) -> float:
        return self.capacitance * 1e-9

    @property
    def resistance_ohm(self) -> float:
        return self.resistance * 1e6

    @property
    def coupling_a_per_mm_s(self) -> float:
        return self.coupling_gain * 1e-6

    def scaled(self, capacitance_factor: float, resistance_factor: float,
               coupling_factor: float) -> "ElectricalModel":
        return ElectricalModel(
            self.capacitance * capacitance_factor,
            self.resistance * resistance_factor,
            self.coupling_gain * coupling_factor,
        )


def _require_aligned(voltage: np.ndarray, velocity: np.ndarray):
    if voltage.shape != velocity.shape:
        raise DomainError(
            MODULE, f"voltage {voltage.shape} and velocity {velocity.shape} series must be aligned"
        )
    if voltage.ndim != 1 or len(voltage) < 2:
        raise DomainError(MODULE, "series must be 1-D with at least two samples")


def piezo_current(e: ElectricalModel, voltage, velocity, dt: float) -> np.ndarray:
    """
    Drive current of a piezoelectric actuator

    i = C*dV/dt + V/R + Gamma*qdot, with dV/dt from central differences
    (one-sided at the ends).

    Args:
        e: Electrical model
        voltage: Drive voltage series (V)
        velocity: Actuator tip velocity series (mm/s)
        dt: Uniform sample step (s)

    Returns:
        Current series (A)
    """
    voltage = np.asarray(voltage, dtype=float)
    velocity = np.asarray(velocity, dtype=float)
    _require_aligned(voltage, velocity)
    if not dt > 0:
        raise DomainError(MODULE, f"sample step must be positive, got {dt}")

    dv_dt = np.gradient(voltage, dt)
    return (e.capacitance_f * dv_dt
            + voltage / e.resistance_ohm
            + e.coupling_a_per_mm_s * velocity)
