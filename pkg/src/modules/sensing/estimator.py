import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.signal import bilinear, lfilter

from src.core.base_module import ValidatedSpec
from src.core.exceptions import DomainError
from src.modules.sensing.electrical import ElectricalModel

MODULE = "SENSING"
UNIFORM_STEP_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class SenseRecord(ValidatedSpec):
    """Uniformly sampled drive voltage (V) and current (A) of one channel"""
    time: np.ndarray
    voltage: np.ndarray
    current: np.ndarray
    channel: str = ""

    module_name = MODULE

    def __post_init__(self):
        for name in ('time', 'voltage', 'current'):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        n = len(self.time)
        if self.time.ndim != 1 or n < 2:
            errors.append("time must be 1-D with at least two samples")
            return False, errors
        if self.voltage.shape != self.time.shape or self.current.shape != self.time.shape:
            errors.append(
                f"voltage {self.voltage.shape} and current {self.current.shape} must match time {self.time.shape}"
            )
        steps = np.diff(self.time)
        if np.any(steps <= 0):
            errors.append("time must be strictly increasing")
        elif np.max(np.abs(steps - steps[0])) > UNIFORM_STEP_TOLERANCE * steps[0]:
            errors.append("time step must be uniform")
        return len(errors) == 0, errors

    @property
    def dt(self) -> float:
        return float((self.time[-1] - self.time[0]) / (len(self.time) - 1))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'t_s': self.time, 'v_volts': self.voltage, 'i_amps': self.current})


def estimate_velocity(e: ElectricalModel, rec: SenseRecord) -> np.ndarray:
    """
    Actuator tip velocity recovered from the motional current

    qdot = (i - C*dV/dt - V/R) / Gamma, with dV/dt by the same central
    differences used to synthesize currents.

    Returns:
        Velocity series (mm/s)
    """
    if not e.coupling_gain > 0:
        raise DomainError(MODULE, "coupling gain must be positive to recover velocity")
    dv_dt = np.gradient(rec.voltage, rec.dt)
    motional = rec.current - e.capacitance_f * dv_dt - rec.voltage / e.resistance_ohm
    return motional / e.coupling_a_per_mm_s


def default_corner(drive_frequency: float) -> float:
    """High-pass corner of the position estimator: drive frequency / 16 (Hz)"""
    return drive_frequency / 16.0


def estimate_position(velocity, dt: float, corner: float, transmission_ratio: float = 1.0,
                      drive_frequency: Optional[float] = None) -> np.ndarray:
    """
    Leaky integration of a velocity series

    The integrator 1/(s + 2*pi*corner) is discretized with the bilinear
    transform; corner = 0 gives trapezoidal integration.

    Args:
        velocity: Velocity series (mm/s)
        dt: Sample step (s)
        corner: High-pass corner (Hz), below drive_frequency/2 when that is given
        transmission_ratio: Scale from actuator to foot coordinates
        drive_frequency: Drive frequency used to check the corner (Hz)

    Returns:
        Position series (mm), scaled by transmission_ratio
    """
    velocity = np.asarray(velocity, dtype=float)
    if not dt > 0:
        raise DomainError(MODULE, f"sample step must be positive, got {dt}")
    if corner < 0:
        raise DomainError(MODULE, f"corner must be non-negative, got {corner}")
    if drive_frequency is not None and not corner < drive_frequency / 2:
        raise DomainError(
            MODULE, f"corner {corner} Hz must lie below half the drive frequency ({drive_frequency} Hz)"
        )

    b, a = bilinear([1.0], [1.0, 2 * math.pi * corner], fs=1.0 / dt)
    return transmission_ratio * lfilter(b, a, velocity)
