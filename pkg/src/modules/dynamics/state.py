import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.core.base_module import ValidatedSpec
from src.core.exceptions import DomainError
from src.core.validators import require_non_negative, require_positive

MODULE = "DYNAMICS"

DEFAULT_MAX_TIMESTEP = 10e-6        # s
STEPS_PER_DRIVE_PERIOD = 200
MIN_STEPS_PER_PERIOD = 50
DEFAULT_SAMPLES_PER_PERIOD = 100
DEFAULT_MAX_SAMPLE_PERIOD = 1e-4    # s


@dataclass(frozen=True)
class BodyState(ValidatedSpec):
    """Sagittal body state: position (mm), pitch (rad, nose-up positive) and rates"""
    x: float
    z: float
    pitch: float
    x_dot: float
    z_dot: float
    pitch_rate: float

    module_name = MODULE

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = [
            f"{name} is not finite ({value})"
            for name, value in self.named_values()
            if not math.isfinite(value)
        ]
        return len(errors) == 0, errors

    def named_values(self):
        return (('x', self.x), ('z', self.z), ('pitch', self.pitch), ('x_dot', self.x_dot),
                ('z_dot', self.z_dot), ('pitch_rate', self.pitch_rate))


@dataclass(frozen=True)
class SimConfig(ValidatedSpec):
    """
    Fixed-step integration settings

    When cycles is set the run length follows the drive frequency:
    settle_time plus a whole number of cycles covering at least
    max(cycles, min_window * f) periods. Otherwise duration applies.
    """
    timestep: Optional[float] = None            # s, default min(10 us, 1/(200 f))
    duration: float = 1.0                       # s
    gravity: float = 9.81                       # m/s^2
    initial_height: Optional[float] = None      # mm
    settle_time: float = 0.2                    # s
    sample_period: Optional[float] = None       # s
    cycles: Optional[int] = None
    min_window: float = 0.25                    # s
    seed: int = 0
    initial_jitter: float = 0.0                 # mm
    randomize_phase: bool = False
    regularization_velocity: float = 0.1        # mm/s

    module_name = MODULE

    def __post_init__(self):
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        if self.timestep is not None:
            require_positive(errors, "timestep", self.timestep)
        require_positive(errors, "duration", self.duration)
        require_positive(errors, "gravity", self.gravity)
        require_non_negative(errors, "settle_time", self.settle_time)
        if not errors and self.cycles is None and not self.duration > self.settle_time:
            errors.append(f"duration ({self.duration}) must exceed settle_time ({self.settle_time})")
        if self.initial_height is not None:
            require_positive(errors, "initial_height", self.initial_height)
        if self.sample_period is not None:
            require_positive(errors, "sample_period", self.sample_period)
        if self.cycles is not None and (not isinstance(self.cycles, int) or self.cycles < 1):
            errors.append(f"cycles must be a positive integer, got {self.cycles!r}")
        require_non_negative(errors, "min_window", self.min_window)
        require_non_negative(errors, "initial_jitter", self.initial_jitter)
        require_positive(errors, "regularization_velocity", self.regularization_velocity)
        return len(errors) == 0, errors

    def resolve_timestep(self, drive_frequency: float, max_natural_frequency: float) -> float:
        """
        Integrator step for a run

        Raises:
            DomainError: an explicit timestep coarser than 1/(50*max(f_drive, f_n))
        """
        limit = 1.0 / (MIN_STEPS_PER_PERIOD * max(drive_frequency, max_natural_frequency))
        if self.timestep is not None:
            if self.timestep > limit * (1 + 1e-12):
                raise DomainError(
                    MODULE,
                    f"timestep {self.timestep:.3g} s exceeds the stability limit {limit:.3g} s "
                    f"(drive {drive_frequency} Hz, resonance {max_natural_frequency:.1f} Hz)"
                )
            return self.timestep
        return min(DEFAULT_MAX_TIMESTEP, 1.0 / (STEPS_PER_DRIVE_PERIOD * drive_frequency), limit)

    def sample_every(self, timestep: float, drive_frequency: float) -> int:
        """Integrator steps per recorded sample (>= 1)"""
        if self.sample_period is not None:
            period = self.sample_period
        else:
            period = min(DEFAULT_MAX_SAMPLE_PERIOD, 1.0 / (DEFAULT_SAMPLES_PER_PERIOD * drive_frequency))
        return max(1, int(round(period / timestep)))

    def run_duration(self, drive_frequency: float) -> float:
        """Total simulated time (s)"""
        if self.cycles is None:
            return self.duration
        window_cycles = max(self.cycles, math.ceil(self.min_window * drive_frequency))
        return self.settle_time + window_cycles / drive_frequency
