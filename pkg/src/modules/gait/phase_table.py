import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

from src.core.base_module import ValidatedSpec
from src.core.exceptions import UnsupportedGaitError, ValidationException
from src.core.validators import require_in_range

MODULE = "GAIT"


class Leg(Enum):
    """Leg positions in body order"""
    FL = "FL"
    FR = "FR"
    RL = "RL"
    RR = "RR"


class Dof(Enum):
    LIFT = "lift"
    SWING = "swing"


# FL-lift, FL-swing, FR-lift, FR-swing, RL-lift, RL-swing, RR-lift, RR-swing
CHANNEL_ORDER: Tuple[Tuple[Leg, Dof], ...] = tuple(
    (leg, dof) for leg in Leg for dof in (Dof.LIFT, Dof.SWING)
)
CHANNEL_NAMES: Tuple[str, ...] = tuple(f"{leg.value}_{dof.value}" for leg, dof in CHANNEL_ORDER)

PHASE_TABLES: Dict[str, Dict[Leg, float]] = {
    'trot': {Leg.FL: 0.0, Leg.FR: 0.5, Leg.RL: 0.5, Leg.RR: 0.0},
    'pronk': {Leg.FL: 0.0, Leg.FR: 0.0, Leg.RL: 0.0, Leg.RR: 0.0},
    'bound': {Leg.FL: 0.0, Leg.FR: 0.0, Leg.RL: 0.5, Leg.RR: 0.5},
}


class Waveform(Enum):
    SINUSOID = "sinusoid"


def gait_phase_table(gait_name: str) -> Dict[Leg, float]:
    """
    Per-leg phase (fraction of a cycle) for a named gait

    Raises:
        UnsupportedGaitError: jump or any name without a footfall table
    """
    key = gait_name.strip().lower()
    if key not in PHASE_TABLES:
        supported = ", ".join(sorted(PHASE_TABLES))
        raise UnsupportedGaitError(MODULE, f"gait '{gait_name}' is not supported (use one of: {supported})")
    return dict(PHASE_TABLES[key])


@dataclass(frozen=True)
class GaitProgram(ValidatedSpec):
    """
    Open-loop drive program: leg phases plus a shared sinusoidal waveform

    Construction does not validate, so invalid programs can be inspected
    with validate_gait; simulation calls ensure_valid first.
    """
    gait_name: str
    phases: Mapping[Leg, float]
    frequency: float                    # Hz
    voltage: float = 200.0              # V, peak-to-peak of the unipolar drive
    lift_swing_phase_lead: float = 0.25
    waveform: Waveform = Waveform.SINUSOID
    rated_voltage: float = 200.0

    module_name = MODULE

    @classmethod
    def from_name(cls, gait_name: str, frequency: float, voltage: float = 200.0,
                  lift_swing_phase_lead: float = 0.25, rated_voltage: float = 200.0) -> "GaitProgram":
        return cls(gait_name.strip().lower(), gait_phase_table(gait_name), frequency, voltage,
                   lift_swing_phase_lead, Waveform.SINUSOID, rated_voltage)

    @classmethod
    def custom(cls, phases: Mapping, frequency: float, voltage: float = 200.0,
               lift_swing_phase_lead: float = 0.25, rated_voltage: float = 200.0) -> "GaitProgram":
        """Program from an explicit phase table keyed by Leg or leg name"""
        table = {}
        for key, phase in phases.items():
            try:
                leg = key if isinstance(key, Leg) else Leg(str(key).upper())
            except ValueError:
                raise ValidationException(MODULE, f"unknown leg '{key}' in phase table")
            table[leg] = float(phase)
        return cls('custom', table, frequency, voltage, lift_swing_phase_lead,
                   Waveform.SINUSOID, rated_voltage)

    def validate_data(self, rated_voltage: Optional[float] = None) -> Tuple[bool, List[str]]:
        errors = []
        rated = self.rated_voltage if rated_voltage is None else rated_voltage

        missing = [leg.value for leg in Leg if leg not in self.phases]
        if missing:
            errors.append(f"phase table is missing legs {missing}")
        for leg, phase in self.phases.items():
            name = leg.value if isinstance(leg, Leg) else str(leg)
            require_in_range(errors, f"phase[{name}]", phase, 0.0, 1.0, high_inclusive=False)

        if not isinstance(self.frequency, (int, float)) or not math.isfinite(self.frequency) \
                or self.frequency <= 0:
            errors.append(f"frequency must be positive, got {self.frequency!r}")
        require_in_range(errors, "voltage", self.voltage, 0.0, rated)
        require_in_range(errors, "lift_swing_phase_lead", self.lift_swing_phase_lead,
                         0.0, 1.0, high_inclusive=False)
        return len(errors) == 0, errors

    def with_frequency(self, frequency: float) -> "GaitProgram":
        return replace(self, frequency=frequency)

    def shifted(self, delta: float) -> "GaitProgram":
        """Every leg phase advanced by delta (wrapped into [0, 1))"""
        return replace(self, phases={leg: (phase + delta) % 1.0 for leg, phase in self.phases.items()})


def validate_gait(program: GaitProgram, rated_voltage: float) -> Tuple[bool, List[str]]:
    """
    Diagnose a gait program without raising

    Args:
        program: Program to check
        rated_voltage: Actuator rated voltage (V)

    Returns:
        (ok, violations)
    """
    return program.validate_data(rated_voltage)
