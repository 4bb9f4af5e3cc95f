import math
from typing import Dict, Tuple

import numpy as np

from src.modules.gait.phase_table import CHANNEL_ORDER, Dof, GaitProgram, Leg

TWO_PI = 2 * math.pi


def channel_offsets(program: GaitProgram) -> np.ndarray:
    """Phase offset (rad) of each of the 8 channels in CHANNEL_ORDER"""
    lift_lead = TWO_PI * program.lift_swing_phase_lead
    return np.array([
        TWO_PI * program.phases[leg] + (lift_lead if dof is Dof.LIFT else 0.0)
        for leg, dof in CHANNEL_ORDER
    ])


def synthesize_drive(program: GaitProgram, t: float) -> np.ndarray:
    """
    Voltages of the 8 drive channels at time t

    Each channel is V/2 * (1 + sin(2*pi*f*t + 2*pi*phase_leg + offset_dof)),
    lift leading swing by lift_swing_phase_lead of a cycle.

    Args:
        program: Gait program
        t: Time (s)

    Returns:
        Array of 8 voltages in CHANNEL_ORDER
    """
    half = 0.5 * program.voltage
    return half * (1.0 + np.sin(TWO_PI * program.frequency * t + channel_offsets(program)))


def drive_waveforms(program: GaitProgram, times: np.ndarray) -> np.ndarray:
    """Vectorized synthesize_drive; returns shape (len(times), 8)"""
    times = np.asarray(times, dtype=float)
    half = 0.5 * program.voltage
    return half * (1.0 + np.sin(TWO_PI * program.frequency * times[:, None]
                                + channel_offsets(program)[None, :]))


def channel_index(leg: Leg, dof: Dof) -> int:
    return CHANNEL_ORDER.index((leg, dof))


def leg_channel_indices() -> Dict[Leg, Tuple[int, int]]:
    """(lift index, swing index) per leg"""
    return {leg: (channel_index(leg, Dof.LIFT), channel_index(leg, Dof.SWING)) for leg in Leg}
