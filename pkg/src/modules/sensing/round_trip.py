from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
from loguru import logger

from src.core.exceptions import DomainError
from src.modules.dynamics.robot import RobotSpec
from src.modules.dynamics.trajectory import Trajectory
from src.modules.gait.phase_table import CHANNEL_NAMES, CHANNEL_ORDER, Dof
from src.modules.sensing.estimator import (
    SenseRecord,
    default_corner,
    estimate_position,
    estimate_velocity,
)
from src.modules.transmission.model import DofKind

MODULE = "SENSING"


@dataclass(frozen=True)
class RoundTripResult:
    """Estimator accuracy on one channel (errors normalized by the ground-truth range)"""
    channel: str
    velocity_nrmse: float
    position_nrmse: float
    current_rms: float          # A
    corner: float               # Hz


@dataclass(eq=False)
class RoundTrip:
    """Per-channel results plus the estimated and true foot-coordinate traces (mm)"""
    results: List[RoundTripResult]
    time: np.ndarray
    estimated: Dict[str, np.ndarray] = field(default_factory=dict)
    truth: Dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def worst_position_nrmse(self) -> float:
        return max(r.position_nrmse for r in self.results)

    def results_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{
            'channel': r.channel,
            'velocity_nrmse': r.velocity_nrmse,
            'position_nrmse': r.position_nrmse,
            'current_rms_ua': r.current_rms * 1e6,
            'corner_hz': r.corner,
        } for r in self.results])

    def traces_frame(self) -> pd.DataFrame:
        columns = {'t_s': self.time}
        for name in self.estimated:
            columns[f'{name}_foot_est_mm'] = self.estimated[name]
            columns[f'{name}_foot_true_mm'] = self.truth[name]
        return pd.DataFrame(columns)


def sense_records(traj: Trajectory) -> List[SenseRecord]:
    """One (time, voltage, current) record per drive channel"""
    return [
        SenseRecord(traj.time, traj.voltage[:, ch], traj.current[:, ch], name)
        for ch, name in enumerate(CHANNEL_NAMES)
    ]


def _nrmse(estimate: np.ndarray, truth: np.ndarray) -> float:
    spread = float(np.max(truth) - np.min(truth))
    if spread <= 0:
        return 0.0 if np.allclose(estimate, truth) else float('inf')
    return float(np.sqrt(np.mean((estimate - truth) ** 2)) / spread)


def sensing_round_trip(traj: Trajectory, robot: RobotSpec, corner: Optional[float] = None,
                       settle: float = 0.2) -> RoundTrip:
    """
    Recover actuator motion and foot positions from simulated drive records

    Velocity is compared as-is; positions are compared after removing the
    post-settle mean from both traces, which the high-pass estimator cannot
    recover.

    Args:
        traj: Simulated trajectory with currents
        robot: Robot whose electrical models produced the currents
        corner: Estimator corner (Hz), default drive frequency / 16
        settle: Time excluded from the comparison (s)

    Returns:
        RoundTrip with one result per channel that has an electrical model
    """
    legs = robot.legs_by_position()
    if all(spec.lift_electrical is None and spec.swing_electrical is None for spec in legs.values()):
        raise DomainError(MODULE, f"robot '{robot.name}' has no electrical models to sense with")

    frequency = float(traj.meta['frequency'])
    corner = default_corner(frequency) if corner is None else corner
    mask = traj.window(settle)
    dt = traj.sample_period

    results = []
    estimated, truth = {}, {}
    for ch, ((leg, dof), record) in enumerate(zip(CHANNEL_ORDER, sense_records(traj))):
        spec = legs[leg]
        kind = DofKind.LIFT if dof is Dof.LIFT else DofKind.SWING
        electrical = spec.electrical(kind)
        if electrical is None:
            continue
        model = spec.lift if kind is DofKind.LIFT else spec.swing

        velocity = estimate_velocity(electrical, record)
        position = estimate_position(velocity, dt, corner, model.transmission_ratio, frequency)
        true_position = model.transmission_ratio * traj.displacement[:, ch]

        est_window = position[mask] - np.mean(position[mask])
        true_window = true_position[mask] - np.mean(true_position[mask])
        result = RoundTripResult(
            channel=record.channel,
            velocity_nrmse=_nrmse(velocity[mask], traj.velocity[mask, ch]),
            position_nrmse=_nrmse(est_window, true_window),
            current_rms=float(np.sqrt(np.mean(record.current[mask] ** 2))),
            corner=corner,
        )
        results.append(result)
        estimated[record.channel] = est_window
        truth[record.channel] = true_window

    logger.info(
        f"Sensing round trip at {frequency:g} Hz: worst foot NRMSE "
        f"{max(r.position_nrmse for r in results):.2%}, current RMS "
        f"{min(r.current_rms for r in results) * 1e6:.1f}-{max(r.current_rms for r in results) * 1e6:.1f} uA"
    )
    return RoundTrip(results, traj.time[mask], estimated, truth)
