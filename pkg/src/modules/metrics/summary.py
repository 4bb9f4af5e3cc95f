import math
from dataclasses import asdict, dataclass
from typing import List, Sequence, Tuple

import pandas as pd
from loguru import logger

from src.core.base_module import ValidatedSpec
from src.core.exceptions import UndefinedMetricError
from src.core.validators import relative_close
from src.modules.dynamics.trajectory import Trajectory
from src.modules.metrics.energetics import cost_of_transport, current_rms
from src.modules.metrics.locomotion import (
    aerial_fraction,
    effective_stride_length,
    mean_speed,
    slip_fraction,
)

MODULE = "METRICS"

STATUS_OK = "ok"
STATUS_DIVERGED = "diverged"
STATUS_FAILED = "failed"

# CSV column -> RunSummary attribute
SUMMARY_COLUMNS = {
    'run_id': 'run_id',
    'gait': 'gait',
    'freq_hz': 'frequency',
    'voltage_v': 'voltage',
    'rep': 'repetition',
    'payload_g': 'payload',
    'speed_mm_s': 'mean_speed',
    'speed_bl_s': 'speed_bl',
    'stride_mm': 'stride_length',
    'cot': 'cot',
    'aerial_frac': 'aerial_fraction',
    'slip_frac': 'slip_fraction',
    'current_rms_ua': 'current_rms',
    'status': 'status',
}


@dataclass(frozen=True)
class RunSummary(ValidatedSpec):
    """Performance of one run; NaN marks quantities a failed run could not produce"""
    gait: str
    frequency: float            # Hz
    voltage: float              # V
    mean_speed: float           # mm/s
    speed_bl: float             # BL/s
    stride_length: float        # mm
    cot: float
    aerial_fraction: float
    slip_fraction: float
    run_id: int = 0
    repetition: int = 0
    payload: float = 0.0        # g
    current_rms: float = math.nan   # uA, mean over channels
    status: str = STATUS_OK

    module_name = MODULE

    def __post_init__(self):
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        if self.status != STATUS_OK:
            return True, errors
        if not relative_close(self.stride_length, self.mean_speed / self.frequency, 1e-9):
            errors.append("stride_length must equal mean_speed / frequency")
        if math.isfinite(self.cot) and self.cot < 0:
            errors.append(f"cot must be non-negative, got {self.cot}")
        return len(errors) == 0, errors

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


def summarize_run(traj: Trajectory, settle: float, gravity: float = 9.81, run_id: int = 0,
                  rectify: bool = True) -> RunSummary:
    """
    Reduce a trajectory to its RunSummary

    CoT is NaN (with a warning) when the robot did not move forward.
    """
    meta = traj.meta
    frequency = float(meta['frequency'])
    body_length = float(meta['body_length'])
    total_mass = float(meta['total_mass'])

    speed = mean_speed(traj, settle)
    try:
        cot = cost_of_transport(traj, total_mass, gravity, speed, settle, rectify)
    except UndefinedMetricError as e:
        logger.warning(f"Run {run_id}: {e}")
        cot = math.nan

    return RunSummary(
        gait=str(meta['gait']),
        frequency=frequency,
        voltage=float(meta['voltage']),
        mean_speed=speed,
        speed_bl=speed / body_length,
        stride_length=effective_stride_length(speed, frequency),
        cot=cot,
        aerial_fraction=aerial_fraction(traj, settle),
        slip_fraction=slip_fraction(traj, settle),
        run_id=run_id,
        repetition=int(meta.get('repetition', 0)),
        payload=float(meta.get('payload', 0.0)),
        current_rms=float(current_rms(traj, settle).mean() * 1e6),
    )


def failed_summary(gait: str, frequency: float, voltage: float, run_id: int, repetition: int,
                   payload: float, status: str) -> RunSummary:
    nan = math.nan
    return RunSummary(gait, frequency, voltage, nan, nan, nan, nan, nan, nan,
                      run_id, repetition, payload, nan, status)


def summaries_to_frame(summaries: Sequence[RunSummary]) -> pd.DataFrame:
    """Summary rows ordered as given, columns as in SUMMARY_COLUMNS"""
    rows = [asdict(s) for s in summaries]
    frame = pd.DataFrame(rows, columns=list(SUMMARY_COLUMNS.values()))
    return frame.rename(columns={attr: col for col, attr in SUMMARY_COLUMNS.items()})


def summaries_from_frame(frame: pd.DataFrame) -> List[RunSummary]:
    """Inverse of summaries_to_frame (used to re-check a saved sweep)"""
    summaries = []
    for record in frame.to_dict(orient='records'):
        kwargs = {attr: record[col] for col, attr in SUMMARY_COLUMNS.items() if col in record}
        kwargs['run_id'] = int(kwargs.get('run_id', 0))
        kwargs['repetition'] = int(kwargs.get('repetition', 0))
        kwargs['gait'] = str(kwargs['gait'])
        kwargs['status'] = str(kwargs.get('status', STATUS_OK))
        if kwargs['status'] == STATUS_OK:
            # CSV rounding would otherwise break the stride identity
            kwargs['stride_length'] = kwargs['mean_speed'] / kwargs['frequency']
        summaries.append(RunSummary(**kwargs))
    return summaries


def aggregate(summaries: Sequence[RunSummary]) -> pd.DataFrame:
    """Mean and std of speed, stride and CoT per (gait, frequency) over successful runs"""
    frame = summaries_to_frame([s for s in summaries if s.ok])
    if frame.empty:
        return frame
    grouped = frame.groupby(['gait', 'freq_hz'], sort=False)
    result = grouped[['speed_mm_s', 'speed_bl_s', 'stride_mm', 'cot']].agg(['mean', 'std'])
    result.columns = [f"{col}_{stat}" for col, stat in result.columns]
    return result.reset_index()
