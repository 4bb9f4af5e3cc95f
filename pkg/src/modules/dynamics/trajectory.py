from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd

from src.core.base_module import ValidatedSpec
from src.core.exceptions import UndefinedMetricError
from src.modules.dynamics.state import BodyState
from src.modules.gait.phase_table import CHANNEL_NAMES, Leg

MODULE = "DYNAMICS"

BODY_COLUMNS = ('x_mm', 'z_mm', 'pitch_rad', 'x_dot_mm_s', 'z_dot_mm_s', 'pitch_rate_rad_s')


@dataclass(frozen=True, eq=False)
class Trajectory(ValidatedSpec):
    """
    Uniformly sampled simulation record

    Array shapes: time (N,), body (N, 6) in BODY_COLUMNS order, per-leg
    arrays (N, 4) in Leg order, per-channel arrays (N, 8) in CHANNEL_NAMES
    order. Actuator displacement and velocity are actuator-side (mm, mm/s).
    """
    time: np.ndarray
    body: np.ndarray
    foot_x: np.ndarray
    foot_z: np.ndarray
    contact: np.ndarray
    slip: np.ndarray
    chassis_contact: np.ndarray
    displacement: np.ndarray
    velocity: np.ndarray
    voltage: np.ndarray
    current: np.ndarray
    energy: np.ndarray                  # uJ
    timestep: float                     # s
    sample_every: int
    meta: Dict[str, object] = field(default_factory=dict)

    module_name = MODULE

    def __post_init__(self):
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        n = len(self.time)
        if n < 2:
            errors.append("at least two samples are required")
        if np.any(np.diff(self.time) <= 0):
            errors.append("time must be strictly increasing")
        if not isinstance(self.sample_every, (int, np.integer)) or self.sample_every < 1:
            errors.append(f"sample_every must be a positive integer, got {self.sample_every!r}")
        expected = {
            'body': (n, 6), 'foot_x': (n, 4), 'foot_z': (n, 4), 'contact': (n, 4),
            'slip': (n, 4), 'chassis_contact': (n,), 'displacement': (n, 8),
            'velocity': (n, 8), 'voltage': (n, 8), 'current': (n, 8), 'energy': (n,),
        }
        for name, shape in expected.items():
            actual = getattr(self, name).shape
            if actual != shape:
                errors.append(f"{name} has shape {actual}, expected {shape}")
        return len(errors) == 0, errors

    def __len__(self) -> int:
        return len(self.time)

    @property
    def sample_period(self) -> float:
        return self.timestep * self.sample_every

    @property
    def x(self) -> np.ndarray:
        return self.body[:, 0]

    @property
    def z(self) -> np.ndarray:
        return self.body[:, 1]

    def body_state(self, index: int) -> BodyState:
        return BodyState(*(float(v) for v in self.body[index]))

    def window(self, settle: float) -> np.ndarray:
        """Boolean mask of samples at or after the settle time"""
        mask = self.time >= self.time[0] + settle - 1e-12
        if np.count_nonzero(mask) < 2:
            raise UndefinedMetricError(
                MODULE, f"no samples after settle time {settle} s (run ends at {self.time[-1]:.4f} s)"
            )
        return mask

    def to_frame(self) -> pd.DataFrame:
        """Flat table with unit-bearing column names"""
        columns = {'t_s': self.time}
        for idx, name in enumerate(('x_mm', 'z_mm', 'pitch_rad')):
            columns[name] = self.body[:, idx]
        for idx, leg in enumerate(Leg):
            columns[f'{leg.value}_foot_x_mm'] = self.foot_x[:, idx]
            columns[f'{leg.value}_foot_z_mm'] = self.foot_z[:, idx]
            columns[f'{leg.value}_contact'] = self.contact[:, idx].astype(int)
            columns[f'{leg.value}_slip'] = self.slip[:, idx].astype(int)
        columns['chassis_contact'] = self.chassis_contact.astype(int)
        for idx, name in enumerate(CHANNEL_NAMES):
            columns[f'{name}_q_mm'] = self.displacement[:, idx]
            columns[f'{name}_v_volts'] = self.voltage[:, idx]
            columns[f'{name}_i_amps'] = self.current[:, idx]
        columns['energy_uj'] = self.energy
        return pd.DataFrame(columns)
