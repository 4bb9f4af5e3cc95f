# tests/conftest.py
from typing import Optional

import numpy as np
import pytest

from src.modules.dynamics.state import SimConfig
from src.modules.dynamics.trajectory import Trajectory
from src.presets.loader import load_preset


@pytest.fixture(scope="session")
def hamr_jr():
    return load_preset("hamr-jr")


@pytest.fixture(scope="session")
def hamr_vi():
    return load_preset("hamr-vi")


@pytest.fixture
def quick_config():
    """Short runs for integration tests"""
    return SimConfig(duration=0.06, settle_time=0.02)


def make_trajectory(time: np.ndarray, x: Optional[np.ndarray] = None, frequency: float = 10.0,
                    voltage: Optional[np.ndarray] = None, current: Optional[np.ndarray] = None,
                    contact: Optional[np.ndarray] = None, slip: Optional[np.ndarray] = None,
                    body_length: float = 22.5, total_mass: float = 0.32) -> Trajectory:
    """Hand-built trajectory with everything not given set to zero"""
    time = np.asarray(time, dtype=float)
    n = len(time)
    body = np.zeros((n, 6))
    if x is not None:
        body[:, 0] = x
    dt = float(time[1] - time[0])
    return Trajectory(
        time=time,
        body=body,
        foot_x=np.zeros((n, 4)),
        foot_z=np.zeros((n, 4)),
        contact=np.zeros((n, 4), dtype=bool) if contact is None else contact,
        slip=np.zeros((n, 4), dtype=bool) if slip is None else slip,
        chassis_contact=np.zeros(n, dtype=bool),
        displacement=np.zeros((n, 8)),
        velocity=np.zeros((n, 8)),
        voltage=np.zeros((n, 8)) if voltage is None else voltage,
        current=np.zeros((n, 8)) if current is None else current,
        energy=np.zeros(n),
        timestep=dt,
        sample_every=1,
        meta={
            'robot': 'synthetic',
            'gait': 'trot',
            'frequency': frequency,
            'voltage': 200.0,
            'payload': 0.0,
            'body_length': body_length,
            'total_mass': total_mass,
            'repetition': 0,
        },
    )


@pytest.fixture
def trajectory_factory():
    return make_trajectory
