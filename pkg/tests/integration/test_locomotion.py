# tests/integration/test_locomotion.py
# Short versions of the slow acceptance runs, kept in the default suite.
import numpy as np
import pytest

from src.modules.dynamics.simulator import simulate
from src.modules.dynamics.state import SimConfig
from src.modules.gait.phase_table import GaitProgram
from src.modules.metrics.locomotion import per_cycle_advance
from src.modules.scaling.robot_scaling import scale_robot
from src.modules.scaling.specs import NAMED_TRANSFORMS
from src.presets.loader import load_preset


def test_quasi_static_pronk_stride():
    robot = load_preset("hamr-jr", mu=3.0)
    cfg = SimConfig(timestep=2e-5, settle_time=0.3, cycles=1)
    traj = simulate(robot, GaitProgram.from_name("pronk", 1.0), cfg)
    advance = per_cycle_advance(traj, cfg.settle_time, 1.0)
    assert len(advance) == 1
    assert advance[0] == pytest.approx(1.04, rel=0.1)


def test_identity_scaled_robot_walks_like_original(hamr_jr, quick_config):
    program = GaitProgram.from_name("trot", 120.0)
    same = scale_robot(hamr_jr, NAMED_TRANSFORMS["identity"])
    original = simulate(hamr_jr, program, quick_config)
    scaled = simulate(same, program, quick_config)
    np.testing.assert_allclose(scaled.body, original.body, rtol=1e-6, atol=1e-6)
