from dataclasses import replace

import numpy as np

from src.modules.dynamics.robot import RobotSpec
from src.modules.dynamics.trajectory import Trajectory
from src.modules.gait.phase_table import Leg
from src.modules.sensing.electrical import piezo_current
from src.modules.transmission.model import DofKind


def attach_currents(traj: Trajectory, robot: RobotSpec) -> Trajectory:
    """
    Copy of a trajectory with drive currents synthesized from its voltage and velocity records

    Channels without an electrical model carry zero current.
    """
    current = np.zeros_like(traj.voltage)
    legs = robot.legs_by_position()
    for i, leg in enumerate(Leg):
        for kind, ch in ((DofKind.LIFT, 2 * i), (DofKind.SWING, 2 * i + 1)):
            electrical = legs[leg].electrical(kind)
            if electrical is not None:
                current[:, ch] = piezo_current(electrical, traj.voltage[:, ch], traj.velocity[:, ch],
                                               traj.sample_period)
    return replace(traj, current=current)
