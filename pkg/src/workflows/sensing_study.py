"""
Sensing Study Workflow - src/workflows/sensing_study.py
Recover foot motion from simulated actuator drive records
"""

from dataclasses import dataclass
from typing import Optional

import pandas as pd
from loguru import logger

from src.modules.dynamics.robot import RobotSpec
from src.modules.dynamics.simulator import simulate
from src.modules.dynamics.state import SimConfig
from src.modules.gait.phase_table import GaitProgram
from src.modules.sensing.round_trip import sense_records, sensing_round_trip
from src.workflows.base import PlotSpec, WorkflowResult, WorkflowStatus

SENSING_FREQUENCY = 160.0   # Hz


@dataclass
class SensingStudyRequest:
    """Sensing round-trip request"""
    robot: RobotSpec
    program: GaitProgram
    cfg: SimConfig
    corner: Optional[float] = None      # Hz


class SensingStudyWorkflow:
    """
    Proprioceptive sensing round trip

    Steps:
    1. Simulate a run with synthesized drive currents
    2. Per-channel voltage/current records
    3. Velocity and foot-position estimates against ground truth
    """

    def execute(self, request: SensingStudyRequest) -> WorkflowResult:
        result = WorkflowResult(workflow="sense")
        trajectory = simulate(request.robot, request.program, request.cfg)

        columns = {'t_s': trajectory.time}
        for record in sense_records(trajectory):
            columns[f'{record.channel}_v_volts'] = record.voltage
            columns[f'{record.channel}_i_amps'] = record.current
        result.add_table("sense_records", pd.DataFrame(columns))

        round_trip = sensing_round_trip(trajectory, request.robot, request.corner, request.cfg.settle_time)
        result.add_table("sensing_results", round_trip.results_frame())
        result.add_table("sensing_traces", round_trip.traces_frame())
        result.plots.append(PlotSpec("foot_estimate", "sensing_traces", 't_s',
                                     ['FL_swing_foot_est_mm', 'FL_swing_foot_true_mm'],
                                     "Time (s)", "FL swing foot position (mm)"))

        worst = round_trip.worst_position_nrmse
        logger.info(f"Worst foot-position NRMSE {worst:.2%} over {len(round_trip.results)} channels")
        result.highlights.update({
            'robot': request.robot.name,
            'frequency (Hz)': request.program.frequency,
            'worst position NRMSE': f"{worst:.2%}",
            'current RMS (uA)': f"{min(r.current_rms for r in round_trip.results) * 1e6:.1f}-"
                                f"{max(r.current_rms for r in round_trip.results) * 1e6:.1f}",
        })
        result.status = WorkflowStatus.COMPLETED
        return result
