"""
Locomotion Study Workflow - src/workflows/locomotion_study.py
Single open-loop runs and speed/CoT sweeps over gait and frequency
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

from loguru import logger

from src.modules.dynamics.robot import RobotSpec
from src.modules.dynamics.simulator import simulate
from src.modules.dynamics.state import SimConfig
from src.modules.dynamics.sweep import sweep
from src.modules.gait.phase_table import GaitProgram
from src.modules.metrics.bands import check_sweep_bands
from src.modules.metrics.summary import aggregate, summaries_to_frame, summarize_run
from src.workflows.base import PlotSpec, WorkflowResult, WorkflowStatus
from src.workflows.reporting import band_checks_frame

DEFAULT_FREQUENCIES = [1.0, 10.0, 20.0, 40.0, 80.0, 120.0, 160.0, 200.0, 240.0, 280.0]


@dataclass
class RunStudyRequest:
    """Single-run request"""
    robot: RobotSpec
    program: GaitProgram
    cfg: SimConfig
    rectify: bool = True


@dataclass
class SweepStudyRequest:
    """Sweep request"""
    robot: RobotSpec
    gaits: Sequence[str] = ('trot', 'pronk')
    frequencies: Sequence[float] = field(default_factory=lambda: list(DEFAULT_FREQUENCIES))
    cfg: SimConfig = field(default_factory=SimConfig)
    repetitions: int = 5
    voltage: Optional[float] = None
    lift_swing_phase_lead: float = 0.25
    parallel: int = 1
    rectify: bool = True
    progress: bool = True


class RunStudyWorkflow:
    """
    One simulated run

    Steps:
    1. Simulate (divergence propagates to the caller)
    2. Trajectory table
    3. Run summary
    """

    def execute(self, request: RunStudyRequest) -> WorkflowResult:
        result = WorkflowResult(workflow="run")
        program = request.program
        logger.info(f"Running {request.robot.name}: {program.gait_name} at {program.frequency:g} Hz, "
                    f"{program.voltage:g} V")

        trajectory = simulate(request.robot, program, request.cfg)
        result.add_table("trajectory", trajectory.to_frame())
        result.plots.append(PlotSpec("body_x", "trajectory", 't_s', ['x_mm'], "Time (s)", "Body x (mm)"))
        result.plots.append(PlotSpec("body_z", "trajectory", 't_s', ['z_mm'], "Time (s)", "Body z (mm)"))

        summary = summarize_run(trajectory, request.cfg.settle_time, request.cfg.gravity, 0, request.rectify)
        result.add_table("summary", summaries_to_frame([summary]))

        result.highlights.update({
            'speed (mm/s)': round(summary.mean_speed, 3),
            'speed (BL/s)': round(summary.speed_bl, 3),
            'stride (mm)': round(summary.stride_length, 4),
            'CoT': round(summary.cot, 2),
        })
        result.status = WorkflowStatus.COMPLETED
        return result


class SweepStudyWorkflow:
    """
    Gait x frequency x repetition sweep

    Steps:
    1. Execute all runs (failures become status rows)
    2. Summary and per-condition aggregate tables
    3. Band/property checks on the aggregate curves
    """

    def execute(self, request: SweepStudyRequest) -> WorkflowResult:
        result = WorkflowResult(workflow="sweep")
        summaries = sweep(
            request.robot, list(request.gaits), request.frequencies, request.cfg,
            request.repetitions, request.voltage, request.parallel,
            request.lift_swing_phase_lead, request.progress, request.rectify,
        )
        result.add_table("sweep_summary", summaries_to_frame(summaries))
        result.add_table("sweep_aggregate", aggregate(summaries))
        result.plots.append(PlotSpec("speed_vs_frequency", "sweep_aggregate", 'freq_hz', ['speed_mm_s_mean'],
                                     "Stride frequency (Hz)", "Speed (mm/s)", group_by='gait'))
        result.plots.append(PlotSpec("stride_vs_frequency", "sweep_aggregate", 'freq_hz', ['stride_mm_mean'],
                                     "Stride frequency (Hz)", "Stride length (mm)", group_by='gait'))
        result.plots.append(PlotSpec("cot_vs_frequency", "sweep_aggregate", 'freq_hz', ['cot_mean'],
                                     "Stride frequency (Hz)", "Cost of transport", group_by='gait'))

        checks = check_sweep_bands(summaries)
        result.add_table("band_checks", band_checks_frame(checks))

        failed = [s for s in summaries if not s.ok]
        result.highlights.update({
            'runs': len(summaries),
            'failed runs': len(failed),
            'band checks passed': f"{sum(c.passed for c in checks)}/{len(checks)}",
        })
        result.status = WorkflowStatus.COMPLETED
        return result
