from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Union

from loguru import logger
from tqdm import tqdm

from src.core.exceptions import DomainError, ModuleException, SimulationDivergenceError
from src.modules.dynamics.robot import RobotSpec
from src.modules.dynamics.simulator import simulate
from src.modules.dynamics.state import SimConfig
from src.modules.gait.phase_table import GaitProgram
from src.modules.metrics.summary import (
    STATUS_DIVERGED,
    STATUS_FAILED,
    RunSummary,
    failed_summary,
    summarize_run,
)

MODULE = "DYNAMICS"


@dataclass(frozen=True)
class RunRequest:
    """One independent simulation in a batch"""
    run_id: int
    robot: RobotSpec
    program: GaitProgram
    cfg: SimConfig
    repetition: int = 0
    rectify: bool = True


def execute_run(request: RunRequest) -> RunSummary:
    """Simulate and summarize one request; failures become status rows"""
    program = request.program
    try:
        trajectory = simulate(request.robot, program, request.cfg, request.repetition)
        return summarize_run(trajectory, request.cfg.settle_time, request.cfg.gravity,
                             request.run_id, request.rectify)
    except SimulationDivergenceError as e:
        logger.warning(f"Run {request.run_id} ({program.gait_name} {program.frequency} Hz) diverged: {e}")
        status = STATUS_DIVERGED
    except ModuleException as e:
        logger.warning(f"Run {request.run_id} ({program.gait_name} {program.frequency} Hz) failed: {e}")
        status = STATUS_FAILED
    return failed_summary(program.gait_name, program.frequency, program.voltage,
                          request.run_id, request.repetition, request.robot.payload, status)


def execute_runs(requests: Sequence[RunRequest], parallel: int = 1,
                 progress: bool = True, label: str = "runs") -> List[RunSummary]:
    """
    Execute independent runs, optionally across worker processes

    Args:
        requests: Runs to execute
        parallel: Worker processes (1 runs in-process)
        progress: Show a tqdm progress bar
        label: Progress bar description

    Returns:
        Summaries ordered by run_id, independent of completion order
    """
    bar = tqdm(total=len(requests), desc=label, disable=not progress, leave=False)
    summaries: List[RunSummary] = []
    try:
        if parallel > 1:
            with ProcessPoolExecutor(max_workers=parallel) as executor:
                for summary in executor.map(execute_run, requests):
                    summaries.append(summary)
                    bar.update(1)
        else:
            for request in requests:
                summaries.append(execute_run(request))
                bar.update(1)
    finally:
        bar.close()

    summaries.sort(key=lambda s: s.run_id)
    failed = sum(1 for s in summaries if not s.ok)
    logger.info(f"Completed {len(summaries)} {label}: {len(summaries) - failed} ok, {failed} failed")
    return summaries


def _as_program(gait: Union[str, GaitProgram], frequency: float, voltage: float,
                lift_swing_phase_lead: float, rated_voltage: float) -> GaitProgram:
    if isinstance(gait, GaitProgram):
        return gait.with_frequency(frequency)
    return GaitProgram.from_name(gait, frequency, voltage, lift_swing_phase_lead, rated_voltage)


def sweep(robot: RobotSpec, gaits: Sequence[Union[str, GaitProgram]], frequencies: Iterable[float],
          cfg: SimConfig, repetitions: int = 1, voltage: Optional[float] = None,
          parallel: int = 1, lift_swing_phase_lead: float = 0.25,
          progress: bool = True, rectify: bool = True) -> List[RunSummary]:
    """
    Run every gait at every frequency, repeated

    Args:
        robot: Robot description
        gaits: Gait names or programs (a program's frequency is replaced)
        frequencies: Drive frequencies (Hz)
        cfg: Integration settings; cfg.seed with the repetition index selects perturbations
        repetitions: Runs per (gait, frequency)
        voltage: Drive voltage (default: the robot's rated voltage)
        parallel: Worker processes
        lift_swing_phase_lead: Lift lead for named gaits (fraction of a cycle)

    Returns:
        Summaries ordered by (gait, frequency, repetition) in the given order

    Raises:
        DomainError: empty gait or frequency list, or repetitions < 1
    """
    frequencies = list(frequencies)
    if len(gaits) == 0:
        raise DomainError(MODULE, "sweep needs at least one gait")
    if len(frequencies) == 0:
        raise DomainError(MODULE, "sweep needs at least one frequency")
    if repetitions < 1:
        raise DomainError(MODULE, f"repetitions must be >= 1, got {repetitions}")

    drive_voltage = robot.rated_voltage if voltage is None else voltage
    requests = []
    for gait in gaits:
        for frequency in frequencies:
            program = _as_program(gait, frequency, drive_voltage, lift_swing_phase_lead, robot.rated_voltage)
            for rep in range(repetitions):
                requests.append(RunRequest(len(requests), robot, program, cfg, rep, rectify))

    logger.info(
        f"Sweeping {robot.name}: {len(gaits)} gaits x {len(frequencies)} frequencies x "
        f"{repetitions} reps = {len(requests)} runs (parallel={parallel})"
    )
    return execute_runs(requests, parallel, progress, label="sweep")
