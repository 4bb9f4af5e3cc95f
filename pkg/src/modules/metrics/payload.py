from typing import List, Sequence

from loguru import logger

from src.core.exceptions import DomainError
from src.modules.dynamics.robot import RobotSpec
from src.modules.dynamics.state import SimConfig
from src.modules.dynamics.sweep import RunRequest, execute_runs
from src.modules.gait.phase_table import GaitProgram
from src.modules.metrics.summary import RunSummary

MODULE = "METRICS"

PAYLOAD_FREQUENCY = 10.0    # Hz


def payload_sweep(robot: RobotSpec, program: GaitProgram, cfg: SimConfig, payloads: Sequence[float],
                  frequency: float = PAYLOAD_FREQUENCY, parallel: int = 1,
                  progress: bool = True) -> List[RunSummary]:
    """
    Speed under added payload at a fixed operating point

    Payload mass sits at the center of mass; the program runs at
    `frequency` regardless of its own.

    Args:
        robot: Unloaded robot
        program: Gait program
        cfg: Integration settings
        payloads: Added masses (g), each >= 0

    Returns:
        One summary per payload, in the given order
    """
    if len(payloads) == 0:
        raise DomainError(MODULE, "payload sweep needs at least one payload")
    negative = [p for p in payloads if p < 0]
    if negative:
        raise DomainError(MODULE, f"payloads must be non-negative, got {negative}")

    operating = program.with_frequency(frequency)
    requests = [
        RunRequest(idx, robot.with_payload(float(payload)), operating, cfg)
        for idx, payload in enumerate(payloads)
    ]
    summaries = execute_runs(requests, parallel, progress, label="payload runs")

    baseline = next((s for s in summaries if s.ok and s.payload == 0.0), None)
    for summary in summaries:
        if baseline is not None and summary.ok and baseline.mean_speed != 0:
            ratio = summary.mean_speed / baseline.mean_speed
            logger.info(f"Payload {summary.payload:.3f} g: {summary.mean_speed:.2f} mm/s ({ratio:.1%} of unloaded)")
    return summaries


def payload_multiples(robot: RobotSpec, multiples: Sequence[float]) -> List[float]:
    """Payload masses (g) as multiples of the body mass"""
    return [m * robot.body.body_mass for m in multiples]
