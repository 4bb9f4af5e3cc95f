"""
Payload Study Workflow - src/workflows/payload_study.py
Running speed under added payload at a fixed operating point
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

from src.modules.dynamics.robot import RobotSpec
from src.modules.dynamics.state import SimConfig
from src.modules.gait.phase_table import GaitProgram
from src.modules.metrics.payload import PAYLOAD_FREQUENCY, payload_multiples, payload_sweep
from src.modules.metrics.summary import summaries_to_frame
from src.workflows.base import PlotSpec, WorkflowResult, WorkflowStatus

DEFAULT_MULTIPLES = [0.0, 0.5, 1.0, 2.0, 3.0, 4.0]


@dataclass
class PayloadStudyRequest:
    """Payload study request; explicit payloads take precedence over body-mass multiples"""
    robot: RobotSpec
    program: GaitProgram
    cfg: SimConfig
    multiples: Sequence[float] = field(default_factory=lambda: list(DEFAULT_MULTIPLES))
    payloads: Optional[Sequence[float]] = None      # g
    frequency: float = PAYLOAD_FREQUENCY
    parallel: int = 1
    progress: bool = True


class PayloadStudyWorkflow:
    """
    Payload sweep

    Steps:
    1. Resolve payload masses
    2. Run each payload at the operating frequency
    3. Speed relative to the unloaded run
    """

    def execute(self, request: PayloadStudyRequest) -> WorkflowResult:
        result = WorkflowResult(workflow="payload")
        payloads = (list(request.payloads) if request.payloads is not None
                    else payload_multiples(request.robot, request.multiples))

        summaries = payload_sweep(request.robot, request.program, request.cfg, payloads,
                                  request.frequency, request.parallel, request.progress)
        frame = summaries_to_frame(summaries)
        frame.insert(frame.columns.get_loc('payload_g') + 1, 'payload_body_masses',
                     frame['payload_g'] / request.robot.body.body_mass)
        unloaded = frame.loc[(frame['payload_g'] == 0.0) & (frame['status'] == 'ok'), 'speed_mm_s']
        if not unloaded.empty and unloaded.iloc[0] != 0:
            frame['speed_rel_unloaded'] = frame['speed_mm_s'] / unloaded.iloc[0]
        result.add_table("payload_summary", frame)
        result.plots.append(PlotSpec("speed_vs_payload", "payload_summary", 'payload_g', ['speed_mm_s'],
                                     "Payload (g)", "Speed (mm/s)"))

        result.highlights.update({
            'robot': request.robot.name,
            'frequency (Hz)': request.frequency,
            'payloads': len(payloads),
        })
        result.status = WorkflowStatus.COMPLETED
        return result
