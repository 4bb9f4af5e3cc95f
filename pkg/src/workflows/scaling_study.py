"""
Scaling Study Workflow - src/workflows/scaling_study.py
Predicted (and measured) characteristics of an allometrically scaled robot
"""

from dataclasses import dataclass
from typing import Optional

from loguru import logger

from src.modules.dynamics.robot import RobotSpec
from src.modules.scaling.allometry import StiffnessMode
from src.modules.scaling.report import measured_pairs, report_to_frame, scaling_report
from src.modules.scaling.robot_scaling import scale_robot
from src.modules.scaling.specs import AllometricTransform
from src.workflows.base import WorkflowResult, WorkflowStatus


@dataclass
class ScalingStudyRequest:
    """Scaling study request"""
    robot: RobotSpec
    transform: AllometricTransform
    mode: StiffnessMode = StiffnessMode.FACTOR_SUM     # theoretical report factors only
    scale_flexure_length: bool = False
    measured_robot: Optional[RobotSpec] = None


class ScalingStudyWorkflow:
    """
    Scaling report for one robot and transform

    Steps:
    1. Theoretical factors per characteristic
    2. Experimental factors when a measured counterpart is given
    3. Scaled robot summary
    """

    def execute(self, request: ScalingStudyRequest) -> WorkflowResult:
        result = WorkflowResult(workflow="scale")
        t = request.transform
        logger.info(
            f"Scaling {request.robot.name} by (l={t.s_length:g}, w={t.s_width:g}, "
            f"t={t.s_thickness:g}) in {request.mode.value} mode"
        )

        measured = None
        if request.measured_robot is not None:
            measured = measured_pairs(request.robot, request.measured_robot)
            logger.info(f"Comparing against measured {request.measured_robot.name} ({len(measured)} quantities)")

        rows = scaling_report(request.robot, t, measured, request.mode, request.scale_flexure_length)
        result.add_table("scaling_report", report_to_frame(rows))

        scaled = scale_robot(request.robot, t, scale_flexure_length=request.scale_flexure_length)
        result.highlights.update({
            'robot': request.robot.name,
            'scaled body length (mm)': round(scaled.body.body_length, 4),
            'scaled body mass (g)': round(scaled.body.body_mass, 4),
            'scaled lift resonance (Hz)': round(scaled.lift_model.natural_frequency, 2),
            'scaled swing resonance (Hz)': round(scaled.swing_model.natural_frequency, 2),
        })
        result.steps_completed.append("scaled_robot")
        result.status = WorkflowStatus.COMPLETED
        return result
