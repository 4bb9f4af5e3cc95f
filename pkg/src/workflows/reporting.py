"""
Comparison Report Workflow - src/workflows/reporting.py
Side-by-side characteristics, relative leg stiffness and sweep band checks
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import pandas as pd
from loguru import logger

from src.modules.dynamics.robot import RobotSpec
from src.modules.metrics.bands import BandCheck, check_sweep_bands
from src.modules.metrics.stiffness import leg_stiffness_report
from src.modules.metrics.summary import summaries_from_frame
from src.modules.scaling.report import measured_pairs, report_to_frame, scaling_report
from src.modules.scaling.specs import AllometricTransform
from src.workflows.base import WorkflowResult, WorkflowStatus


def band_checks_frame(checks: Sequence[BandCheck]) -> pd.DataFrame:
    return pd.DataFrame({
        'check': [c.name for c in checks],
        'passed': [int(c.passed) for c in checks],
        'detail': [c.detail for c in checks],
    })


@dataclass
class ComparisonReportRequest:
    """Comparison report request"""
    base: RobotSpec
    scaled: RobotSpec
    transform: AllometricTransform
    gravity: float = 9.81
    sweep_summary: Optional[pd.DataFrame] = None


class ComparisonReportWorkflow:
    """
    Compare a base robot with its scaled counterpart

    Steps:
    1. Characteristics table with theoretical and experimental factors
    2. Relative leg stiffness of both robots
    3. Band checks on a saved sweep summary, when one is given
    """

    def execute(self, request: ComparisonReportRequest) -> WorkflowResult:
        result = WorkflowResult(workflow="report")
        base, scaled = request.base, request.scaled

        rows = scaling_report(base, request.transform, measured_pairs(base, scaled))
        comparison = report_to_frame(rows)
        comparison.insert(2, f'{scaled.name}_measured',
                          [scaled.characteristics.get(r.quantity) for r in rows])
        result.add_table("comparison", comparison)

        stiffness_rows = []
        for robot in (base, scaled):
            report = leg_stiffness_report(robot, request.gravity)
            stiffness_rows.append({
                'robot': robot.name,
                'k_v_n_per_m': report.vertical_stiffness,
                'leg_length_mm': report.leg_length,
                'mass_g': report.mass,
                'k_rel': report.k_rel,
            })
            result.highlights[f'k_rel {robot.name}'] = round(report.k_rel, 1)
        result.add_table("leg_stiffness", pd.DataFrame(stiffness_rows))

        if request.sweep_summary is not None:
            checks = self._band_checks(request.sweep_summary)
            result.add_table("band_checks", band_checks_frame(checks))
            result.highlights['band checks passed'] = f"{sum(c.passed for c in checks)}/{len(checks)}"

        result.status = WorkflowStatus.COMPLETED
        return result

    def _band_checks(self, frame: pd.DataFrame) -> List[BandCheck]:
        summaries = summaries_from_frame(frame)
        checks = check_sweep_bands(summaries)
        for check in checks:
            log = logger.info if check.passed else logger.warning
            log(f"{check.name}: {'pass' if check.passed else 'FAIL'} ({check.detail})")
        return checks
