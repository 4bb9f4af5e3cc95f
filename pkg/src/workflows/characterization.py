"""
Characterization Workflow - src/workflows/characterization.py
Leg stiffness curve and transmission frequency responses of one robot
"""

from dataclasses import dataclass
from typing import Optional

import pandas as pd
from loguru import logger

from src.modules.dynamics.robot import RobotSpec
from src.modules.transmission.frequency_response import fit_second_order, frequency_response, peak_frequency
from src.workflows.base import PlotSpec, WorkflowResult, WorkflowStatus

CHARACTERIZATION_VOLTAGE = 40.0     # V


@dataclass
class CharacterizationRequest:
    """Characterization request"""
    robot: RobotSpec
    drive_voltage: float = CHARACTERIZATION_VOLTAGE
    f_lo: float = 1.0
    f_hi: Optional[float] = None        # default 2.5x the highest resonance
    n_points: int = 600
    stiffness_points: int = 50


class CharacterizationWorkflow:
    """
    Bench characterization of the transmissions

    Steps:
    1. Sample the vertical stiffness curve
    2. Lift and swing frequency responses on a shared grid
    3. Second-order fit of each response
    """

    def execute(self, request: CharacterizationRequest) -> WorkflowResult:
        robot = request.robot
        result = WorkflowResult(workflow="characterize")

        heights, stiffness = robot.stiffness_curve.sample(request.stiffness_points)
        result.add_table("stiffness_curve", pd.DataFrame({
            'leg_height_mm': heights,
            'k_v_n_per_m': stiffness,
        }))
        result.plots.append(PlotSpec("stiffness_curve", "stiffness_curve", 'leg_height_mm',
                                     ['k_v_n_per_m'], "Leg height (mm)", "Vertical stiffness (N/m)"))

        f_hi = request.f_hi or 2.5 * max(robot.lift_model.natural_frequency, robot.swing_model.natural_frequency)
        lift = frequency_response(robot.lift_model, request.f_lo, f_hi, request.n_points, request.drive_voltage)
        swing = frequency_response(robot.swing_model, request.f_lo, f_hi, request.n_points, request.drive_voltage)
        result.add_table("frequency_response", pd.DataFrame({
            'frequency_hz': lift.frequencies,
            'lift_p2p_mm': lift.amplitudes,
            'swing_p2p_mm': swing.amplitudes,
        }))
        result.plots.append(PlotSpec("frequency_response", "frequency_response", 'frequency_hz',
                                     ['lift_p2p_mm', 'swing_p2p_mm'], "Frequency (Hz)",
                                     "Leg displacement p2p (mm)"))

        fits = []
        for dof, model, samples in (('lift', robot.lift_model, lift), ('swing', robot.swing_model, swing)):
            f_n, q = fit_second_order(samples)
            fits.append({
                'dof': dof,
                'model_fn_hz': model.natural_frequency,
                'model_q': model.quality_factor,
                'peak_hz': peak_frequency(model),
                'fitted_fn_hz': f_n,
                'fitted_q': q,
            })
            logger.info(f"{robot.name} {dof}: fitted f_n={f_n:.1f} Hz, Q={q:.2f}")
        result.add_table("response_fit", pd.DataFrame(fits))

        result.highlights.update({
            'robot': robot.name,
            'k_v lowest / highest (N/m)': f"{stiffness[0]:.2f} / {stiffness[-1]:.2f}",
            'lift f_n (Hz)': round(fits[0]['fitted_fn_hz'], 1),
            'swing f_n (Hz)': round(fits[1]['fitted_fn_hz'], 1),
        })
        result.status = WorkflowStatus.COMPLETED
        return result
