import math
from typing import Tuple

from src.core.exceptions import DomainError, SimulationDivergenceError
from src.modules.transmission.model import TransmissionModel

MODULE = "DYNAMICS"


def actuator_step(m: TransmissionModel, q: float, q_dot: float, voltage: float,
                  external_force: float, dt: float) -> Tuple[float, float]:
    """
    One semi-implicit Euler step of a lumped actuator DOF

    Integrates m*q'' + b*q' + k*q = F_b*V/V_rated + F_ext, updating the
    velocity first and the position with the new velocity.

    Args:
        m: Transmission model
        q: Actuator displacement (m)
        q_dot: Actuator velocity (m/s)
        voltage: Drive voltage (V)
        external_force: Load on the actuator (N)
        dt: Step (s)

    Returns:
        (q', q_dot')
    """
    if not dt > 0:
        raise DomainError(MODULE, f"dt must be positive, got {dt}")

    force = m.drive_force(voltage) + external_force - m.damping * q_dot - m.k_total * q
    q_dot = q_dot + force / m.effective_mass_kg * dt
    q = q + q_dot * dt

    if not math.isfinite(q + q_dot):
        raise SimulationDivergenceError(MODULE, f"{m.dof_kind.value} actuator state diverged", 0, 0.0)
    return q, q_dot


def static_displacement(m: TransmissionModel, voltage: float) -> float:
    """Equilibrium actuator displacement for a constant voltage (m)"""
    return m.drive_force(voltage) / m.k_total


def actuator_energy(m: TransmissionModel, q: float, q_dot: float) -> float:
    """Kinetic plus elastic energy of the actuator DOF (J)"""
    return 0.5 * m.effective_mass_kg * q_dot ** 2 + 0.5 * m.k_total * q ** 2
