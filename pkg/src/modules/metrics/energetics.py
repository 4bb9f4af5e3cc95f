import numpy as np
from scipy.integrate import trapezoid

from src.core.exceptions import UndefinedMetricError
from src.modules.dynamics.trajectory import Trajectory

MODULE = "METRICS"


def average_power(traj: Trajectory, settle: float = 0.0, rectify: bool = True) -> np.ndarray:
    """
    Time-averaged electrical power per channel (W)

    Args:
        traj: Trajectory with voltage and current records
        settle: Time excluded from the start (s)
        rectify: Clamp negative instantaneous power to zero (non-regenerative drive)
    """
    mask = traj.window(settle)
    t = traj.time[mask]
    power = traj.voltage[mask] * traj.current[mask]
    if rectify:
        power = np.clip(power, 0.0, None)
    span = t[-1] - t[0]
    if span <= 0:
        raise UndefinedMetricError(MODULE, "post-settle window has zero length")
    return trapezoid(power, t, axis=0) / span


def cost_of_transport(traj: Trajectory, body_mass_total: float, gravity: float,
                      mean_speed: float, settle: float = 0.0, rectify: bool = True) -> float:
    """
    Dimensionless cost of transport

    Summed mean electrical input power of all channels over weight times
    speed.

    Args:
        traj: Trajectory with voltage and current records
        body_mass_total: Robot plus payload mass (g)
        gravity: m/s^2
        mean_speed: Forward speed (mm/s)
        settle: Time excluded from the start (s)
        rectify: Clamp negative instantaneous power before averaging

    Returns:
        CoT (>= 0 when rectified)

    Raises:
        UndefinedMetricError: non-positive speed or mass
    """
    if not mean_speed > 0:
        raise UndefinedMetricError(MODULE, f"cost of transport needs a positive speed, got {mean_speed} mm/s")
    if not body_mass_total > 0 or not gravity > 0:
        raise UndefinedMetricError(MODULE, f"mass ({body_mass_total} g) and gravity ({gravity}) must be positive")

    power = float(np.sum(average_power(traj, settle, rectify)))
    return power / (body_mass_total * 1e-3 * gravity * mean_speed * 1e-3)


def current_rms(traj: Trajectory, settle: float = 0.0) -> np.ndarray:
    """RMS current per channel over the post-settle window (A)"""
    mask = traj.window(settle)
    return np.sqrt(np.mean(traj.current[mask] ** 2, axis=0))
