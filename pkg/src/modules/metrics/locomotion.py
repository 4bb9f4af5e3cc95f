import numpy as np

from src.core.exceptions import DomainError, UndefinedMetricError
from src.modules.dynamics.trajectory import Trajectory

MODULE = "METRICS"


def mean_speed(traj: Trajectory, settle: float) -> float:
    """
    Net forward speed over the post-settle window

    Args:
        traj: Trajectory
        settle: Time excluded from the start (s)

    Returns:
        Net x displacement over the window divided by its length (mm/s)
    """
    mask = traj.window(settle)
    t = traj.time[mask]
    x = traj.x[mask]
    span = t[-1] - t[0]
    if span <= 0:
        raise UndefinedMetricError(MODULE, "post-settle window has zero length")
    return float((x[-1] - x[0]) / span)


def effective_stride_length(mean_speed: float, frequency: float) -> float:
    """Body advance per drive cycle (mm)"""
    if not frequency > 0:
        raise DomainError(MODULE, f"frequency must be positive, got {frequency}")
    return mean_speed / frequency


def aerial_fraction(traj: Trajectory, settle: float) -> float:
    """Fraction of post-settle samples with no foot or chassis on the ground"""
    mask = traj.window(settle)
    grounded = traj.contact[mask].any(axis=1) | traj.chassis_contact[mask]
    return float(np.mean(~grounded))


def slip_fraction(traj: Trajectory, settle: float) -> float:
    """Share of post-settle foot-contact samples that slip (0 without contact)"""
    mask = traj.window(settle)
    contacts = np.count_nonzero(traj.contact[mask])
    if contacts == 0:
        return 0.0
    return float(np.count_nonzero(traj.slip[mask] & traj.contact[mask]) / contacts)


def per_cycle_advance(traj: Trajectory, settle: float, frequency: float) -> np.ndarray:
    """Body x advance (mm) over each whole drive cycle after the settle time"""
    if not frequency > 0:
        raise DomainError(MODULE, f"frequency must be positive, got {frequency}")
    mask = traj.window(settle)
    t = traj.time[mask]
    x = traj.x[mask]
    period = 1.0 / frequency
    n_cycles = int(np.floor((t[-1] - t[0]) / period + 1e-9))
    if n_cycles < 1:
        raise UndefinedMetricError(MODULE, "post-settle window is shorter than one cycle")
    boundaries = np.interp(t[0] + period * np.arange(n_cycles + 1), t, x)
    return np.diff(boundaries)
