import math
from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

import numpy as np
import pandas as pd
from loguru import logger
from scipy.optimize import curve_fit

from src.core.base_module import ValidatedSpec
from src.core.exceptions import DomainError, FitError
from src.modules.transmission.model import TransmissionModel

MODULE = "TRANSMISSION"


@dataclass(frozen=True, eq=False)
class FrequencyResponse(ValidatedSpec):
    """Peak-to-peak leg amplitude (mm) sampled at increasing frequencies (Hz)"""
    frequencies: np.ndarray
    amplitudes: np.ndarray

    module_name = MODULE

    def __post_init__(self):
        object.__setattr__(self, 'frequencies', np.asarray(self.frequencies, dtype=float))
        object.__setattr__(self, 'amplitudes', np.asarray(self.amplitudes, dtype=float))
        self.ensure_valid()

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        if self.frequencies.shape != self.amplitudes.shape or self.frequencies.ndim != 1:
            errors.append(
                f"frequencies {self.frequencies.shape} and amplitudes {self.amplitudes.shape} "
                f"must be 1-D and aligned"
            )
            return False, errors
        if len(self.frequencies) < 2:
            errors.append("at least two samples are required")
        if np.any(np.diff(self.frequencies) <= 0):
            errors.append("frequencies must be strictly increasing")
        if np.any(self.amplitudes <= 0) or not np.all(np.isfinite(self.amplitudes)):
            errors.append("amplitudes must be positive and finite")
        return len(errors) == 0, errors

    def __len__(self) -> int:
        return len(self.frequencies)


class SecondOrderFit(NamedTuple):
    natural_frequency: float
    quality_factor: float
    quasi_static_amplitude: float


def second_order_amplitude(frequency, natural_frequency: float, quality_factor: float,
                           quasi_static_amplitude: float):
    """Amplitude of a driven damped oscillator; works on scalars and arrays"""
    r = np.asarray(frequency, dtype=float) / natural_frequency
    return quasi_static_amplitude / np.sqrt((1 - r ** 2) ** 2 + (r / quality_factor) ** 2)


def frequency_response(m: TransmissionModel, f_lo: float, f_hi: float,
                       n_points: int, drive_voltage: float) -> FrequencyResponse:
    """
    Analytic leg frequency response on a linear grid

    Args:
        m: Transmission model
        f_lo: Lowest frequency (Hz)
        f_hi: Highest frequency (Hz)
        n_points: Grid size (>= 2)
        drive_voltage: Peak-to-peak drive voltage (V)

    Returns:
        FrequencyResponse in peak-to-peak mm
    """
    if not 0 < f_lo < f_hi:
        raise DomainError(MODULE, f"need 0 < f_lo < f_hi, got {f_lo}, {f_hi}")
    if n_points < 2:
        raise DomainError(MODULE, f"n_points must be >= 2, got {n_points}")
    if not drive_voltage > 0:
        raise DomainError(MODULE, f"drive voltage must be positive, got {drive_voltage}")

    frequencies = np.linspace(f_lo, f_hi, n_points)
    quasi_static = m.quasi_static_gain * drive_voltage * 1e-3
    amplitudes = second_order_amplitude(frequencies, m.natural_frequency, m.quality_factor, quasi_static)
    return FrequencyResponse(frequencies, amplitudes)


def peak_frequency(m: TransmissionModel) -> float:
    """Frequency of maximum amplitude, f_n*sqrt(1 - 1/(2Q^2)) (Hz)"""
    if m.quality_factor <= 1 / math.sqrt(2):
        return 0.0
    return m.natural_frequency * math.sqrt(1 - 1 / (2 * m.quality_factor ** 2))


def fit_second_order_full(samples: FrequencyResponse) -> SecondOrderFit:
    """
    Fit natural frequency, quality factor and DC amplitude to sampled data

    Raises:
        FitError: no interior peak, or the optimizer does not converge
    """
    f = samples.frequencies
    a = samples.amplitudes
    peak = int(np.argmax(a))
    if peak == 0 or peak == len(a) - 1 or not (a[peak] > a[0] and a[peak] > a[-1]):
        raise FitError(MODULE, "samples have no resolved interior peak")

    f0 = float(f[peak])
    # half-power bandwidth for the initial Q
    above = np.nonzero(a >= a[peak] / math.sqrt(2))[0]
    bandwidth = float(f[above[-1]] - f[above[0]]) if len(above) > 1 else 0.0
    q0 = f0 / bandwidth if bandwidth > 0 else max(a[peak] / a[0], 1.0)
    a0 = float(a[peak]) / max(q0, 1.0)

    try:
        params, _ = curve_fit(
            second_order_amplitude, f, a,
            p0=(f0, q0, a0),
            sigma=a,
            bounds=([1e-9, 1e-3, 1e-12], [np.inf, np.inf, np.inf]),
            maxfev=20000,
        )
    except (RuntimeError, ValueError) as e:
        raise FitError(MODULE, f"second-order fit failed: {e}")

    fit = SecondOrderFit(*(float(p) for p in params))
    residual = np.max(np.abs(second_order_amplitude(f, *fit) - a) / a)
    if residual > 0.01:
        logger.warning(f"Second-order fit residual {residual:.3%} exceeds 1%; samples may be noisy")

    logger.debug(
        f"Fitted f_n={fit.natural_frequency:.2f} Hz, Q={fit.quality_factor:.2f} "
        f"(max relative residual {residual:.2e})"
    )
    return fit


def fit_second_order(samples: FrequencyResponse) -> Tuple[float, float]:
    """Natural frequency (Hz) and quality factor fitted to sampled data"""
    fit = fit_second_order_full(samples)
    return fit.natural_frequency, fit.quality_factor


def response_to_frame(response: FrequencyResponse) -> pd.DataFrame:
    return pd.DataFrame({
        'frequency_hz': response.frequencies,
        'p2p_mm': response.amplitudes,
    })
