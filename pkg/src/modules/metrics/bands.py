import math
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from src.modules.metrics.summary import RunSummary


class BandCheck(NamedTuple):
    name: str
    passed: bool
    detail: str


class Band(NamedTuple):
    """Where a gait's speed peak must fall: frequency (Hz) and speed (mm/s) ranges"""
    frequency: Tuple[float, float]
    speed: Tuple[float, float]


DEFAULT_PEAK_BANDS: Dict[str, Band] = {
    'trot': Band((120.0, 240.0), (150.0, 400.0)),
    'pronk': Band((160.0, 280.0), (200.0, 400.0)),
}
DEFAULT_QUASI_STATIC_STRIDES: Dict[str, float] = {'trot': 2.08, 'pronk': 1.04}
MONOTONE_LIMIT = 120.0          # Hz
COT_LOW_FREQUENCY = 1.0         # Hz
COT_EXTREME = 100.0
COT_MIN_BAND = (25.0, 100.0)
# speeds within this fraction of the maximum count as the plateau
PEAK_PLATEAU = 0.01


def _mean_by_frequency(summaries: Sequence[RunSummary], gait: str,
                       attribute: str) -> List[Tuple[float, float]]:
    """(frequency, mean of attribute) over successful runs, sorted by frequency"""
    values: Dict[float, List[float]] = {}
    for s in summaries:
        value = getattr(s, attribute)
        if s.gait == gait and s.ok and math.isfinite(value):
            values.setdefault(s.frequency, []).append(value)
    return sorted((f, float(np.mean(v))) for f, v in values.items())


def speed_peak(speeds: Sequence[Tuple[float, float]], plateau: float = PEAK_PLATEAU) -> Tuple[float, float]:
    """
    Lowest (frequency, speed) whose speed is within plateau of the maximum

    Above the traction limit neighbouring frequencies reach nearly the same
    speed; the peak is where that plateau starts.
    """
    top = max(v for _, v in speeds)
    return min(((f, v) for f, v in speeds if v >= (1.0 - plateau) * top), key=lambda fv: fv[0])


def _speed_checks(summaries, gait: str, band: Optional[Band],
                  quasi_static: Optional[float]) -> List[BandCheck]:
    checks = []
    speeds = _mean_by_frequency(summaries, gait, 'mean_speed')
    if not speeds:
        return checks

    if gait == 'trot':
        low = [(f, v) for f, v in speeds if f <= MONOTONE_LIMIT]
        rising = all(b[1] > a[1] for a, b in zip(low, low[1:]))
        checks.append(BandCheck(
            f"{gait}_speed_monotone_to_{MONOTONE_LIMIT:g}hz", rising,
            ", ".join(f"{f:g} Hz: {v:.1f}" for f, v in low),
        ))

    peak_f, peak_v = speed_peak(speeds)
    if band is not None:
        in_f = band.frequency[0] <= peak_f <= band.frequency[1]
        in_v = band.speed[0] <= peak_v <= band.speed[1]
        checks.append(BandCheck(
            f"{gait}_peak_band", in_f and in_v,
            f"peak {peak_v:.1f} mm/s at {peak_f:g} Hz; band {band.speed} mm/s in {band.frequency} Hz",
        ))

    if quasi_static is not None:
        stride = peak_v / peak_f
        checks.append(BandCheck(
            f"{gait}_stride_exceeds_quasi_static", stride > quasi_static,
            f"stride at peak {stride:.3f} mm vs quasi-static {quasi_static:.3f} mm",
        ))
    return checks


def _cot_checks(summaries, gait: str) -> List[BandCheck]:
    checks = []
    cots = _mean_by_frequency(summaries, gait, 'cot')
    if len(cots) < 3:
        return checks

    frequencies = [f for f, _ in cots]
    values = [v for _, v in cots]
    interior = values[1:-1]
    mid_min = min(interior)
    low_cot = dict(cots).get(COT_LOW_FREQUENCY, values[0])
    u_shape = low_cot > COT_EXTREME and values[-1] > mid_min
    checks.append(BandCheck(
        f"{gait}_cot_u_shape", u_shape,
        f"CoT {low_cot:.1f} at {frequencies[0]:g} Hz, min {mid_min:.1f} mid-band, "
        f"{values[-1]:.1f} at {frequencies[-1]:g} Hz",
    ))
    checks.append(BandCheck(
        f"{gait}_cot_min_band", COT_MIN_BAND[0] <= mid_min <= COT_MIN_BAND[1],
        f"minimum CoT {mid_min:.1f}, band {COT_MIN_BAND}",
    ))
    return checks


def check_sweep_bands(summaries: Sequence[RunSummary],
                      peak_bands: Mapping[str, Band] = DEFAULT_PEAK_BANDS,
                      quasi_static_strides: Mapping[str, float] = DEFAULT_QUASI_STATIC_STRIDES
                      ) -> List[BandCheck]:
    """
    Property checks on a speed/CoT sweep, averaged over repetitions

    Gaits absent from the sweep produce no checks.

    Returns:
        One BandCheck per evaluated property
    """
    checks: List[BandCheck] = []
    gaits = sorted({s.gait for s in summaries})
    for gait in gaits:
        checks.extend(_speed_checks(summaries, gait, peak_bands.get(gait), quasi_static_strides.get(gait)))
        checks.extend(_cot_checks(summaries, gait))
    return checks
