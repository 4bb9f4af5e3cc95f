import math
from typing import Iterable, List, Sequence


def require_positive(errors: List[str], name: str, value: float) -> None:
    """Append an error unless value is a finite number > 0"""
    if not _is_number(value) or not math.isfinite(value) or value <= 0:
        errors.append(f"{name} must be positive, got {value!r}")


def require_non_negative(errors: List[str], name: str, value: float) -> None:
    """Append an error unless value is a finite number >= 0"""
    if not _is_number(value) or not math.isfinite(value) or value < 0:
        errors.append(f"{name} must be non-negative, got {value!r}")


def require_in_range(errors: List[str], name: str, value: float,
                     low: float, high: float, high_inclusive: bool = True) -> None:
    """Append an error unless low <= value <= high (or < high)"""
    if not _is_number(value) or not math.isfinite(value):
        errors.append(f"{name} must be a finite number, got {value!r}")
        return
    upper_ok = value <= high if high_inclusive else value < high
    if value < low or not upper_ok:
        bracket = "]" if high_inclusive else ")"
        errors.append(f"{name} must lie in [{low}, {high}{bracket}, got {value!r}")


def require_strictly_increasing(errors: List[str], name: str,
                                values: Sequence[float]) -> None:
    """Append an error unless values are strictly increasing"""
    for idx in range(1, len(values)):
        if not values[idx] > values[idx - 1]:
            errors.append(f"{name} must be strictly increasing (index {idx})")
            return


def require_distinct(errors: List[str], name: str, values: Iterable) -> None:
    """Append an error when values contain duplicates"""
    seen = list(values)
    if len(set(seen)) != len(seen):
        errors.append(f"{name} must be distinct, got {seen!r}")


def relative_close(a: float, b: float, rel: float) -> bool:
    """True when a and b agree to a relative tolerance"""
    scale = max(abs(a), abs(b))
    if scale == 0:
        return True
    return abs(a - b) <= rel * scale


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)
