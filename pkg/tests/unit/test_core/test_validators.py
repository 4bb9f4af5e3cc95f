# tests/unit/test_core/test_validators.py
import math

import pytest

from src.core.validators import (
    relative_close,
    require_distinct,
    require_in_range,
    require_non_negative,
    require_positive,
    require_strictly_increasing,
)


@pytest.mark.parametrize("value", [0, -1.0, math.nan, math.inf, "3", True])
def test_require_positive_rejects(value):
    errors = []
    require_positive(errors, "x", value)
    assert len(errors) == 1


def test_require_positive_accepts():
    errors = []
    require_positive(errors, "x", 1e-12)
    assert errors == []


def test_require_non_negative_accepts_zero():
    errors = []
    require_non_negative(errors, "x", 0.0)
    assert errors == []


def test_require_in_range_half_open():
    errors = []
    require_in_range(errors, "phase", 1.0, 0.0, 1.0, high_inclusive=False)
    assert errors and "[0.0, 1.0)" in errors[0]

    errors = []
    require_in_range(errors, "voltage", 200.0, 0.0, 200.0)
    assert errors == []


def test_require_strictly_increasing():
    errors = []
    require_strictly_increasing(errors, "f", [1.0, 2.0, 2.0])
    assert errors == ["f must be strictly increasing (index 2)"]


def test_require_distinct():
    errors = []
    require_distinct(errors, "legs", ["FL", "FL"])
    assert len(errors) == 1


def test_relative_close():
    assert relative_close(1.0, 1.0 + 1e-12, 1e-9)
    assert not relative_close(1.0, 1.1, 1e-3)
    assert relative_close(0.0, 0.0, 1e-9)
