# tests/unit/test_core/test_base_module.py
from dataclasses import dataclass
from typing import List, Tuple

import pytest

from src.core.base_module import ValidatedSpec
from src.core.decorators import log_execution_time
from src.core.exceptions import ValidationException


@dataclass(frozen=True)
class Window(ValidatedSpec):
    start: float
    end: float

    module_name = "TEST"

    def validate_data(self) -> Tuple[bool, List[str]]:
        errors = []
        if not self.end > self.start:
            errors.append("end must exceed start")
        return len(errors) == 0, errors


def test_valid_spec_passes():
    Window(0.0, 1.0).ensure_valid()


def test_invalid_spec_lists_errors():
    with pytest.raises(ValidationException) as excinfo:
        Window(1.0, 0.0).ensure_valid()
    assert excinfo.value.module == "TEST"
    assert "end must exceed start" in excinfo.value.message


def test_log_execution_time_returns_result():
    @log_execution_time("double")
    def double(x):
        return 2 * x

    assert double(21) == 42
    assert double.__name__ == "double"
