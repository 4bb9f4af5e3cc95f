# tests/unit/test_core/test_exceptions.py
from src.core.exceptions import (
    ConfigError,
    DomainError,
    ModuleException,
    SimulationDivergenceError,
    ValidationException,
)


def test_module_exception_prefixes_module():
    error = ModuleException("SCALING", "bad factor")
    assert str(error) == "[SCALING] bad factor"
    assert error.module == "SCALING"
    assert error.message == "bad factor"


def test_domain_error_is_validation_error():
    assert issubclass(DomainError, ValidationException)


def test_config_error_carries_location():
    error = ConfigError("must be positive", "sim", "timestep", 12)
    assert error.section == "sim"
    assert error.key == "timestep"
    assert error.line == 12
    assert error.message == "line 12: sim.timestep: must be positive"


def test_config_error_without_location():
    error = ConfigError("malformed YAML")
    assert error.message == "malformed YAML"
    assert error.module == "CONFIG"


def test_divergence_error_reports_step_and_time():
    error = SimulationDivergenceError("DYNAMICS", "state is no longer finite", 42, 0.5)
    assert error.step == 42
    assert error.time == 0.5
    assert "step 42" in str(error)
