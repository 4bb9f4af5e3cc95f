# tests/unit/test_core/test_config_manager.py
import pytest

from src.core.exceptions import ConfigError
from src.utils.config import ConfigManager


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(
        "robot:\n"
        "  preset: hamr-jr\n"
        "sim:\n"
        "  timestep: 1.0e-5\n"
        "  settle_time: 0.2\n",
        encoding="utf-8",
    )
    return path


def test_get_with_dot_notation(config_file):
    manager = ConfigManager(str(config_file), load_env_file=False)
    assert manager.get("robot.preset") == "hamr-jr"
    assert manager.get("sim.timestep") == pytest.approx(1e-5)
    assert manager.get("sim.missing", 3) == 3
    assert manager.get_dict("sim") == {"timestep": 1e-5, "settle_time": 0.2}


def test_environment_overrides_nested_key(config_file, monkeypatch):
    monkeypatch.setenv("MICROROBOT_SIM__TIMESTEP", "5.0e-6")
    manager = ConfigManager(str(config_file), load_env_file=False)
    assert manager.get("sim.timestep") == pytest.approx(5e-6)


def test_line_of_section_and_key(config_file):
    manager = ConfigManager(str(config_file), load_env_file=False)
    assert manager.line_of("robot") == 1
    assert manager.line_of("sim", "settle_time") == 5


def test_malformed_yaml_reports_line(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("sim:\n  timestep: [1, 2\nrobot: {}\n", encoding="utf-8")
    with pytest.raises(ConfigError) as excinfo:
        ConfigManager(str(path), load_env_file=False)
    assert excinfo.value.line is not None


def test_from_dict_has_no_lines():
    manager = ConfigManager.from_dict({"gait": {"name": "pronk"}})
    assert manager.get("gait.name") == "pronk"
    assert manager.line_of("gait") is None
