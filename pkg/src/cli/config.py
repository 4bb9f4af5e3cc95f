from contextlib import contextmanager
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple

import yaml
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.core.exceptions import ConfigError, ModuleException
from src.modules.dynamics.robot import RobotSpec
from src.modules.dynamics.state import SimConfig
from src.modules.gait.phase_table import GaitProgram, validate_gait
from src.modules.scaling.allometry import StiffnessMode
from src.modules.scaling.specs import NAMED_TRANSFORMS, AllometricTransform
from src.presets.loader import OVERRIDABLE_FIELDS, list_presets, load_preset, robot_from_dict
from src.utils.config import ConfigManager
from src.workflows.locomotion_study import DEFAULT_FREQUENCIES
from src.workflows.payload_study import DEFAULT_MULTIPLES
from src.workflows.sensing_study import SENSING_FREQUENCY


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ==================== SECTIONS ====================

class RobotSection(_Section):
    """Named preset or preset-shaped file, plus scalar overrides"""
    preset: str = "hamr-jr"
    file: Optional[str] = None
    mu: Optional[float] = Field(default=None, gt=0)
    payload: Optional[float] = Field(default=None, ge=0)
    rest_length: Optional[float] = Field(default=None, gt=0)
    belly_height: Optional[float] = Field(default=None, gt=0)
    contact_damping_ratio: Optional[float] = Field(default=None, ge=0)
    serial_compliance: Optional[float] = Field(default=None, ge=1, le=100)
    leg_length: Optional[float] = Field(default=None, gt=0)
    reference_vertical_stiffness: Optional[float] = Field(default=None, gt=0)

    @field_validator('preset')
    @classmethod
    def preset_exists(cls, value: str) -> str:
        if value not in list_presets():
            raise ValueError(f"unknown preset '{value}' (available: {', '.join(list_presets())})")
        return value

    def overrides(self) -> Dict[str, float]:
        return {key: getattr(self, key) for key in OVERRIDABLE_FIELDS if getattr(self, key) is not None}


class TransformSection(_Section):
    """Named transform, optionally with explicit factors replacing its components"""
    name: Optional[str] = "half"
    s_length: Optional[float] = Field(default=None, gt=0)
    s_width: Optional[float] = Field(default=None, gt=0)
    s_thickness: Optional[float] = Field(default=None, gt=0)
    mode: Literal["factor_sum", "component_sum"] = "factor_sum"
    scale_flexure_length: bool = False
    compare_with: Optional[str] = None

    @field_validator('name')
    @classmethod
    def transform_exists(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in NAMED_TRANSFORMS:
            raise ValueError(f"unknown transform '{value}' (available: {', '.join(NAMED_TRANSFORMS)})")
        return value

    @field_validator('compare_with')
    @classmethod
    def comparison_exists(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in list_presets():
            raise ValueError(f"unknown preset '{value}'")
        return value


class GaitSection(_Section):
    name: str = "trot"
    frequency: float = Field(default=10.0, gt=0)
    voltage: Optional[float] = Field(default=None, ge=0)
    lift_swing_phase_lead: float = Field(default=0.25, ge=0, lt=1)
    phases: Optional[Dict[str, float]] = None


class SimSection(_Section):
    """Overrides of the integration defaults; unset keys keep SimConfig's values"""
    timestep: Optional[float] = Field(default=None, gt=0)
    duration: Optional[float] = Field(default=None, gt=0)
    gravity: Optional[float] = Field(default=None, gt=0)
    initial_height: Optional[float] = Field(default=None, gt=0)
    settle_time: Optional[float] = Field(default=None, ge=0)
    sample_period: Optional[float] = Field(default=None, gt=0)
    cycles: Optional[int] = Field(default=None, ge=1)
    min_window: Optional[float] = Field(default=None, ge=0)
    seed: Optional[int] = None
    initial_jitter: Optional[float] = Field(default=None, ge=0)
    randomize_phase: Optional[bool] = None
    regularization_velocity: Optional[float] = Field(default=None, gt=0)


class SweepSection(_Section):
    gaits: List[str] = Field(default_factory=lambda: ["trot", "pronk"], min_length=1)
    frequencies: List[float] = Field(default_factory=lambda: list(DEFAULT_FREQUENCIES), min_length=1)
    repetitions: int = Field(default=5, ge=1)
    rectify: bool = True


class PayloadSection(_Section):
    multiples: List[float] = Field(default_factory=lambda: list(DEFAULT_MULTIPLES), min_length=1)
    payloads_g: Optional[List[float]] = None
    frequency: float = Field(default=10.0, gt=0)


class SensingSection(_Section):
    gait: str = "trot"
    frequency: float = Field(default=SENSING_FREQUENCY, gt=0)
    corner: Optional[float] = Field(default=None, ge=0)


class CharacterizeSection(_Section):
    drive_voltage: float = Field(default=40.0, gt=0)
    f_lo: float = Field(default=1.0, gt=0)
    f_hi: Optional[float] = Field(default=None, gt=0)
    n_points: int = Field(default=600, ge=2)
    stiffness_points: int = Field(default=50, ge=2)


class OutputSection(_Section):
    directory: str = "results"
    plots: bool = False


class ExperimentConfig(_Section):
    """Complete experiment description; every section is optional"""
    robot: RobotSection = Field(default_factory=RobotSection)
    transform: TransformSection = Field(default_factory=TransformSection)
    gait: GaitSection = Field(default_factory=GaitSection)
    sim: SimSection = Field(default_factory=SimSection)
    sweep: SweepSection = Field(default_factory=SweepSection)
    payload: PayloadSection = Field(default_factory=PayloadSection)
    sensing: SensingSection = Field(default_factory=SensingSection)
    characterize: CharacterizeSection = Field(default_factory=CharacterizeSection)
    output: OutputSection = Field(default_factory=OutputSection)

    # ==================== DOMAIN OBJECTS ====================

    def build_robot(self, manager: Optional[ConfigManager] = None) -> RobotSpec:
        with domain_errors('robot', manager):
            if self.robot.file:
                path = Path(self.robot.file)
                if not path.exists():
                    raise ConfigError(f"robot file '{path}' does not exist", 'robot', 'file',
                                      _line(manager, 'robot', 'file'))
                data = yaml.safe_load(path.read_text(encoding='utf-8')) or {}
                data.update(self.robot.overrides())
                return robot_from_dict(data)
            return load_preset(self.robot.preset, **self.robot.overrides())

    def build_comparison_robot(self, manager: Optional[ConfigManager] = None) -> Optional[RobotSpec]:
        if self.transform.compare_with is None:
            return None
        with domain_errors('transform', manager):
            return load_preset(self.transform.compare_with)

    def build_transform(self, manager: Optional[ConfigManager] = None) -> AllometricTransform:
        section = self.transform
        base = NAMED_TRANSFORMS[section.name] if section.name else AllometricTransform()
        with domain_errors('transform', manager):
            return AllometricTransform(
                section.s_length if section.s_length is not None else base.s_length,
                section.s_width if section.s_width is not None else base.s_width,
                section.s_thickness if section.s_thickness is not None else base.s_thickness,
            )

    @property
    def stiffness_mode(self) -> StiffnessMode:
        return StiffnessMode(self.transform.mode)

    def build_program(self, robot: RobotSpec, manager: Optional[ConfigManager] = None,
                      gait_name: Optional[str] = None, frequency: Optional[float] = None,
                      section: str = 'gait') -> GaitProgram:
        """Gait program from the gait section; name and frequency may be replaced by another section's"""
        gait = self.gait
        voltage = robot.rated_voltage if gait.voltage is None else gait.voltage
        frequency = gait.frequency if frequency is None else frequency
        with domain_errors(section, manager):
            if gait.phases is not None and gait_name is None:
                program = GaitProgram.custom(gait.phases, frequency, voltage,
                                             gait.lift_swing_phase_lead, robot.rated_voltage)
            else:
                program = GaitProgram.from_name(gait_name or gait.name, frequency, voltage,
                                                gait.lift_swing_phase_lead, robot.rated_voltage)
            ok, violations = validate_gait(program, robot.rated_voltage)
            if not ok:
                raise ConfigError(f"invalid gait program: {violations}", section, None,
                                  _line(manager, section))
        return program

    def build_sim_config(self, manager: Optional[ConfigManager] = None) -> SimConfig:
        values = {key: value for key, value in self.sim.model_dump().items() if value is not None}
        with domain_errors('sim', manager):
            return SimConfig(**values)

    def check_sweep_gaits(self, robot: RobotSpec, manager: Optional[ConfigManager] = None):
        """Fail early on sweep gaits without a footfall table"""
        for name in self.sweep.gaits:
            self.build_program(robot, manager, gait_name=name, frequency=self.sweep.frequencies[0],
                               section='sweep')


# ==================== PARSING ====================

def _line(manager: Optional[ConfigManager], section: Optional[str], key: Optional[str] = None) -> Optional[int]:
    if manager is None or section is None:
        return None
    return manager.line_of(section, key)


@contextmanager
def domain_errors(section: str, manager: Optional[ConfigManager] = None):
    """Re-raise domain validation failures as ConfigError anchored at a section"""
    try:
        yield
    except ConfigError:
        raise
    except (ModuleException, KeyError, TypeError) as e:
        message = e.message if isinstance(e, ModuleException) else str(e)
        raise ConfigError(message, section, None, _line(manager, section))


def _location(error: Dict) -> Tuple[Optional[str], Optional[str]]:
    loc = [str(part) for part in error.get('loc', ())]
    section = loc[0] if loc else None
    key = loc[1] if len(loc) > 1 else None
    return section, key


def parse_experiment(manager: ConfigManager) -> ExperimentConfig:
    """
    Validate a loaded config against the experiment schema

    Raises:
        ConfigError: the first schema violation, anchored at its section, key and line
    """
    try:
        return ExperimentConfig.model_validate(manager.config)
    except ValidationError as e:
        first = e.errors()[0]
        section, key = _location(first)
        line = _line(manager, section, key)
        logger.debug(f"Config validation failed with {e.error_count()} error(s)")
        raise ConfigError(first.get('msg', 'invalid value'), section, key, line)


def load_experiment(config_path: Optional[str] = None) -> Tuple[ExperimentConfig, ConfigManager]:
    """Load, override from the environment and validate an experiment config"""
    manager = ConfigManager(config_path) if config_path else ConfigManager.from_dict({})
    return parse_experiment(manager), manager
