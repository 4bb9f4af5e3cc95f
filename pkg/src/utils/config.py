import os
import yaml
from typing import Any, Dict, Optional
from pathlib import Path

from dotenv import load_dotenv

from src.core.exceptions import ConfigError

ENV_PREFIX = "MICROROBOT_"


class ConfigManager:
    """Centralized configuration management"""

    def __init__(self, config_path: Optional[str] = "config/config.yaml",
                 env_prefix: str = ENV_PREFIX, load_env_file: bool = True):
        self.config_path = Path(config_path) if config_path else None
        self.env_prefix = env_prefix
        self.text = ""
        if load_env_file:
            load_dotenv(override=False)
        self.config = self._load_config()
        self._override_from_env()

    @classmethod
    def from_dict(cls, data: Dict, env_prefix: str = ENV_PREFIX) -> "ConfigManager":
        """Build a manager around an in-memory mapping (env overrides still apply)"""
        manager = cls(config_path=None, env_prefix=env_prefix, load_env_file=False)
        manager.config = dict(data)
        manager._override_from_env()
        return manager

    def _load_config(self) -> Dict:
        """Load configuration from YAML"""
        if self.config_path is None or not self.config_path.exists():
            return {}

        with open(self.config_path, 'r', encoding='utf-8') as f:
            self.text = f.read()

        try:
            data = yaml.safe_load(self.text) or {}
        except yaml.MarkedYAMLError as e:
            line = e.problem_mark.line + 1 if e.problem_mark else None
            raise ConfigError(f"malformed YAML: {e.problem}", line=line)

        if not isinstance(data, dict):
            raise ConfigError("top level must be a mapping of sections", line=1)
        return data

    def _override_from_env(self):
        """Override config with environment variables"""
        # MICROROBOT_SIM__TIMESTEP=5.0e-6 overrides sim.timestep
        for key, value in sorted(os.environ.items()):
            if key.startswith(self.env_prefix):
                config_key = key[len(self.env_prefix):].replace('__', '.').lower()
                self._set_nested(self.config, config_key, yaml.safe_load(value))

    @staticmethod
    def _set_nested(target: Dict, dotted_key: str, value: Any):
        keys = dotted_key.split('.')
        for k in keys[:-1]:
            node = target.get(k)
            if not isinstance(node, dict):
                node = {}
                target[k] = node
            target = node
        target[keys[-1]] = value

    def get(self, key: str, default: Any = None) -> Any:
        """Get config value using dot notation"""
        keys = key.split('.')
        value = self.config

        for k in keys:
            if isinstance(value, dict):
                value = value.get(k)
            else:
                return default

        return value if value is not None else default

    def get_dict(self, key: str) -> Dict:
        """Get nested dictionary"""
        result = self.get(key, {})
        return result if isinstance(result, dict) else {}

    def line_of(self, section: str, key: Optional[str] = None) -> Optional[int]:
        """1-based line of section (or section.key) in the loaded file, if known"""
        if not self.text:
            return None
        try:
            node = yaml.compose(self.text)
        except yaml.YAMLError:
            return None
        line = None
        for part in (section, key):
            if part is None or not isinstance(node, yaml.MappingNode):
                break
            for key_node, value_node in node.value:
                if key_node.value == part:
                    line = key_node.start_mark.line + 1
                    node = value_node
                    break
            else:
                break
        return line
