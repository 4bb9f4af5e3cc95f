import sys
from pathlib import Path
from typing import Optional

import yaml
from loguru import logger

DEFAULT_FORMAT = (
    "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)


def setup_logging(config_path: Optional[str] = "config/logging.yaml",
                  level: Optional[str] = None):
    """
    Configure loguru sinks from a YAML file

    Args:
        config_path: Logging config (missing file falls back to defaults)
        level: Overrides the configured console level
    """
    settings = {}
    if config_path and Path(config_path).exists():
        with open(config_path, 'r', encoding='utf-8') as f:
            settings = (yaml.safe_load(f) or {}).get('logging', {})

    console = settings.get('console', {})
    logger.remove()
    logger.add(
        sys.stderr,
        level=level or console.get('level', 'INFO'),
        format=console.get('format', DEFAULT_FORMAT),
        colorize=console.get('colorize', None),
    )

    file_sink = settings.get('file', {})
    if file_sink.get('enabled'):
        logger.add(
            file_sink.get('path', 'logs/microrobot.log'),
            level=file_sink.get('level', 'DEBUG'),
            rotation=file_sink.get('rotation', '10 MB'),
            retention=file_sink.get('retention', 5),
            enqueue=False,
        )

    logger.debug(f"Logging configured (console level {level or console.get('level', 'INFO')})")
