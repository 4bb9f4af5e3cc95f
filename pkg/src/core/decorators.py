import time
from functools import wraps
from typing import Callable

from loguru import logger


def log_execution_time(label: str = None) -> Callable:
    """Log wall-clock duration of the wrapped call at DEBUG level"""
    def decorator(func: Callable) -> Callable:
        name = label or func.__name__

        @wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                elapsed = time.perf_counter() - start
                logger.debug(f"{name} finished in {elapsed:.3f}s")
        return wrapper
    return decorator
