from typing import Optional


class ModuleException(Exception):
    """Base exception for module operations"""
    def __init__(self, module: str, message: str):
        self.module = module
        self.message = message
        super().__init__(f"[{module}] {message}")


class ValidationException(ModuleException):
    """Exception raised when data validation fails"""
    pass


class DomainError(ValidationException):
    """Exception raised when an argument lies outside an operation's domain"""
    pass


class FitError(ModuleException):
    """Exception raised when a model cannot be fitted to samples"""
    pass


class UnsupportedGaitError(ModuleException):
    """Exception raised for gaits without a footfall definition"""
    pass


class SimulationDivergenceError(ModuleException):
    """Exception raised when the integrated state stops being finite"""
    def __init__(self, module: str, message: str, step: int, time: float):
        self.step = step
        self.time = time
        super().__init__(module, f"{message} (step {step}, t={time:.6f} s)")


class UndefinedMetricError(ModuleException):
    """Exception raised when a metric has no defined value for the input"""
    pass


class ConfigError(ModuleException):
    """
    Exception raised for malformed experiment configuration

    Carries the section/key that failed and, when known, the 1-based line
    in the source file.
    """
    def __init__(self, message: str, section: Optional[str] = None,
                 key: Optional[str] = None, line: Optional[int] = None):
        self.section = section
        self.key = key
        self.line = line
        location = ".".join(p for p in (section, key) if p)
        prefix = f"line {line}: " if line is not None else ""
        where = f"{location}: " if location else ""
        super().__init__("CONFIG", f"{prefix}{where}{message}")


class OutputError(ModuleException):
    """Exception raised when results cannot be written"""
    pass
