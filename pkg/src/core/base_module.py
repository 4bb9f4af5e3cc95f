from abc import ABC, abstractmethod
from typing import List, Tuple

from src.core.exceptions import ValidationException


class ValidatedSpec(ABC):
    """
    Abstract base class for all domain value types
    Provides the common validation interface
    """

    module_name: str = "CORE"

    @abstractmethod
    def validate_data(self) -> Tuple[bool, List[str]]:
        """
        Validate field values against the type's invariants

        Returns:
            (is_valid, list_of_errors)
        """
        pass

    def ensure_valid(self):
        """Raise ValidationException listing every violated invariant"""
        is_valid, errors = self.validate_data()
        if not is_valid:
            raise ValidationException(
                self.module_name,
                f"{type(self).__name__} validation failed: {errors}"
            )
