"""
Custom exception classes for the action diagnosis toolkit.

This module defines the exception hierarchy for the library and CLI,
providing specific error types for the different components.
"""

from typing import Optional, Dict, Any, Sequence
from datetime import datetime, timezone


class ActionDiagnosisError(Exception):
    """
    Base exception for the action diagnosis toolkit.

    All custom exceptions in the package inherit from this class.
    """

    def __init__(self, message: str, component: Optional[str] = None):
        """
        Initialize the base exception.

        Args:
            message: Error message
            component: Component where the error occurred
        """
        self.message = message
        self.component = component
        super().__init__(message)

    def __str__(self) -> str:
        """Return string representation of the error."""
        if self.component:
            return f"[{self.component}] {self.message}"
        return self.message


class EnhancedActionDiagnosisError(ActionDiagnosisError):
    """
    Base exception carrying an error code and debugging context.
    """

    def __init__(self, message: str, error_code: Optional[str] = None,
                 context: Optional[Dict[str, Any]] = None,
                 component: Optional[str] = None):
        """
        Initialize enhanced exception.

        Args:
            message: Error message
            error_code: Error code for programmatic handling
            context: Additional context information for debugging
            component: Component where the error occurred
        """
        self.error_code = error_code
        self.context = context or {}
        self.timestamp = datetime.now(timezone.utc).isoformat()
        super().__init__(message, component)

    def __str__(self) -> str:
        base_str = super().__str__()
        if self.error_code:
            base_str += f" [Code: {self.error_code}]"
        return base_str

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for serialization."""
        return {
            "message": self.message,
            "error_code": self.error_code,
            "context": self.context,
            "component": self.component,
            "timestamp": self.timestamp,
            "exception_type": self.__class__.__name__
        }


class ConfigurationError(ActionDiagnosisError):
    """
    Configuration-related errors.

    Raised for missing settings, invalid values, unreadable files, or a
    scene and vocabulary that violate the alignment contract.
    """

    def __init__(self, message: str, config_section: Optional[str] = None,
                 config_key: Optional[str] = None, component: str = "Configuration"):
        self.config_section = config_section
        self.config_key = config_key
        super().__init__(message, component)

    def __str__(self) -> str:
        base_str = super().__str__()
        if self.config_section and self.config_key:
            base_str += f" (Section: {self.config_section}, Key: {self.config_key})"
        elif self.config_section:
            base_str += f" (Section: {self.config_section})"
        return base_str


class DataValidationError(ActionDiagnosisError):
    """
    Data validation errors.

    Raised when values fail validation: duplicate parameter names, inverted
    bounds, dimension mismatches, labels outside [0, 1].
    """

    def __init__(self, message: str, field_name: Optional[str] = None,
                 invalid_value: Optional[str] = None, component: str = "DataValidation"):
        """
        Initialize data validation error.

        Args:
            message: Error message
            field_name: Name of the field that failed validation
            invalid_value: The invalid value that caused the error
            component: Component name (defaults to "DataValidation")
        """
        self.field_name = field_name
        self.invalid_value = invalid_value
        super().__init__(message, component)

    def __str__(self) -> str:
        base_str = super().__str__()
        if self.field_name:
            base_str += f" (Field: {self.field_name}"
            if self.invalid_value:
                base_str += f", Value: {self.invalid_value}"
            base_str += ")"
        return base_str


class DimensionMismatchError(DataValidationError):
    """Raised when a parameterization does not match its parameter space."""

    def __init__(self, expected: int, actual: int, component: str = "DataValidation"):
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"Dimension mismatch: expected {expected} parameters, got {actual}",
            field_name="dimension",
            invalid_value=str(actual),
            component=component
        )


class UnknownRelationError(DataValidationError):
    """Raised when a relation name is not part of the vocabulary."""

    def __init__(self, names: Sequence[str], component: str = "Relations"):
        self.names = sorted(names)
        super().__init__(
            f"Unknown relation(s): {', '.join(self.names)}",
            field_name="relation",
            invalid_value=", ".join(self.names),
            component=component
        )


class UnknownModeError(DataValidationError):
    """Raised when a qualitative mode id is not part of a precondition model."""

    def __init__(self, mode: Any, component: str = "Preconditions"):
        self.mode = mode
        super().__init__(
            f"Unknown qualitative mode: {mode}",
            field_name="mode",
            invalid_value=str(mode),
            component=component
        )


class EmptyDatasetError(DataValidationError):
    """Raised when an operation needs at least one experience and got none."""

    def __init__(self, message: str, component: str = "DataValidation"):
        super().__init__(message, field_name="experiences", invalid_value="[]",
                         component=component)


class ModelFitError(EnhancedActionDiagnosisError):
    """
    Success model fitting errors.

    Raised when the kernel matrix cannot be factorized even after the
    maximum diagonal jitter.
    """

    def __init__(self, message: str, jitter: Optional[float] = None,
                 condition_estimate: Optional[float] = None):
        self.jitter = jitter
        self.condition_estimate = condition_estimate
        context = {"jitter": jitter, "condition_estimate": condition_estimate}
        super().__init__(message, error_code="FIT_001", context=context,
                         component="SuccessModel")

    def __str__(self) -> str:
        base_str = super().__str__()
        if self.condition_estimate is not None:
            base_str += f" (condition ~ {self.condition_estimate:.3e})"
        return base_str


class ExperimentError(ActionDiagnosisError):
    """Raised for invalid experiment requests such as zero evaluation trials."""

    def __init__(self, message: str, component: str = "Harness"):
        super().__init__(message, component)
