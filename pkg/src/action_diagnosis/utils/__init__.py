"""
Utility modules for the action diagnosis toolkit.

This module contains logging setup and the exception hierarchy.
"""

from .exceptions import (
    ActionDiagnosisError,
    ConfigurationError,
    DataValidationError,
    DimensionMismatchError,
    EmptyDatasetError,
    ExperimentError,
    ModelFitError,
    UnknownModeError,
    UnknownRelationError,
)
from .logging import get_logger, setup_logging

__all__ = [
    'ActionDiagnosisError',
    'ConfigurationError',
    'DataValidationError',
    'DimensionMismatchError',
    'EmptyDatasetError',
    'ExperimentError',
    'ModelFitError',
    'UnknownModeError',
    'UnknownRelationError',
    'get_logger',
    'setup_logging'
]
