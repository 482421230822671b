"""
Centralized error categorization for the action diagnosis CLI.

The ErrorHandler maps exceptions to categories, standard messages, error
codes and process exit codes so every command reports failures the same way.
"""

from typing import Any, Dict, Optional

from .exceptions import (
    ActionDiagnosisError,
    ConfigurationError,
    DataValidationError,
    EmptyDatasetError,
    EnhancedActionDiagnosisError,
    ExperimentError,
    ModelFitError,
    UnknownModeError,
    UnknownRelationError,
)
from .logging import ErrorLogger, get_logger


class ErrorHandler:
    """
    Centralized error handler.

    Provides error categorization, standard message generation and
    exit-code selection.
    """

    STANDARD_MESSAGES = {
        "CONFIGURATION_ERROR": "Configuration error - please check settings.",
        "VOCABULARY_ERROR": "Relation vocabulary or mode is inconsistent.",
        "EMPTY_DATASET_ERROR": "Not enough experiences to run this step.",
        "DATA_VALIDATION_ERROR": "Input data failed validation.",
        "MODEL_FIT_ERROR": "Success model could not be fitted.",
        "EXPERIMENT_ERROR": "Experiment request is invalid.",
        "APPLICATION_ERROR": "Action diagnosis failed.",
        "UNKNOWN_ERROR": "An unexpected error occurred."
    }

    ERROR_CODES = {
        "CONFIGURATION_ERROR": "CONFIG_001",
        "VOCABULARY_ERROR": "VOCAB_001",
        "EMPTY_DATASET_ERROR": "DATA_002",
        "DATA_VALIDATION_ERROR": "DATA_001",
        "MODEL_FIT_ERROR": "FIT_001",
        "EXPERIMENT_ERROR": "EXP_001",
        "APPLICATION_ERROR": "APP_001",
        "UNKNOWN_ERROR": "UNK_001"
    }

    EXIT_CODES = {
        "CONFIGURATION_ERROR": 1,
        "VOCABULARY_ERROR": 2,
        "EMPTY_DATASET_ERROR": 3,
        "DATA_VALIDATION_ERROR": 3,
        "MODEL_FIT_ERROR": 4,
        "EXPERIMENT_ERROR": 5,
        "APPLICATION_ERROR": 6,
        "UNKNOWN_ERROR": 99
    }

    def __init__(self, logger_name: str = "error_handler"):
        self.logger = get_logger(logger_name)
        self.error_logger = ErrorLogger(logger_name)

    def categorize_error(self, error: Exception) -> str:
        """
        Categorize errors for appropriate handling.

        Args:
            error: The exception to categorize

        Returns:
            str: Error category string
        """
        if isinstance(error, ConfigurationError):
            return "CONFIGURATION_ERROR"
        elif isinstance(error, (UnknownRelationError, UnknownModeError)):
            return "VOCABULARY_ERROR"
        elif isinstance(error, EmptyDatasetError):
            return "EMPTY_DATASET_ERROR"
        elif isinstance(error, DataValidationError):
            return "DATA_VALIDATION_ERROR"
        elif isinstance(error, ModelFitError):
            return "MODEL_FIT_ERROR"
        elif isinstance(error, ExperimentError):
            return "EXPERIMENT_ERROR"
        elif isinstance(error, ActionDiagnosisError):
            return "APPLICATION_ERROR"
        return "UNKNOWN_ERROR"

    def get_standard_error_message(self, error_type: str) -> str:
        return self.STANDARD_MESSAGES.get(error_type, self.STANDARD_MESSAGES["UNKNOWN_ERROR"])

    def get_error_code(self, error_type: str) -> str:
        return self.ERROR_CODES.get(error_type, self.ERROR_CODES["UNKNOWN_ERROR"])

    def get_exit_code(self, error: Exception) -> int:
        """Process exit code for an error raised out of a CLI command."""
        return self.EXIT_CODES[self.categorize_error(error)]

    def create_enhanced_error(self, original_error: Exception,
                              additional_context: Optional[Dict[str, Any]] = None
                              ) -> EnhancedActionDiagnosisError:
        """
        Wrap an error with its category, code and context.

        Args:
            original_error: The original exception
            additional_context: Additional context to include

        Returns:
            EnhancedActionDiagnosisError: Enhanced error with full metadata
        """
        error_type = self.categorize_error(original_error)
        context = dict(additional_context or {})
        context.update({
            "original_error_type": type(original_error).__name__,
            "original_error_message": str(original_error),
            "error_category": error_type,
        })
        for attribute in ("field_name", "invalid_value", "config_section", "config_key"):
            value = getattr(original_error, attribute, None)
            if value is not None:
                context[attribute] = value

        return EnhancedActionDiagnosisError(
            message=self.get_standard_error_message(error_type),
            error_code=self.get_error_code(error_type),
            context=context,
            component=getattr(original_error, 'component', None)
        )

    def handle(self, error: Exception, component: str) -> int:
        """
        Log an error raised by a CLI command and return the exit code.

        Args:
            error: The exception that occurred
            component: Command or component in which it surfaced

        Returns:
            int: Process exit code
        """
        enhanced = self.create_enhanced_error(error, {"command": component})
        self.error_logger.log_error_with_context(error, component, enhanced.to_dict())
        return self.get_exit_code(error)
