"""
Execution model: relational preconditions R and success model F.
"""

from .model import (
    ExecutionModel,
    ExecutionModelBundle,
    load_execution_model,
    sample_execution,
    save_execution_model,
)
from .preconditions import (
    DEFAULT_BETA,
    DEFAULT_MODE,
    PreconditionModel,
    learn_mode_preconditions,
    learn_preconditions,
    make_preconditions,
    mode_id,
)

__all__ = [
    'DEFAULT_BETA',
    'DEFAULT_MODE',
    'ExecutionModel',
    'ExecutionModelBundle',
    'PreconditionModel',
    'learn_mode_preconditions',
    'learn_preconditions',
    'load_execution_model',
    'make_preconditions',
    'mode_id',
    'sample_execution',
    'save_execution_model'
]
