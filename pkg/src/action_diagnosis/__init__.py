"""
Action Diagnosis

Diagnoses failed executions of parameterized actions by searching for
precondition violations around the failed parameters, and turns failures
into synthetic successful experiences for retraining a success model.
Ships a handle-grasp simulator for reproducible experiments.
"""

__version__ = "0.1.0"

from .core import Experience, ParameterSpace, RngHandle, make_space
from .correction import correct_experience
from .diagnosis import DiagnosisConfig, diagnose_once, diagnose_stable
from .execution_model import ExecutionModel, learn_preconditions, sample_execution
from .success_model import fit_success_model, predict_success

__all__ = [
    'DiagnosisConfig',
    'ExecutionModel',
    'Experience',
    'ParameterSpace',
    'RngHandle',
    'correct_experience',
    'diagnose_once',
    'diagnose_stable',
    'fit_success_model',
    'learn_preconditions',
    'make_space',
    'predict_success',
    'sample_execution'
]
