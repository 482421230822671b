"""
Gaussian-process success likelihood model F.
"""

from .gp import (
    GpHyperparams,
    SuccessModel,
    default_hyperparams,
    fit_arrays,
    fit_success_model,
    kernel,
    predict_many,
    predict_success,
    refit_with_synthetic,
)
from .io import dump_success_model, load_success_model, read_success_model, write_success_model

__all__ = [
    'GpHyperparams',
    'SuccessModel',
    'default_hyperparams',
    'dump_success_model',
    'fit_arrays',
    'fit_success_model',
    'kernel',
    'load_success_model',
    'predict_many',
    'predict_success',
    'read_success_model',
    'refit_with_synthetic',
    'write_success_model'
]
