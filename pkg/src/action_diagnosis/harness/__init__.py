"""
Experiment harness: sensitivity sweeps, the correction-and-retrain
experiment and the CLI application class.
"""

from .app import DiagnosisToolkit
from .experiments import (
    ExperimentReport,
    KappaReport,
    build_reference_model,
    evaluate_model,
    run_correction_experiment,
)
from .sweeps import (
    SweepParameter,
    SweepResult,
    SweepRow,
    SweepSpec,
    compute_anchor_sigma,
    default_sweep_values,
    run_sensitivity_sweep,
    write_sweep,
)

__all__ = [
    'DiagnosisToolkit',
    'ExperimentReport',
    'KappaReport',
    'SweepParameter',
    'SweepResult',
    'SweepRow',
    'SweepSpec',
    'build_reference_model',
    'compute_anchor_sigma',
    'default_sweep_values',
    'evaluate_model',
    'run_correction_experiment',
    'run_sensitivity_sweep',
    'write_sweep'
]
