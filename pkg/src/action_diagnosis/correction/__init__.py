"""
Experience correction from diagnoses.
"""

from .corrector import CorrectionConfig, CorrectionResult, correct_experience
from .dataset import CorrectedDataset, build_corrected_dataset, corrections_frame, write_corrections
from .gamma import sample_gamma_correction

__all__ = [
    'CorrectedDataset',
    'CorrectionConfig',
    'CorrectionResult',
    'build_corrected_dataset',
    'correct_experience',
    'corrections_frame',
    'sample_gamma_correction',
    'write_corrections'
]
