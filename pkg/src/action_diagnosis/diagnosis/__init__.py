"""
Failure diagnosis by perturbation search.
"""

from .config import DiagnosisConfig
from .export import diagnoses_frame, write_diagnoses
from .scoring import DiagnosisScore, score_diagnosis
from .search import Diagnosis, DiagnosisRun, diagnose_batch, diagnose_once, diagnose_stable

__all__ = [
    'Diagnosis',
    'DiagnosisConfig',
    'DiagnosisRun',
    'DiagnosisScore',
    'diagnose_batch',
    'diagnose_once',
    'diagnose_stable',
    'diagnoses_frame',
    'score_diagnosis',
    'write_diagnoses'
]
