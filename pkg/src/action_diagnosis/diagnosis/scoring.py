"""
Diagnosis scoring against ground-truth relations.
"""

from typing import AbstractSet, NamedTuple, Union

from .search import Diagnosis, DiagnosisRun


class DiagnosisScore(NamedTuple):
    true_positives: int
    false_positives: int
    false_negatives: int


def score_diagnosis(predicted: Union[Diagnosis, DiagnosisRun, AbstractSet[str]],
                    truth: AbstractSet[str]) -> DiagnosisScore:
    """Set comparison of predicted candidates with the true relation set."""
    candidates = set(getattr(predicted, "candidates", predicted))
    truth = set(truth)
    return DiagnosisScore(len(candidates & truth), len(candidates - truth), len(truth - candidates))
