"""
Correcting a failed execution.

The stable diagnosis gives the falsifying parameterization. Candidate
updates move each diagnosed coordinate away from the falsifying value by
a gamma-distributed step; candidates that satisfy the mode's
preconditions are scored by the success model and the best one is the
correction.
"""

from dataclasses import dataclass
from typing import Hashable, Optional

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field

from ..core.rng import RngHandle
from ..core.space import ActionParameterization, as_parameterization
from ..diagnosis.config import DiagnosisConfig
from ..diagnosis.search import Diagnosis, diagnose_stable
from ..execution_model.model import ExecutionModel
from ..relations.conflicts import satisfies_many
from ..success_model.gp import predict_many
from ..utils.logging import get_logger
from .gamma import sample_gamma_correction

logger = get_logger(__name__)


class CorrectionConfig(BaseModel):
    """Correction settings."""

    model_config = ConfigDict(frozen=True)

    s_max: int = Field(default=10, ge=1, description="Candidate updates per failure")
    kappa: float = Field(default=2.0, ge=1.0, description="Gamma shape")
    diagnosis: DiagnosisConfig


@dataclass(frozen=True, eq=False)
class CorrectionResult:
    """
    Outcome of correcting one failure.

    ``candidates`` keeps every generated (clamped) candidate; ``valid``
    marks those satisfying the preconditions and ``scores`` holds their
    predicted success (NaN for invalid ones).
    """

    corrected: Optional[ActionParameterization]
    predicted: Optional[float]
    candidates_valid: int
    diagnosis: Diagnosis
    candidates: npt.NDArray[np.float64]
    valid: npt.NDArray[np.bool_]
    scores: npt.NDArray[np.float64]

    @property
    def found(self) -> bool:
        return self.corrected is not None


def correct_experience(model: ExecutionModel, mode: Hashable, x: ActionParameterization,
                       cfg: CorrectionConfig, rng: RngHandle, workers: int = 1) -> CorrectionResult:
    """
    Propose a corrected parameterization for a failed execution.

    Args:
        model: Execution model
        mode: Qualitative mode q
        x: Failed parameterization
        cfg: Correction settings
        rng: Random stream
        workers: Threads for the stability runs

    Returns:
        CorrectionResult: ``corrected`` is None when the diagnosis is empty,
        no diagnosed coordinate moved, or no candidate passed the
        precondition check
    """
    x = as_parameterization(model.space, x)
    diagnosis_rng, update_rng = rng.split(2)
    diagnosis = diagnose_stable(model, mode, x, cfg.diagnosis, diagnosis_rng, workers)

    candidates = np.tile(x, (cfg.s_max, 1))
    delta = diagnosis.falsifying - x
    moved = False
    for p in sorted({model.vocab.parameter_of(d) for d in diagnosis.candidates}):
        if delta[p] == 0.0:
            continue
        candidates[:, p] = x[p] + sample_gamma_correction(delta[p], cfg.kappa, update_rng,
                                                          size=cfg.s_max)
        moved = True
    candidates = np.clip(candidates, model.space.lower, model.space.upper)

    if moved:
        required = model.preconditions.required(mode)
        valid = satisfies_many(model.vocab, required, candidates)
        valid &= np.any(candidates != x, axis=1)
    else:
        valid = np.zeros(cfg.s_max, dtype=bool)

    scores = np.full(cfg.s_max, np.nan)
    if valid.any():
        scores[valid] = predict_many(model.success, candidates[valid])

    candidates.setflags(write=False)
    if not valid.any():
        logger.debug(f"No valid correction (diagnosis: {sorted(diagnosis.candidates)})")
        return CorrectionResult(None, None, 0, diagnosis, candidates, valid, scores)

    indices = np.flatnonzero(valid)
    best = int(indices[np.argmax(scores[indices])])
    return CorrectionResult(candidates[best], float(scores[best]), int(valid.sum()),
                            diagnosis, candidates, valid, scores)
