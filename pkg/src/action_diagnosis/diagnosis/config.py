"""
Diagnosis search settings.
"""

from typing import Any, Tuple

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator


class DiagnosisConfig(BaseModel):
    """Perturbation search and stability settings."""

    model_config = ConfigDict(frozen=True)

    k_max: int = Field(default=200, ge=1, description="Samples per search region")
    sigma0: Tuple[float, ...] = Field(description="Initial per-parameter standard deviations (m)")
    r: float = Field(default=0.05, gt=0.0, description="Region expansion ratio")
    i_max: int = Field(default=50, ge=0, description="Maximum region expansions")
    n: int = Field(default=50, ge=1, description="Stability runs")
    alpha: float = Field(default=0.8, gt=0.0, le=1.0, description="Acceptance proportion")

    @field_validator('sigma0')
    @classmethod
    def validate_sigma0(cls, v):
        if not v:
            raise ValueError("sigma0 needs one entry per parameter")
        if not all(np.isfinite(s) and s > 0 for s in v):
            raise ValueError("sigma0 entries must be strictly positive")
        return tuple(float(s) for s in v)

    def sigmas(self, expansions: int) -> npt.NDArray[np.float64]:
        """Search standard deviations after ``expansions`` region expansions."""
        return np.asarray(self.sigma0) * (1.0 + self.r) ** expansions

    def with_overrides(self, **changes: Any) -> "DiagnosisConfig":
        """Validated copy with some fields replaced."""
        return DiagnosisConfig(**{**self.model_dump(), **changes})
