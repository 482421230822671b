"""
Execution experiences: a parameterization with its success label.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from ..utils.exceptions import DataValidationError
from .space import ActionParameterization


class Provenance(str, Enum):
    """Where an experience came from."""
    OBSERVED = "observed"
    SYNTHETIC_CORRECTED = "synthetic-corrected"


@dataclass(frozen=True, eq=False)
class Experience:
    """
    One labelled action execution.

    ``label`` is the success likelihood in [0, 1]; observed experiences are
    binary. ``bbox_extents`` holds the perceived handle bounding-box full
    extents at execution time when the producer knows them.
    """

    params: ActionParameterization
    label: float
    provenance: Provenance = Provenance.OBSERVED
    cause_labels: Optional[FrozenSet[str]] = None
    bbox_extents: Optional[Tuple[float, ...]] = None
    experience_id: Optional[int] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        params = np.array(self.params, dtype=float).reshape(-1)
        if not np.all(np.isfinite(params)):
            raise DataValidationError("Experience parameters must be finite",
                                      field_name="params", component="Experience")
        params.setflags(write=False)
        object.__setattr__(self, "params", params)

        label = float(self.label)
        if not 0.0 <= label <= 1.0:
            raise DataValidationError("Experience label must lie in [0, 1]",
                                      field_name="label", invalid_value=str(label),
                                      component="Experience")
        if self.provenance is Provenance.OBSERVED and label not in (0.0, 1.0):
            raise DataValidationError("Observed experiences must be labelled 0 or 1",
                                      field_name="label", invalid_value=str(label),
                                      component="Experience")
        object.__setattr__(self, "label", label)
        if self.cause_labels is not None:
            object.__setattr__(self, "cause_labels", frozenset(self.cause_labels))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Experience):
            return NotImplemented
        return (np.array_equal(self.params, other.params)
                and self.label == other.label
                and self.provenance == other.provenance
                and self.cause_labels == other.cause_labels
                and self.bbox_extents == other.bbox_extents)

    @property
    def succeeded(self) -> bool:
        return self.label >= 1.0

    def relabelled(self, label: float, provenance: Provenance) -> "Experience":
        return replace(self, label=label, provenance=provenance)


def failures(experiences: Iterable[Experience]) -> List[Experience]:
    return [e for e in experiences if e.label == 0.0]


def successes(experiences: Iterable[Experience]) -> List[Experience]:
    return [e for e in experiences if e.label == 1.0]
