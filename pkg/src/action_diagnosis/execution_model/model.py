"""
Execution model M = (R, F) and rejection-sampling execution.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Hashable, List, Optional, Union

import numpy as np
from pydantic import BaseModel, Field

from ..core.rng import RngHandle
from ..core.space import ActionParameterization, ParameterDef, ParameterSpace, make_space
from ..relations.conflicts import satisfies_many
from ..relations.vocabulary import RelationDef, RelationVocabulary, make_vocabulary, relation
from ..success_model.gp import SuccessModel, predict_many
from ..success_model.io import dump_success_model, load_success_model
from ..utils.exceptions import ConfigurationError, DataValidationError, DimensionMismatchError
from ..utils.logging import get_logger
from .preconditions import PreconditionModel, make_preconditions

logger = get_logger(__name__)

PROPOSAL_BATCH = 4096


@dataclass(frozen=True)
class ExecutionModel:
    """Relational preconditions plus success model over one parameter space."""

    space: ParameterSpace
    vocab: RelationVocabulary
    preconditions: PreconditionModel
    success: SuccessModel

    def __post_init__(self) -> None:
        if self.vocab.space != self.space:
            raise DataValidationError("Vocabulary is defined over a different parameter space",
                                      field_name="vocab", component="ExecutionModel")
        if self.success.dim != self.space.dim:
            raise DimensionMismatchError(self.space.dim, self.success.dim,
                                         component="ExecutionModel")
        for _, names in self.preconditions.modes:
            self.vocab.check_known(names)

    def with_success(self, success: SuccessModel) -> "ExecutionModel":
        """Same relational model, different F."""
        return ExecutionModel(self.space, self.vocab, self.preconditions, success)


def sample_execution(model: ExecutionModel, mode: Hashable, max_iter: int,
                     rng: RngHandle, batch_size: int = PROPOSAL_BATCH
                     ) -> Optional[ActionParameterization]:
    """
    Draw an executable parameterization for ``mode``.

    Candidates are proposed uniformly over the space and accepted with
    probability predicted success / highest prediction so far (a running
    maximum of zero rejects); accepted candidates must then hold exactly
    the relations the mode requires.

    Args:
        model: Execution model
        mode: Qualitative mode q
        max_iter: Maximum number of candidates
        rng: Random stream
        batch_size: Candidates proposed per vectorized batch

    Returns:
        The first accepted parameterization, or None after ``max_iter``
        candidates
    """
    if max_iter < 1:
        raise DataValidationError("max_iter must be at least 1", field_name="max_iter",
                                  invalid_value=str(max_iter), component="ExecutionModel")
    required = model.preconditions.required(mode)
    lower, upper = model.space.lower, model.space.upper

    running_max = 0.0
    drawn = 0
    while drawn < max_iter:
        n = min(batch_size, max_iter - drawn)
        candidates = rng.uniform(lower, upper, size=(n, model.space.dim))
        u = rng.random(n)
        scores = predict_many(model.success, candidates)

        maxima = np.maximum.accumulate(np.concatenate(([running_max], scores)))[1:]
        accepted = (maxima > 0.0) & (u * maxima < scores)
        accepted &= satisfies_many(model.vocab, required, candidates)

        hits = np.flatnonzero(accepted)
        if hits.size:
            x = candidates[hits[0]]
            x.setflags(write=False)
            logger.debug(f"Sampled execution after {drawn + hits[0] + 1} candidates")
            return x
        running_max = float(maxima[-1])
        drawn += n

    logger.debug(f"No executable parameterization within {max_iter} candidates")
    return None


class ParameterRecord(BaseModel):
    name: str
    lower: float
    upper: float
    unit: str = "m"


class RelationRecord(BaseModel):
    name: str
    parameter: str
    kind: str
    thresholds: List[float]
    group: Optional[str] = None


class ExecutionModelBundle(BaseModel):
    """On-disk JSON form of an ExecutionModel."""

    format_version: int = Field(default=1, ge=1, le=1)
    parameters: List[ParameterRecord]
    relations: List[RelationRecord]
    modes: Dict[str, List[str]]
    success_model: str = Field(description="Plain-text success model dump")

    @classmethod
    def from_model(cls, model: ExecutionModel) -> "ExecutionModelBundle":
        names = model.space.names
        return cls(
            parameters=[ParameterRecord(name=p.name, lower=p.lower, upper=p.upper, unit=p.unit)
                        for p in model.space.params],
            relations=[RelationRecord(name=r.name, parameter=names[r.parameter],
                                      kind=r.kind.value, thresholds=list(r.thresholds),
                                      group=r.group)
                       for r in model.vocab.relations],
            modes={str(q): sorted(names_q) for q, names_q in model.preconditions.modes},
            success_model=dump_success_model(model.success),
        )

    def to_model(self) -> ExecutionModel:
        space = make_space([ParameterDef(p.name, p.lower, p.upper, p.unit)
                            for p in self.parameters])
        relations: List[RelationDef] = [
            relation(space, r.name, r.parameter, r.kind, r.thresholds, r.group)
            for r in self.relations
        ]
        vocab = make_vocabulary(space, relations)
        preconditions = make_preconditions(vocab, self.modes)
        return ExecutionModel(space, vocab, preconditions, load_success_model(self.success_model))


def save_execution_model(model: ExecutionModel, path: Union[str, Path]) -> Path:
    """Write ``model`` as a JSON bundle."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(ExecutionModelBundle.from_model(model).model_dump_json(indent=2),
                    encoding="utf-8")
    logger.info(f"Execution model saved to {path}")
    return path


def load_execution_model(path: Union[str, Path]) -> ExecutionModel:
    """
    Read a JSON bundle written by save_execution_model.

    Raises:
        ConfigurationError: If the file is missing or not a valid bundle
    """
    path = Path(path)
    try:
        bundle = ExecutionModelBundle.model_validate_json(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigurationError(f"Execution model file not found: {path}",
                                 component="ExecutionModel") from None
    except ValueError as e:
        raise ConfigurationError(f"Invalid execution model file {path}: {e}",
                                 component="ExecutionModel") from e
    return bundle.to_model()
