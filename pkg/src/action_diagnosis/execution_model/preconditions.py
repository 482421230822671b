"""
Relational precondition model: required relations per qualitative mode.

Each qualitative mode maps to the exact set of relations that must hold
for the action to succeed in that mode.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, Mapping, Sequence, Tuple

import numpy as np

from ..core.experience import Experience
from ..relations.conflicts import remove_conflicts
from ..relations.vocabulary import RelationVocabulary, truth_matrix
from ..utils.exceptions import DataValidationError, EmptyDatasetError, UnknownModeError
from ..utils.logging import get_logger

logger = get_logger(__name__)

DEFAULT_MODE = 1
DEFAULT_BETA = 0.95


def mode_id(value: Hashable) -> Hashable:
    """Normalize a mode id read from text: digit strings become ints."""
    if isinstance(value, str) and value.strip().isdigit():
        return int(value)
    return value


@dataclass(frozen=True)
class PreconditionModel:
    """Mode id -> required relation set."""

    modes: Tuple[Tuple[Hashable, FrozenSet[str]], ...]

    def required(self, mode: Hashable) -> FrozenSet[str]:
        """
        Relations required in ``mode``.

        Raises:
            UnknownModeError: If ``mode`` is not part of the model
        """
        mode = mode_id(mode)
        for q, relations in self.modes:
            if q == mode:
                return relations
        raise UnknownModeError(mode)

    @property
    def mode_ids(self) -> Tuple[Hashable, ...]:
        return tuple(q for q, _ in self.modes)


def make_preconditions(vocab: RelationVocabulary,
                       modes: Mapping[Hashable, Iterable[str]]) -> PreconditionModel:
    """
    Validated precondition model.

    Raises:
        DataValidationError: If there is no mode or a mode holds two
            relations of one disjoint group
        UnknownRelationError: If a relation is not in the vocabulary
    """
    if not modes:
        raise DataValidationError("Precondition model needs at least one mode",
                                  field_name="modes", component="Preconditions")
    entries = []
    for q, names in modes.items():
        names = frozenset(names)
        vocab.check_known(names)
        for group, members in vocab.groups().items():
            clash = names.intersection(members)
            if len(clash) > 1:
                raise DataValidationError(
                    f"Mode {q} requires disjoint relations {', '.join(sorted(clash))}",
                    field_name=group, component="Preconditions")
        entries.append((mode_id(q), names))
    return PreconditionModel(tuple(entries))


def _frequent_relations(vocab: RelationVocabulary, successes: Sequence[Experience],
                        beta: float) -> FrozenSet[str]:
    truth = truth_matrix(vocab, np.vstack([e.params for e in successes]))
    frequency = truth.mean(axis=0)
    kept = frozenset(n for n, f in zip(vocab.names, frequency) if f >= beta)
    consistent, _ = remove_conflicts(vocab, kept, {})
    if consistent != kept:
        logger.warning(f"Dropped conflicting precondition relations: "
                       f"{', '.join(sorted(kept - consistent))}")
    return consistent


def _check_successes(successes: Sequence[Experience], beta: float) -> None:
    if not successes:
        raise EmptyDatasetError("Learning preconditions needs at least one success",
                                component="Preconditions")
    if any(e.label != 1.0 for e in successes):
        raise DataValidationError("Preconditions are learned from successful experiences only",
                                  field_name="label", component="Preconditions")
    if not 0.0 < beta <= 1.0:
        raise DataValidationError("beta must lie in (0, 1]", field_name="beta",
                                  invalid_value=str(beta), component="Preconditions")


def learn_preconditions(vocab: RelationVocabulary, successes: Sequence[Experience],
                        beta: float = DEFAULT_BETA) -> PreconditionModel:
    """
    Single-mode model from successful executions.

    R_1 holds every relation that is true in at least a ``beta`` fraction of
    the successes.

    Args:
        vocab: Relation vocabulary
        successes: Experiences labelled 1
        beta: Minimum frequency for a relation to become a precondition

    Returns:
        PreconditionModel: Model with the single mode 1

    Raises:
        EmptyDatasetError: If ``successes`` is empty
    """
    successes = list(successes)
    _check_successes(successes, beta)
    required = _frequent_relations(vocab, successes, beta)
    logger.info(f"Learned preconditions from {len(successes)} successes: "
                f"{', '.join(sorted(required)) or '(none)'}")
    return PreconditionModel(((DEFAULT_MODE, required),))


def learn_mode_preconditions(vocab: RelationVocabulary, successes: Sequence[Experience],
                             modes: Sequence[Hashable],
                             beta: float = DEFAULT_BETA) -> PreconditionModel:
    """
    Multi-mode model from successes tagged with their mode ids.

    ``modes[i]`` is the qualitative mode of ``successes[i]``; each mode is
    learned independently as in learn_preconditions.
    """
    successes = list(successes)
    if len(modes) != len(successes):
        raise DataValidationError("Every success needs a mode id", field_name="modes",
                                  component="Preconditions")
    _check_successes(successes, beta)
    by_mode: Dict[Hashable, list] = {}
    for q, experience in zip(modes, successes):
        by_mode.setdefault(mode_id(q), []).append(experience)
    return PreconditionModel(tuple(
        (q, _frequent_relations(vocab, members, beta)) for q, members in by_mode.items()
    ))
