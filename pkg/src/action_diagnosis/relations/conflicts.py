"""
Conflict removal over diagnosis candidates and precondition checks.
"""

from typing import TYPE_CHECKING, AbstractSet, Dict, FrozenSet, Hashable, Mapping, Tuple

import numpy as np
import numpy.typing as npt

from ..core.space import ActionParameterization
from .vocabulary import RelationVocabulary, extract_relations, truth_matrix

if TYPE_CHECKING:
    from ..execution_model.preconditions import PreconditionModel

ViolationMap = Dict[int, float]


def remove_conflicts(vocab: RelationVocabulary, candidates: AbstractSet[str],
                     violations: Mapping[int, float]
                     ) -> Tuple[FrozenSet[str], ViolationMap]:
    """
    Drop contradicting relations from a candidate set.

    Every member of a disjoint group with two or more candidates is removed.
    Violation entries (parameter index -> perturbed value) survive only while
    some remaining candidate still maps to their parameter.

    Args:
        vocab: Relation vocabulary holding the disjoint groups
        candidates: Candidate relation names
        violations: Parameter-keyed violating values

    Returns:
        Candidates and values with no two candidates from one group

    Raises:
        UnknownRelationError: If a candidate is not in the vocabulary
    """
    vocab.check_known(candidates)

    by_group: Dict[str, list] = {}
    for name in candidates:
        group = vocab.group_of(name)
        if group is not None:
            by_group.setdefault(group, []).append(name)

    removed = {name for members in by_group.values() if len(members) > 1 for name in members}
    kept = frozenset(candidates) - removed

    supported = {vocab.parameter_of(name) for name in kept}
    kept_violations = {p: v for p, v in violations.items() if p in supported}
    return kept, kept_violations


def satisfies(vocab: RelationVocabulary, preconditions: "PreconditionModel",
              mode: Hashable, x: ActionParameterization) -> bool:
    """
    Whether ``x`` realises exactly the relations required under ``mode``.

    Required relations must be true and every other relation false.

    Raises:
        UnknownModeError: If the mode is not in the precondition model
    """
    required = preconditions.required(mode)
    return extract_relations(vocab, x).true_relations() == required


def satisfies_many(vocab: RelationVocabulary, required: AbstractSet[str],
                   xs: npt.ArrayLike) -> npt.NDArray[np.bool_]:
    """Row-wise ``satisfies`` for a batch of parameterizations."""
    mask = np.array([name in required for name in vocab.names], dtype=bool)
    return np.all(truth_matrix(vocab, xs) == mask, axis=1)
