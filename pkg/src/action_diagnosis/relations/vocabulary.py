"""
Spatial relation vocabulary and relational state extraction.

Each relation is a predicate over exactly one action parameter (the
relation -> parameter mapping); relations describing the same axis can be
annotated as mutually exclusive through a shared disjoint group.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from ..core.space import ActionParameterization, ParameterSpace, as_parameterization
from ..utils.exceptions import ConfigurationError, DataValidationError, UnknownRelationError


class PredicateKind(str, Enum):
    """Comparison of a parameter value against thresholds."""
    BELOW = "below"      # value < threshold
    ABOVE = "above"      # value > threshold
    INSIDE = "inside"    # lower <= value <= upper


@dataclass(frozen=True)
class RelationDef:
    """A named single-parameter predicate."""

    name: str
    parameter: int
    kind: PredicateKind
    thresholds: Tuple[float, ...]
    group: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", PredicateKind(self.kind))
        object.__setattr__(self, "thresholds", tuple(float(t) for t in self.thresholds))
        expected = 2 if self.kind is PredicateKind.INSIDE else 1
        if len(self.thresholds) != expected:
            raise DataValidationError(
                f"Relation {self.name}: '{self.kind.value}' needs {expected} threshold(s)",
                field_name="thresholds",
                invalid_value=str(self.thresholds),
                component="Relations"
            )
        if self.kind is PredicateKind.INSIDE and not self.thresholds[0] <= self.thresholds[1]:
            raise DataValidationError(
                f"Relation {self.name}: interval thresholds are inverted",
                field_name="thresholds",
                invalid_value=str(self.thresholds),
                component="Relations"
            )

    def evaluate(self, values: npt.ArrayLike) -> npt.NDArray[np.bool_]:
        """Evaluate the predicate on one or more parameter values."""
        v = np.asarray(values, dtype=float)
        if self.kind is PredicateKind.BELOW:
            return v < self.thresholds[0]
        if self.kind is PredicateKind.ABOVE:
            return v > self.thresholds[0]
        return (v >= self.thresholds[0]) & (v <= self.thresholds[1])


@dataclass(frozen=True)
class RelationVocabulary:
    """Ordered relation definitions over one parameter space."""

    space: ParameterSpace
    relations: Tuple[RelationDef, ...]

    @cached_property
    def names(self) -> Tuple[str, ...]:
        return tuple(r.name for r in self.relations)

    @cached_property
    def _by_name(self) -> Dict[str, RelationDef]:
        return {r.name: r for r in self.relations}

    def __len__(self) -> int:
        return len(self.relations)

    def __contains__(self, name: object) -> bool:
        return name in self._by_name

    def get(self, name: str) -> RelationDef:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownRelationError([name]) from None

    def parameter_of(self, name: str) -> int:
        """The parameter that affects relation ``name``."""
        return self.get(name).parameter

    def group_of(self, name: str) -> Optional[str]:
        return self.get(name).group

    def check_known(self, names: Iterable[str]) -> None:
        unknown = set(names) - set(self.names)
        if unknown:
            raise UnknownRelationError(unknown)

    def groups(self) -> Dict[str, Tuple[str, ...]]:
        """Disjoint group id -> member relation names."""
        grouped: Dict[str, List[str]] = {}
        for relation in self.relations:
            if relation.group is not None:
                grouped.setdefault(relation.group, []).append(relation.name)
        return {g: tuple(members) for g, members in grouped.items()}


@dataclass(frozen=True)
class RelationalState:
    """Truth assignment over a vocabulary."""

    names: Tuple[str, ...]
    truth: Tuple[bool, ...]

    @classmethod
    def from_truth(cls, vocab: RelationVocabulary,
                   truth: Sequence[bool]) -> "RelationalState":
        """
        Build a state, rejecting assignments with two true relations in one
        disjoint group.
        """
        truth = tuple(bool(t) for t in truth)
        if len(truth) != len(vocab):
            raise DataValidationError(
                "Relational state does not match the vocabulary size",
                field_name="truth", invalid_value=str(len(truth)), component="Relations")
        true_names = {n for n, t in zip(vocab.names, truth) if t}
        for group, members in vocab.groups().items():
            if len(true_names.intersection(members)) > 1:
                raise DataValidationError(
                    f"Disjoint group {group} has more than one true relation",
                    field_name=group,
                    invalid_value=", ".join(sorted(true_names.intersection(members))),
                    component="Relations"
                )
        return cls(vocab.names, truth)

    def true_relations(self) -> FrozenSet[str]:
        return frozenset(n for n, t in zip(self.names, self.truth) if t)

    def __getitem__(self, name: str) -> bool:
        try:
            return self.truth[self.names.index(name)]
        except ValueError:
            raise UnknownRelationError([name]) from None


def relation(space: ParameterSpace, name: str, parameter: str, kind: str,
             thresholds: Sequence[float], group: Optional[str] = None) -> RelationDef:
    """Relation definition addressed by parameter name."""
    return RelationDef(name, space.index(parameter), PredicateKind(kind),
                       tuple(thresholds), group)


def validate_vocabulary(space: ParameterSpace, vocab: RelationVocabulary) -> List[str]:
    """
    List every violation of the vocabulary assumptions.

    Checks that relation names are unique, parameter indices are valid, the
    relation -> parameter mapping is surjective and every disjoint group
    stays on a single parameter. An empty list means the vocabulary is valid.
    """
    violations: List[str] = []

    seen = set()
    for r in vocab.relations:
        if r.name in seen:
            violations.append(f"duplicate relation name {r.name}")
        seen.add(r.name)
        if not 0 <= r.parameter < space.dim:
            violations.append(f"relation {r.name} references invalid parameter index {r.parameter}")

    covered = {r.parameter for r in vocab.relations}
    for i, name in enumerate(space.names):
        if i not in covered:
            violations.append(f"parameter {name} has no relation")

    group_params: Dict[str, set] = {}
    for r in vocab.relations:
        if r.group is not None:
            group_params.setdefault(r.group, set()).add(r.parameter)
    for group, params in group_params.items():
        if len(params) > 1:
            violations.append(f"group {group} spans multiple parameters")

    return violations


def make_vocabulary(space: ParameterSpace,
                    relations: Iterable[RelationDef]) -> RelationVocabulary:
    """
    Build a vocabulary and refuse it if validate_vocabulary finds violations.

    Raises:
        ConfigurationError: With every violation listed
    """
    vocab = RelationVocabulary(space, tuple(relations))
    violations = validate_vocabulary(space, vocab)
    if violations:
        raise ConfigurationError("Invalid relation vocabulary: " + "; ".join(violations),
                                 config_section="relations")
    return vocab


def truth_matrix(vocab: RelationVocabulary, xs: npt.ArrayLike) -> npt.NDArray[np.bool_]:
    """
    Evaluate every relation on a batch of parameterizations.

    Args:
        vocab: Relation vocabulary
        xs: Array of shape (n, dim)

    Returns:
        Boolean array of shape (n, len(vocab))
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    if xs.shape[1] != vocab.space.dim:
        raise DataValidationError(
            f"Dimension mismatch: expected {vocab.space.dim} parameters, got {xs.shape[1]}",
            field_name="dimension", invalid_value=str(xs.shape[1]), component="Relations")
    out = np.empty((xs.shape[0], len(vocab)), dtype=bool)
    for j, r in enumerate(vocab.relations):
        out[:, j] = r.evaluate(xs[:, r.parameter])
    return out


def extract_relations(vocab: RelationVocabulary, x: ActionParameterization) -> RelationalState:
    """Convert a parameterization into its relational state."""
    x = as_parameterization(vocab.space, x)
    return RelationalState.from_truth(vocab, truth_matrix(vocab, x)[0])


def axis_vocabulary(space: ParameterSpace,
                    axes: Iterable[Tuple[str, float, float, str, str, str]],
                    extra: Iterable[RelationDef] = ()) -> RelationVocabulary:
    """
    Exhaustive three-way groups, one per axis.

    Each axis entry is ``(parameter, lower, upper, negative, centered,
    positive)``: ``negative`` holds below ``lower``, ``centered`` inside
    ``[lower, upper]`` and ``positive`` above ``upper``. The group id is
    ``<parameter>_axis``.
    """
    relations: List[RelationDef] = []
    for parameter, lower, upper, negative, centered, positive in axes:
        group = f"{parameter}_axis"
        relations.extend([
            relation(space, negative, parameter, "below", [lower], group),
            relation(space, centered, parameter, "inside", [lower, upper], group),
            relation(space, positive, parameter, "above", [upper], group),
        ])
    relations.extend(extra)
    return make_vocabulary(space, relations)


def symmetric_grasp_vocabulary(space: ParameterSpace,
                               half_extents: Sequence[float],
                               reach_margin: float = 0.05) -> RelationVocabulary:
    """
    Box vocabulary around the handle bounding box.

    Thresholds sit at +/- the bbox half extent on every axis; in addition
    ``far_in_front_of_x`` holds beyond the front face plus ``reach_margin``.
    +y is robot-left, +z is up, +x points from the handle toward the robot.
    """
    hx, hy, hz = (float(h) for h in half_extents)
    x_name, y_name, z_name = space.names[:3]
    return axis_vocabulary(
        space,
        [
            (x_name, -hx, hx, "behind_x", "aligned_x", "in_front_of_x"),
            (y_name, -hy, hy, "rightOf_y", "aligned_y", "leftOf_y"),
            (z_name, -hz, hz, "below_z", "aligned_z", "above_z"),
        ],
        extra=[relation(space, "far_in_front_of_x", x_name, "above", [hx + reach_margin])]
    )
