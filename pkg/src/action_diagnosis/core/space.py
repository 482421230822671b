"""
Parameter spaces and action parameterizations.

A parameter space is an ordered list of named, bounded real parameters in
meters. Parameterizations are plain read-only float64 vectors aligned
index-for-index with the space.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from ..utils.exceptions import DataValidationError, DimensionMismatchError

ActionParameterization = npt.NDArray[np.float64]

ParameterDefinitionLike = Union["ParameterDef", Tuple[str, float, float]]


@dataclass(frozen=True)
class ParameterDef:
    """One bounded action parameter."""

    name: str
    lower: float
    upper: float
    unit: str = "m"


@dataclass(frozen=True)
class ParameterSpace:
    """Ordered, validated set of action parameters."""

    params: Tuple[ParameterDef, ...]

    @property
    def dim(self) -> int:
        return len(self.params)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(p.name for p in self.params)

    @property
    def lower(self) -> ActionParameterization:
        return np.array([p.lower for p in self.params], dtype=float)

    @property
    def upper(self) -> ActionParameterization:
        return np.array([p.upper for p in self.params], dtype=float)

    def index(self, name: str) -> int:
        """Index of the parameter called ``name``."""
        for i, p in enumerate(self.params):
            if p.name == name:
                return i
        raise DataValidationError(
            f"Unknown parameter: {name}",
            field_name="parameter",
            invalid_value=name,
            component="ParameterSpace"
        )

    def contains(self, x: ActionParameterization) -> bool:
        x = as_parameterization(self, x)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


def make_space(definitions: Iterable[ParameterDefinitionLike]) -> ParameterSpace:
    """
    Build a validated parameter space.

    Args:
        definitions: ParameterDef instances or (name, lower, upper) tuples

    Returns:
        ParameterSpace: The validated space

    Raises:
        DataValidationError: On an empty list, a duplicate name or
            inverted/empty bounds; the message names the parameter.
    """
    params = []
    for definition in definitions:
        if isinstance(definition, ParameterDef):
            params.append(definition)
        else:
            name, lower, upper = definition
            params.append(ParameterDef(str(name), float(lower), float(upper)))

    if not params:
        raise DataValidationError("Parameter space needs at least one parameter",
                                  field_name="params", component="ParameterSpace")

    seen = set()
    for p in params:
        if p.name in seen:
            raise DataValidationError(f"duplicate name {p.name}", field_name=p.name,
                                      component="ParameterSpace")
        seen.add(p.name)
        if not (np.isfinite(p.lower) and np.isfinite(p.upper)) or not p.lower < p.upper:
            raise DataValidationError(
                f"inverted/empty bounds for parameter {p.name}: [{p.lower}, {p.upper}]",
                field_name=p.name,
                invalid_value=f"[{p.lower}, {p.upper}]",
                component="ParameterSpace"
            )

    return ParameterSpace(tuple(params))


def as_parameterization(space: ParameterSpace,
                        values: Union[Sequence[float], npt.ArrayLike]) -> ActionParameterization:
    """
    Validate ``values`` against ``space`` and return a read-only vector.

    Raises:
        DimensionMismatchError: If the length differs from the space
        DataValidationError: If any entry is not finite
    """
    x = np.array(values, dtype=float).reshape(-1)
    if x.shape[0] != space.dim:
        raise DimensionMismatchError(space.dim, x.shape[0])
    if not np.all(np.isfinite(x)):
        raise DataValidationError("Parameterization entries must be finite",
                                  field_name="values", invalid_value=str(x.tolist()))
    x.setflags(write=False)
    return x


def clamp_to_space(space: ParameterSpace, x: ActionParameterization) -> ActionParameterization:
    """Clamp every coordinate of ``x`` into its parameter bounds."""
    x = as_parameterization(space, x)
    clamped = np.clip(x, space.lower, space.upper)
    clamped.setflags(write=False)
    return clamped
