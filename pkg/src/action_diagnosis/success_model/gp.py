"""
Gaussian-process success model.

F(x) is the posterior mean of a zero-mean GP with an axis-scaled
squared-exponential kernel, trained on raw success labels and clamped to
[0, 1]. Far from data the prediction falls back to 0, i.e. unknown
parameterizations are treated as likely failures.
"""

from dataclasses import dataclass, field
from typing import Any, Iterable, List, Sequence, Tuple

import numpy as np
import numpy.typing as npt
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from scipy.spatial.distance import cdist
from tenacity import RetryCallState, Retrying, retry_if_exception_type, stop_after_attempt

from ..core.experience import Experience, Provenance
from ..core.space import ActionParameterization
from ..utils.exceptions import (
    DataValidationError,
    DimensionMismatchError,
    EmptyDatasetError,
    ModelFitError,
)
from ..utils.logging import get_logger

logger = get_logger(__name__)

# 1e-10, 1e-9, ..., 1e-4
JITTER_SCHEDULE: Tuple[float, ...] = tuple(10.0 ** -e for e in range(10, 3, -1))


@dataclass(frozen=True)
class GpHyperparams:
    """Fixed kernel hyperparameters (no optimisation)."""

    length_scales: Tuple[float, ...]
    signal_variance: float = 1.0
    noise_variance: float = 0.01

    def __post_init__(self) -> None:
        scales = tuple(float(s) for s in self.length_scales)
        object.__setattr__(self, "length_scales", scales)
        values = scales + (float(self.signal_variance), float(self.noise_variance))
        if not scales or not all(np.isfinite(v) and v > 0 for v in values):
            raise DataValidationError("GP hyperparameters must be strictly positive",
                                      field_name="hyperparams", invalid_value=str(values),
                                      component="SuccessModel")


def default_hyperparams(half_extents: Sequence[float]) -> GpHyperparams:
    """Length scale = handle bbox half extent per axis, unit signal, 0.01 noise."""
    return GpHyperparams(tuple(half_extents), signal_variance=1.0, noise_variance=0.01)


def kernel(a: npt.ArrayLike, b: npt.ArrayLike, hyper: GpHyperparams) -> npt.NDArray[np.float64]:
    """Squared-exponential kernel matrix between the rows of ``a`` and ``b``."""
    scales = np.asarray(hyper.length_scales)
    a = np.atleast_2d(np.asarray(a, dtype=float)) / scales
    b = np.atleast_2d(np.asarray(b, dtype=float)) / scales
    return hyper.signal_variance * np.exp(-0.5 * cdist(a, b, "sqeuclidean"))


@dataclass(frozen=True, eq=False)
class SuccessModel:
    """A fitted, immutable GP success model."""

    inputs: npt.NDArray[np.float64]
    targets: npt.NDArray[np.float64]
    hyper: GpHyperparams
    jitter: float
    _factor: Any = field(repr=False)
    _alpha: npt.NDArray[np.float64] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.inputs.shape[1]

    def __len__(self) -> int:
        return self.inputs.shape[0]


def _log_jitter_retry(retry_state: RetryCallState) -> None:
    jitter = JITTER_SCHEDULE[retry_state.attempt_number - 1]
    logger.warning(f"Kernel factorization failed with jitter {jitter:.0e}; escalating")


def _factorize(gram: npt.NDArray[np.float64]) -> Tuple[Any, float]:
    """Cholesky of ``gram`` with escalating diagonal jitter."""
    identity = np.eye(gram.shape[0])
    try:
        for attempt in Retrying(stop=stop_after_attempt(len(JITTER_SCHEDULE)),
                                retry=retry_if_exception_type(LinAlgError),
                                after=_log_jitter_retry,
                                reraise=True):
            with attempt:
                jitter = JITTER_SCHEDULE[attempt.retry_state.attempt_number - 1]
                factor = cho_factor(gram + jitter * identity, lower=True)
    except LinAlgError:
        raise ModelFitError(
            f"Kernel matrix is not positive definite after jitter {JITTER_SCHEDULE[-1]:.0e}",
            jitter=JITTER_SCHEDULE[-1],
            condition_estimate=float(np.linalg.cond(gram))
        ) from None
    return factor, jitter


def fit_arrays(inputs: npt.ArrayLike, targets: npt.ArrayLike,
               hyper: GpHyperparams) -> SuccessModel:
    """Fit from raw input/target arrays."""
    x = np.atleast_2d(np.asarray(inputs, dtype=float))
    y = np.asarray(targets, dtype=float).reshape(-1)
    if x.shape[0] == 0 or y.shape[0] == 0:
        raise EmptyDatasetError("Success model needs at least one experience",
                                component="SuccessModel")
    if x.shape[0] != y.shape[0]:
        raise DataValidationError("Inputs and targets differ in length",
                                  field_name="targets", component="SuccessModel")
    if x.shape[1] != len(hyper.length_scales):
        raise DimensionMismatchError(len(hyper.length_scales), x.shape[1],
                                     component="SuccessModel")

    gram = kernel(x, x, hyper) + hyper.noise_variance * np.eye(x.shape[0])
    factor, jitter = _factorize(gram)
    alpha = cho_solve(factor, y)
    for array in (x, y, alpha):
        array.setflags(write=False)
    logger.debug(f"Fitted success model on {x.shape[0]} points (jitter {jitter:.0e})")
    return SuccessModel(x, y, hyper, jitter, factor, alpha)


def fit_success_model(experiences: Iterable[Experience], hyper: GpHyperparams) -> SuccessModel:
    """
    Fit F on labelled experiences.

    Raises:
        EmptyDatasetError: If no experience is given
        ModelFitError: If factorization fails after the maximum jitter
    """
    experiences = list(experiences)
    if not experiences:
        raise EmptyDatasetError("Success model needs at least one experience",
                                component="SuccessModel")
    inputs = np.vstack([e.params for e in experiences])
    targets = np.array([e.label for e in experiences])
    return fit_arrays(inputs, targets, hyper)


def predict_many(model: SuccessModel, xs: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Clamped posterior means for a batch of parameterizations."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    if xs.shape[1] != model.dim:
        raise DimensionMismatchError(model.dim, xs.shape[1], component="SuccessModel")
    mean = kernel(xs, model.inputs, model.hyper) @ model._alpha
    return np.clip(mean, 0.0, 1.0)


def predict_success(model: SuccessModel, x: ActionParameterization) -> float:
    """Predicted success likelihood of one parameterization, in [0, 1]."""
    return float(predict_many(model, x)[0])


def refit_with_synthetic(model: SuccessModel, failed: Sequence[Experience],
                         corrected: Sequence[Experience]) -> SuccessModel:
    """
    New model trained only on failed (label 0) and corrected (label 1)
    experiences, with the hyperparameters of ``model``.

    Raises:
        EmptyDatasetError: If ``corrected`` is empty
    """
    if not corrected:
        raise EmptyDatasetError("Refitting needs at least one corrected experience",
                                component="SuccessModel")
    training: List[Experience] = [f.relabelled(0.0, f.provenance) for f in failed]
    training.extend(c.relabelled(1.0, Provenance.SYNTHETIC_CORRECTED) for c in corrected)
    logger.info(f"Refitting success model on {len(failed)} failed "
                f"and {len(corrected)} corrected experiences")
    return fit_success_model(training, model.hyper)
