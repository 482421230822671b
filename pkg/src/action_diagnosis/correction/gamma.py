"""
Gamma-distributed counter-updates.
"""

from typing import Optional, Union

import numpy as np
import numpy.typing as npt

from ..core.rng import RngHandle
from ..utils.exceptions import DataValidationError


def sample_gamma_correction(delta: float, kappa: float, rng: RngHandle,
                            size: Optional[int] = None
                            ) -> Union[float, npt.NDArray[np.float64]]:
    """
    Update pointing away from a falsifying offset.

    Returns ``-sgn(delta) * g`` with ``g ~ Gamma(shape=kappa, scale=|delta|)``,
    so the mode of the magnitude is ``(kappa - 1) * |delta|`` and its mean
    ``kappa * |delta|``.

    Args:
        delta: Signed offset of the falsifying value from the failed one
        kappa: Gamma shape, at least 1
        rng: Random stream
        size: Number of draws; a scalar is returned when None

    Raises:
        DataValidationError: If delta is zero or kappa < 1
    """
    if delta == 0 or not np.isfinite(delta):
        raise DataValidationError("Correction needs a non-zero finite offset",
                                  field_name="delta", invalid_value=str(delta),
                                  component="Correction")
    if not kappa >= 1.0:
        raise DataValidationError("Gamma shape kappa must be at least 1",
                                  field_name="kappa", invalid_value=str(kappa),
                                  component="Correction")
    draws = -np.sign(delta) * rng.gamma(kappa, abs(delta), size)
    return float(draws) if size is None else draws
