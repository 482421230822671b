"""
Plain-text success model dumps.

Format::

    # action-diagnosis success model v1
    # length_scales <l_1> ... <l_d>
    # signal_variance <s>
    # noise_variance <n>
    <x_1> ... <x_d> <target>
    ...

Numbers are written with ``%.17g`` so a load reproduces the fit exactly.
Loading refits the factorization from the stored points.
"""

from pathlib import Path
from typing import Dict, List, Union

import numpy as np

from ..utils.exceptions import DataValidationError
from .gp import GpHyperparams, SuccessModel, fit_arrays

HEADER = "# action-diagnosis success model v1"


def _fmt(values) -> str:
    return " ".join("%.17g" % v for v in values)


def dump_success_model(model: SuccessModel) -> str:
    """Serialize ``model`` to the text format."""
    lines = [
        HEADER,
        f"# length_scales {_fmt(model.hyper.length_scales)}",
        f"# signal_variance {_fmt([model.hyper.signal_variance])}",
        f"# noise_variance {_fmt([model.hyper.noise_variance])}",
    ]
    for x, y in zip(model.inputs, model.targets):
        lines.append(_fmt(list(x) + [y]))
    return "\n".join(lines) + "\n"


def load_success_model(text: str) -> SuccessModel:
    """
    Parse a dump and refit the model.

    Raises:
        DataValidationError: If the header or a data row is malformed
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != HEADER:
        raise DataValidationError("Not a success model dump", field_name="header",
                                  component="SuccessModel")

    meta: Dict[str, List[float]] = {}
    rows: List[List[float]] = []
    try:
        for line in lines[1:]:
            if line.startswith("#"):
                key, *values = line[1:].split()
                meta[key] = [float(v) for v in values]
            else:
                rows.append([float(v) for v in line.split()])
    except ValueError as e:
        raise DataValidationError(f"Malformed success model dump: {e}",
                                  component="SuccessModel") from e

    missing = {"length_scales", "signal_variance", "noise_variance"} - meta.keys()
    if missing:
        raise DataValidationError(f"Success model dump lacks {', '.join(sorted(missing))}",
                                  field_name="header", component="SuccessModel")

    hyper = GpHyperparams(tuple(meta["length_scales"]),
                          meta["signal_variance"][0], meta["noise_variance"][0])
    width = len(hyper.length_scales) + 1
    if any(len(row) != width for row in rows):
        raise DataValidationError(f"Every data row needs {width} columns",
                                  field_name="rows", component="SuccessModel")
    data = np.array(rows, dtype=float).reshape(-1, width)
    return fit_arrays(data[:, :-1], data[:, -1], hyper)


def write_success_model(model: SuccessModel, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_success_model(model), encoding="utf-8")
    return path


def read_success_model(path: Union[str, Path]) -> SuccessModel:
    return load_success_model(Path(path).read_text(encoding="utf-8"))
