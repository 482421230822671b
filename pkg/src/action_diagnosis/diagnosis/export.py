"""
Tabular export of diagnosis results.
"""

from pathlib import Path
from typing import Sequence, Union

import pandas as pd

from ..core.space import ParameterSpace
from .search import Diagnosis

FLOAT_FORMAT = "%.17g"


def diagnoses_frame(space: ParameterSpace, diagnoses: Sequence[Diagnosis]) -> pd.DataFrame:
    """
    One row per diagnosis: failure id, candidates, frequencies, falsifying
    coordinates and expansions. Relation lists are ``;``-separated and
    sorted; frequencies are ``name=value`` pairs.
    """
    columns = (["failure_id", "candidates", "frequencies"]
               + [f"xf_{name}" for name in space.names] + ["expansions"])
    rows = []
    for index, diagnosis in enumerate(diagnoses):
        row = {
            "failure_id": index if diagnosis.failure_id is None else diagnosis.failure_id,
            "candidates": ";".join(sorted(diagnosis.candidates)),
            "frequencies": ";".join(f"{name}={f:.6g}"
                                    for name, f in sorted(diagnosis.frequencies.items())),
            "expansions": diagnosis.expansions_used,
        }
        row.update({f"xf_{name}": float(v) for name, v in zip(space.names, diagnosis.falsifying)})
        rows.append(row)
    return pd.DataFrame(rows, columns=columns)


def write_diagnoses(space: ParameterSpace, diagnoses: Sequence[Diagnosis],
                    path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    diagnoses_frame(space, diagnoses).to_csv(path, index=False, float_format=FLOAT_FORMAT,
                                             lineterminator="\n")
    return path
