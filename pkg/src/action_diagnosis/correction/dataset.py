"""
Synthetic training data from corrected failures.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Hashable, Iterator, List, Sequence, Union

import pandas as pd

from ..core.experience import Experience, Provenance
from ..core.rng import RngHandle
from ..core.space import ParameterSpace
from ..execution_model.model import ExecutionModel
from ..utils.exceptions import DataValidationError
from ..utils.logging import get_logger, log_performance
from .corrector import CorrectionConfig, CorrectionResult, correct_experience

logger = get_logger(__name__)


@dataclass
class CorrectedDataset:
    """
    Corrected experiences (label 1) with their source failures (label 0).

    ``sources[i]`` is the failure that ``corrected[i]`` was derived from;
    ``results`` holds one CorrectionResult per input failure.
    """

    corrected: List[Experience] = field(default_factory=list)
    sources: List[Experience] = field(default_factory=list)
    skipped: int = 0
    results: List[CorrectionResult] = field(default_factory=list)

    def __iter__(self) -> Iterator:
        # (corrected, skipped) unpacking
        return iter((self.corrected, self.skipped))


@log_performance
def build_corrected_dataset(model: ExecutionModel, mode: Hashable,
                            failures: Sequence[Experience], cfg: CorrectionConfig,
                            rng: RngHandle, workers: int = 1) -> CorrectedDataset:
    """
    Correct every failure; failures without a valid correction are skipped.

    Each failure is corrected on its own sub-stream so the output does not
    depend on ``workers``.

    Raises:
        DataValidationError: If a failure is not labelled 0
    """
    failures = list(failures)
    if any(f.label != 0.0 for f in failures):
        raise DataValidationError("Only failed experiences (label 0) can be corrected",
                                  field_name="label", component="Correction")
    streams = rng.split(len(failures))

    def run(index: int) -> CorrectionResult:
        return correct_experience(model, mode, failures[index].params, cfg, streams[index])

    if workers > 1 and len(failures) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(len(failures))))
    else:
        results = [run(i) for i in range(len(failures))]

    dataset = CorrectedDataset(results=results)
    for failure, result in zip(failures, results):
        if not result.found:
            dataset.skipped += 1
            continue
        dataset.sources.append(failure)
        dataset.corrected.append(Experience(
            params=result.corrected,
            label=1.0,
            provenance=Provenance.SYNTHETIC_CORRECTED,
            bbox_extents=failure.bbox_extents,
            experience_id=failure.experience_id,
        ))

    logger.info(f"Corrected {len(dataset.corrected)} of {len(failures)} failures "
                f"(kappa={cfg.kappa}, skipped {dataset.skipped})")
    return dataset


def corrections_frame(space: ParameterSpace, failures: Sequence[Experience],
                      results: Sequence[CorrectionResult]) -> pd.DataFrame:
    """
    One row per failure: id, failed and corrected coordinates (blank when
    no correction was found), predicted score and diagnosed relations.
    """
    rows = []
    for index, (failure, result) in enumerate(zip(failures, results)):
        row = {"failure_id": index if failure.experience_id is None else failure.experience_id}
        row.update({f"failed_{n}": float(v) for n, v in zip(space.names, failure.params)})
        for i, n in enumerate(space.names):
            row[f"corrected_{n}"] = float(result.corrected[i]) if result.found else None
        row["predicted"] = result.predicted
        row["candidates_valid"] = result.candidates_valid
        row["diagnosis"] = ";".join(sorted(result.diagnosis.candidates))
        rows.append(row)
    columns = (["failure_id"] + [f"failed_{n}" for n in space.names]
               + [f"corrected_{n}" for n in space.names]
               + ["predicted", "candidates_valid", "diagnosis"])
    return pd.DataFrame(rows, columns=columns)


def write_corrections(space: ParameterSpace, failures: Sequence[Experience],
                      results: Sequence[CorrectionResult], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    corrections_frame(space, failures, results).to_csv(
        path, index=False, float_format="%.17g", lineterminator="\n")
    return path
