"""
Diagnosis sensitivity sweeps.

A sweep varies one diagnosis setting (anchor-ratio multiple of the anchor
standard deviations, region expansion ratio, or samples per region) while
the rest stays at the baseline, diagnoses every failure for several
repetitions and counts correct and false-positive diagnoses against the
simulator's ground truth.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, Hashable, List, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..core.experience import Experience
from ..core.rng import RngHandle
from ..diagnosis.config import DiagnosisConfig
from ..diagnosis.scoring import score_diagnosis
from ..diagnosis.search import diagnose_batch
from ..execution_model.model import ExecutionModel
from ..simulator.scene import HandleScene, causes_to_relations
from ..utils.exceptions import DataValidationError, EmptyDatasetError
from ..utils.logging import StructuredLogger, log_performance

progress = StructuredLogger(__name__)

ANCHOR_FRACTION = 0.10

SUMMARY_COLUMNS = ["value", "mean_correct", "std_correct", "mean_false_pos",
                   "std_false_pos", "total_truth"]


class SweepParameter(str, Enum):
    ANCHOR_RATIO = "anchor_ratio"
    EXPANSION_RATIO = "expansion_ratio"
    SAMPLES_PER_REGION = "samples_per_region"

    @classmethod
    def parse(cls, value: str) -> "SweepParameter":
        """Accept the CLI short names ``anchor``, ``r`` and ``kmax`` too."""
        aliases = {"anchor": cls.ANCHOR_RATIO, "r": cls.EXPANSION_RATIO,
                   "kmax": cls.SAMPLES_PER_REGION}
        return aliases.get(value) or cls(value)

    @property
    def plot_file(self) -> str:
        return {
            SweepParameter.ANCHOR_RATIO: "diagnoses_vs_anchor_ratio.csv",
            SweepParameter.EXPANSION_RATIO: "diagnoses_vs_expansion_ratio.csv",
            SweepParameter.SAMPLES_PER_REGION: "diagnoses_vs_samples_per_region.csv",
        }[self]


def default_sweep_values(parameter: SweepParameter, full_grid: bool = False) -> Tuple[float, ...]:
    """
    Sweep grid: 20 (or 100 with ``full_grid``) linear anchor ratios in
    [0.05, 2.0] and expansion ratios in [0.01, 1.0]; 10 log-spaced k_max
    values in [1, 1000] rounded to distinct integers.
    """
    points = 100 if full_grid else 20
    if parameter is SweepParameter.ANCHOR_RATIO:
        values = np.linspace(0.05, 2.0, points)
    elif parameter is SweepParameter.EXPANSION_RATIO:
        values = np.linspace(0.01, 1.0, points)
    else:
        values = np.unique(np.rint(np.geomspace(1, 1000, 10)).astype(int))
    return tuple(float(v) for v in values)


class SweepSpec(BaseModel):
    """One swept setting over a fixed baseline."""

    model_config = ConfigDict(frozen=True)

    parameter: SweepParameter
    values: Tuple[float, ...]
    repetitions: int = Field(default=5, ge=1)
    baseline: DiagnosisConfig

    @field_validator('values')
    @classmethod
    def validate_values(cls, v):
        if not v:
            raise ValueError("Sweep needs at least one value")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("Sweep values must be strictly increasing")
        return v

    def config_for(self, value: float) -> DiagnosisConfig:
        """Baseline with the swept field replaced by ``value``."""
        if self.parameter is SweepParameter.ANCHOR_RATIO:
            return self.baseline.with_overrides(
                sigma0=tuple(value * s for s in self.baseline.sigma0))
        if self.parameter is SweepParameter.EXPANSION_RATIO:
            return self.baseline.with_overrides(r=value)
        return self.baseline.with_overrides(k_max=int(round(value)))


@dataclass(frozen=True)
class SweepRow:
    value: float
    mean_correct: float
    std_correct: float
    mean_false_pos: float
    std_false_pos: float
    total_truth: int
    mean_runtime_per_failure: float


@dataclass
class SweepResult:
    """Aggregated rows plus the per-repetition raw and timing tables."""

    spec: SweepSpec
    rows: List[SweepRow]
    raw: pd.DataFrame
    timing: pd.DataFrame

    def summary(self) -> pd.DataFrame:
        return pd.DataFrame([{c: getattr(r, c) for c in SUMMARY_COLUMNS} for r in self.rows],
                            columns=SUMMARY_COLUMNS)


def compute_anchor_sigma(campaign: Sequence[Experience],
                         scene: Optional[HandleScene] = None) -> npt.NDArray[np.float64]:
    """
    Anchor standard deviations: 10% of the mean bbox full extent per axis.

    Experiences without recorded extents use ``scene``'s.

    Raises:
        EmptyDatasetError: On an empty campaign
        DataValidationError: If extents are unknown or an axis averages to zero
    """
    if not campaign:
        raise EmptyDatasetError("Anchor sigma needs at least one execution", component="Harness")
    extents = []
    for e in campaign:
        if e.bbox_extents is not None:
            extents.append(e.bbox_extents)
        elif scene is not None:
            extents.append(scene.bbox_full_extents)
        else:
            raise DataValidationError("Execution has no bounding-box extents",
                                      field_name="bbox_extents", component="Harness")
    mean = np.mean(np.asarray(extents, dtype=float), axis=0)
    if np.any(mean <= 0):
        raise DataValidationError("Bounding-box extent averages to zero on some axis",
                                  field_name="bbox_extents", invalid_value=str(mean.tolist()),
                                  component="Harness")
    return ANCHOR_FRACTION * mean


def ground_truth(failure: Experience) -> frozenset:
    if failure.cause_labels is None:
        raise DataValidationError("Failure has no ground-truth cause labels",
                                  field_name="cause_labels", component="Harness")
    return causes_to_relations(failure.cause_labels)


@log_performance
def run_sensitivity_sweep(spec: SweepSpec, failures: Sequence[Experience],
                          model: ExecutionModel, mode: Hashable, rng: RngHandle,
                          workers: int = 1) -> SweepResult:
    """
    Diagnose every failure for each swept value and repetition.

    Each (value, repetition) pair runs on its own sub-stream; rows are
    ordered by (value index, repetition, failure) whatever ``workers`` is.

    Raises:
        EmptyDatasetError: If ``failures`` is empty
    """
    failures = list(failures)
    if not failures:
        raise EmptyDatasetError("Sweep needs at least one failure", component="Harness")
    truths = [ground_truth(f) for f in failures]
    tasks = [(vi, rep) for vi in range(len(spec.values)) for rep in range(spec.repetitions)]
    streams = rng.split(len(tasks))

    def run(task_index: int) -> Tuple[List[Dict], float]:
        vi, rep = tasks[task_index]
        value = spec.values[vi]
        start = time.perf_counter()
        diagnoses = diagnose_batch(model, mode, failures, spec.config_for(value),
                                   streams[task_index])
        elapsed = time.perf_counter() - start
        rows = []
        for index, (failure, diagnosis, truth) in enumerate(zip(failures, diagnoses, truths)):
            score = score_diagnosis(diagnosis, truth)
            rows.append({
                "value_index": vi,
                "value": value,
                "repetition": rep,
                "failure_id": index if failure.experience_id is None else failure.experience_id,
                "correct": score.true_positives,
                "false_pos": score.false_positives,
                "false_neg": score.false_negatives,
                "truth": len(truth),
            })
        return rows, elapsed

    if workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(run, range(len(tasks))))
    else:
        outputs = [run(i) for i in range(len(tasks))]

    raw = pd.DataFrame([row for rows, _ in outputs for row in rows])
    timing = pd.DataFrame([
        {"value_index": vi, "value": spec.values[vi], "repetition": rep,
         "runtime_s": elapsed, "runtime_per_failure_s": elapsed / len(failures)}
        for (vi, rep), (_, elapsed) in zip(tasks, outputs)
    ])

    per_rep = raw.groupby(["value_index", "repetition"], sort=True)[["correct", "false_pos"]].sum()
    total_truth = int(sum(len(t) for t in truths))
    rows = []
    for vi, value in enumerate(spec.values):
        reps = per_rep.loc[vi]
        runtime = timing.loc[timing["value_index"] == vi, "runtime_per_failure_s"].mean()
        rows.append(SweepRow(
            value=value,
            mean_correct=float(reps["correct"].mean()),
            std_correct=float(reps["correct"].std(ddof=0)),
            mean_false_pos=float(reps["false_pos"].mean()),
            std_false_pos=float(reps["false_pos"].std(ddof=0)),
            total_truth=total_truth,
            mean_runtime_per_failure=float(runtime),
        ))
        progress.info("sweep row", parameter=spec.parameter.value, value=f"{value:.4g}",
                      correct=f"{rows[-1].mean_correct:.1f}/{total_truth}",
                      false_pos=f"{rows[-1].mean_false_pos:.1f}")
    return SweepResult(spec, rows, raw, timing)


def write_sweep(result: SweepResult, out_dir: Union[str, Path],
                emit_plot_data: bool = False) -> List[Path]:
    """
    Write summary, raw and timing CSVs (and the plot-data CSV on request).

    Only the timing file depends on wall-clock time.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = result.spec.parameter.value
    options = dict(index=False, float_format="%.17g", lineterminator="\n")

    written = []
    paths = {
        out_dir / f"sweep_{name}.csv": result.summary(),
        out_dir / f"sweep_{name}_raw.csv": result.raw,
        out_dir / f"sweep_{name}_timing.csv": result.timing,
    }
    if emit_plot_data:
        paths[out_dir / result.spec.parameter.plot_file] = result.summary()
    for path, frame in paths.items():
        frame.to_csv(path, **options)
        written.append(path)
    return written
