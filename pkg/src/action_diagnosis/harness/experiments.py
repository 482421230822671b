"""
Correction-and-retrain experiment.

Per gamma shape kappa: run a random campaign, learn R from its successes
and a reference F from all of it, correct the failures, fit a new F from
the corrected failures and their corrections only, then execute
``trials`` grasps sampled from the retrained model.
"""

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Hashable, List, Optional, Sequence, Tuple, Union

import pandas as pd

from ..core.experience import Experience
from ..core.experience import failures as failed_experiences
from ..core.experience import successes as successful_experiences
from ..core.rng import RngHandle
from ..core.space import ParameterSpace
from ..correction.corrector import CorrectionConfig
from ..correction.dataset import CorrectedDataset, build_corrected_dataset
from ..diagnosis.config import DiagnosisConfig
from ..execution_model.model import ExecutionModel, sample_execution
from ..execution_model.preconditions import (
    DEFAULT_BETA,
    DEFAULT_MODE,
    PreconditionModel,
    learn_preconditions,
)
from ..relations.vocabulary import RelationVocabulary
from ..simulator.campaign import random_campaign
from ..simulator.scene import HandleScene, execute_grasp, scene_vocabulary
from ..success_model.gp import (
    GpHyperparams,
    default_hyperparams,
    fit_success_model,
    refit_with_synthetic,
)
from ..utils.exceptions import ExperimentError
from ..utils.logging import get_logger, log_performance
from .sweeps import compute_anchor_sigma

logger = get_logger(__name__)

REPORT_COLUMNS = ["kappa", "failures", "corrected", "skipped", "trials", "successes",
                  "no_sample", "success_rate", "evaluable"]


@dataclass(frozen=True)
class KappaReport:
    kappa: float
    failures: int
    corrected: int
    skipped: int
    trials: int
    successes: int
    no_sample: int
    evaluable: bool

    @property
    def success_rate(self) -> Optional[float]:
        return self.successes / self.trials if self.evaluable else None


@dataclass
class ExperimentReport:
    reports: List[KappaReport]
    campaign: List[Experience]
    datasets: List[CorrectedDataset] = field(default_factory=list)

    def frame(self) -> pd.DataFrame:
        rows = []
        for r in self.reports:
            rows.append({
                "kappa": r.kappa, "failures": r.failures, "corrected": r.corrected,
                "skipped": r.skipped, "trials": r.trials,
                "successes": r.successes if r.evaluable else None,
                "no_sample": r.no_sample if r.evaluable else None,
                "success_rate": r.success_rate, "evaluable": int(r.evaluable),
            })
        return pd.DataFrame(rows, columns=REPORT_COLUMNS)

    def write(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.frame().to_csv(path, index=False, float_format="%.17g", lineterminator="\n")
        return path


def build_reference_model(scene: HandleScene, space: ParameterSpace,
                          campaign: Sequence[Experience], beta: float = DEFAULT_BETA,
                          hyper: Optional[GpHyperparams] = None,
                          vocab: Optional[RelationVocabulary] = None,
                          preconditions: Optional[PreconditionModel] = None) -> ExecutionModel:
    """
    R from the campaign successes, F from the whole campaign.

    ``vocab`` defaults to the scene vocabulary; preset ``preconditions``
    replace the learned ones.

    Raises:
        ExperimentError: If the campaign has no success
    """
    successes = successful_experiences(campaign)
    if not successes:
        raise ExperimentError("Campaign produced no successful execution to learn from")
    vocab = vocab or scene_vocabulary(scene, space)
    hyper = hyper or default_hyperparams(scene.bbox_half_extents)
    preconditions = preconditions or learn_preconditions(vocab, successes, beta)
    return ExecutionModel(space, vocab, preconditions, fit_success_model(campaign, hyper))


def evaluate_model(model: ExecutionModel, scene: HandleScene, mode: Hashable, trials: int,
                   max_iter: int, rng: RngHandle) -> Tuple[int, int]:
    """Execute ``trials`` sampled grasps; returns (successes, trials without a sample)."""
    succeeded = no_sample = 0
    for _ in range(trials):
        x = sample_execution(model, mode, max_iter, rng)
        if x is None:
            no_sample += 1
            continue
        succeeded += execute_grasp(scene, x, rng).success
    return succeeded, no_sample


@log_performance
def run_correction_experiment(scene: HandleScene, space: ParameterSpace,
                              kappa_values: Sequence[float], trials: int, rng: RngHandle,
                              diagnosis: DiagnosisConfig, s_max: int = 10,
                              campaign_size: int = 100,
                              front_window: Tuple[float, float] = (0.05, 0.15),
                              beta: float = DEFAULT_BETA,
                              max_iter: int = 200_000, workers: int = 1,
                              mode: Hashable = DEFAULT_MODE,
                              hyper: Optional[GpHyperparams] = None,
                              vocab: Optional[RelationVocabulary] = None,
                              preconditions: Optional[PreconditionModel] = None,
                              evaluation_noise: Optional[float] = None
                              ) -> ExperimentReport:
    """
    Correct, retrain and evaluate once per kappa.

    ``diagnosis.sigma0`` is replaced by the campaign's anchor standard
    deviations. Every kappa sees the same campaign; its correction and
    evaluation draw from streams keyed by kappa.

    ``evaluation_noise`` replaces the scene's pose noise for the evaluation
    trials only. Without pose noise every sample satisfying the learned
    preconditions succeeds, so success counts cannot separate kappa values.

    Raises:
        ExperimentError: If ``trials`` < 1, no kappa is given or the
            campaign has no success
    """
    if trials < 1:
        raise ExperimentError(f"Evaluation needs at least one trial, got {trials}")
    if not kappa_values:
        raise ExperimentError("No kappa value to evaluate")
    if evaluation_noise is not None and not evaluation_noise >= 0:
        raise ExperimentError(
            f"Evaluation pose noise must be non-negative, got {evaluation_noise}")
    evaluation_scene = scene if evaluation_noise is None else \
        replace(scene, pose_noise_std=float(evaluation_noise))

    campaign = random_campaign(scene, campaign_size, rng.stream("campaign"), front_window)
    model = build_reference_model(scene, space, campaign, beta, hyper, vocab, preconditions)
    failed = failed_experiences(campaign)
    anchor = compute_anchor_sigma(campaign, scene)
    diagnosis = diagnosis.with_overrides(sigma0=tuple(anchor))

    report = ExperimentReport([], campaign)
    for kappa in kappa_values:
        cfg = CorrectionConfig(s_max=s_max, kappa=kappa, diagnosis=diagnosis)
        dataset = build_corrected_dataset(model, mode, failed, cfg,
                                          rng.stream(f"correct/{float(kappa)!r}"), workers)
        report.datasets.append(dataset)
        if not dataset.corrected:
            logger.warning(f"kappa={kappa}: no corrected experience, not evaluable")
            report.reports.append(KappaReport(kappa, len(failed), 0, dataset.skipped,
                                              trials, 0, 0, False))
            continue

        retrained = model.with_success(
            refit_with_synthetic(model.success, dataset.sources, dataset.corrected))
        succeeded, no_sample = evaluate_model(retrained, evaluation_scene, mode, trials, max_iter,
                                              rng.stream(f"evaluate/{float(kappa)!r}"))
        logger.info(f"kappa={kappa}: {len(dataset.corrected)} corrected, "
                    f"{succeeded}/{trials} successful grasps")
        report.reports.append(KappaReport(kappa, len(failed), len(dataset.corrected),
                                          dataset.skipped, trials, succeeded, no_sample, True))
    return report
