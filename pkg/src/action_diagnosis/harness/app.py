"""
Command orchestration for the action diagnosis toolkit.

DiagnosisToolkit loads and validates the configuration, sets up logging and
runs one pipeline per CLI command. Every command derives its randomness
from named streams of the configured seed, so a stored campaign and a
regenerated one are the same campaign.
"""

import logging
import time
from pathlib import Path
from typing import Any, Dict, Hashable, List, Optional

from ..config.settings import Settings
from ..config.validation import ConfigValidator
from ..core.experience import Experience
from ..core.experience import failures as failed_experiences
from ..core.rng import RngHandle
from ..correction.corrector import CorrectionConfig
from ..correction.dataset import build_corrected_dataset, write_corrections
from ..diagnosis.config import DiagnosisConfig
from ..diagnosis.export import write_diagnoses
from ..diagnosis.scoring import score_diagnosis
from ..diagnosis.search import diagnose_batch
from ..execution_model.model import ExecutionModel, load_execution_model, save_execution_model
from ..execution_model.preconditions import mode_id
from ..simulator.campaign import aimed_campaign, random_campaign, read_campaign, write_campaign
from ..success_model.gp import refit_with_synthetic
from ..utils.exceptions import ConfigurationError, DataValidationError, EmptyDatasetError
from ..utils.logging import setup_logging
from .experiments import build_reference_model, run_correction_experiment
from .sweeps import (
    SweepParameter,
    SweepSpec,
    compute_anchor_sigma,
    default_sweep_values,
    ground_truth,
    run_sensitivity_sweep,
    write_sweep,
)


class DiagnosisToolkit:
    """
    Main application class.

    Holds the validated configuration and the root random stream; the
    ``simulate``, ``diagnose``, ``correct``, ``sweep``, ``retrain`` and
    ``evaluate`` methods each write their CSV (or JSON) outputs and return
    the written paths.
    """

    def __init__(self, config_path: Optional[str] = None, seed: Optional[int] = None,
                 out_dir: Optional[str] = None, verbose: bool = False):
        """
        Args:
            config_path: Optional path to the INI configuration
            seed: Overrides the configured seed
            out_dir: Overrides the configured output directory
            verbose: Log at DEBUG level
        """
        self.config_path = config_path
        self.seed_override = seed
        self.out_override = out_dir
        self.verbose = verbose
        self.settings: Optional[Settings] = None
        self.logger: Optional[logging.Logger] = None
        self.start_time = time.perf_counter()

        self.validated: Dict[str, Any] = {}
        self.rng: Optional[RngHandle] = None
        self.out_dir: Optional[Path] = None

    def initialize(self) -> None:
        """
        Load configuration, set up logging and validate settings.

        Raises:
            ConfigurationError: On any invalid setting
        """
        self.settings = Settings(self.config_path)
        log = self.settings.app.logging
        setup_logging(
            log_level="DEBUG" if self.verbose else log.level,
            log_file=log.log_file or None,
            max_file_size=log.max_file_size,
            backup_count=log.backup_count,
            json_format=log.json_format
        )
        self.logger = logging.getLogger('action_diagnosis.app')
        self.logger.info(f"Configuration loaded from: {self.config_path or 'default location'}")

        self.validated = ConfigValidator().validate_all_config(self.settings)

        seed = self.settings.seed if self.seed_override is None else self.seed_override
        self.rng = RngHandle(seed)
        self.out_dir = Path(self.out_override or self.settings.app.harness.out_dir)
        self.logger.info(f"Seed {seed}, output directory {self.out_dir}")

    @property
    def workers(self) -> int:
        return self.settings.workers

    @property
    def mode(self) -> Hashable:
        return mode_id(self.settings.app.execution.mode)

    def _require_initialized(self) -> None:
        if self.settings is None:
            raise ConfigurationError("Toolkit used before initialize()", component="App")

    # Shared pipeline stages

    def campaign(self, campaign_path: Optional[str] = None) -> List[Experience]:
        """Stored campaign when a path is given, otherwise the seeded one."""
        self._require_initialized()
        if campaign_path:
            experiences = read_campaign(campaign_path, self.validated["scene"])
            self.logger.info(f"Loaded {len(experiences)} executions from {campaign_path}")
            return experiences
        return self._run_campaign(self.settings.app.campaign.size)

    def _run_campaign(self, count: int) -> List[Experience]:
        campaign = self.settings.app.campaign
        stream = self.rng.stream("campaign")
        if campaign.aimed:
            return aimed_campaign(self.validated["scene"], count, stream)
        return random_campaign(self.validated["scene"], count, stream, campaign.front_window)

    def model(self, campaign: List[Experience],
              model_path: Optional[str] = None) -> ExecutionModel:
        """Stored execution model, or the reference model learned from ``campaign``."""
        if model_path:
            model = load_execution_model(model_path)
            if model.space != self.validated["space"]:
                raise ConfigurationError(
                    f"Model {model_path} was built for a different parameter space",
                    config_section="space", component="App")
            return model
        return build_reference_model(
            self.validated["scene"], self.validated["space"], campaign,
            beta=self.settings.app.execution.beta,
            hyper=self.settings.hyperparams(),
            vocab=self.validated["vocabulary"],
            preconditions=self.validated.get("modes"))

    def diagnosis_config(self, campaign: List[Experience]) -> DiagnosisConfig:
        anchor = compute_anchor_sigma(campaign, self.validated["scene"])
        return self.settings.app.diagnosis.to_config(tuple(float(s) for s in anchor))

    def _failures(self, campaign: List[Experience],
                  failure_id: Optional[int] = None) -> List[Experience]:
        failed = failed_experiences(campaign)
        if failure_id is not None:
            failed = [f for f in failed if f.experience_id == failure_id]
            if not failed:
                raise DataValidationError(f"No failed execution with id {failure_id}",
                                          field_name="failure_id",
                                          invalid_value=str(failure_id), component="App")
        if not failed:
            raise EmptyDatasetError("Campaign has no failed execution", component="App")
        return failed

    # Commands

    def simulate(self, count: Optional[int] = None) -> List[Path]:
        self._require_initialized()
        campaign = self._run_campaign(count or self.settings.app.campaign.size)
        return [write_campaign(campaign, self.out_dir / "campaign.csv")]

    def diagnose(self, campaign_path: Optional[str] = None, model_path: Optional[str] = None,
                 failure_id: Optional[int] = None) -> List[Path]:
        campaign = self.campaign(campaign_path)
        model = self.model(campaign, model_path)
        failed = self._failures(campaign, failure_id)
        diagnoses = diagnose_batch(model, self.mode, failed, self.diagnosis_config(campaign),
                                   self.rng.stream("diagnose"), self.workers)

        labelled = [(d, f) for d, f in zip(diagnoses, failed) if f.cause_labels is not None]
        if labelled:
            scores = [score_diagnosis(d, ground_truth(f)) for d, f in labelled]
            self.logger.info(
                f"Against ground truth: {sum(s.true_positives for s in scores)} correct, "
                f"{sum(s.false_positives for s in scores)} false positive, "
                f"{sum(s.false_negatives for s in scores)} missed")
        return [write_diagnoses(model.space, diagnoses, self.out_dir / "diagnoses.csv")]

    def _correction_config(self, campaign: List[Experience],
                           kappa: Optional[float]) -> CorrectionConfig:
        correction = self.settings.app.correction
        return CorrectionConfig(
            s_max=correction.s_max,
            kappa=correction.kappa_values[0] if kappa is None else kappa,
            diagnosis=self.diagnosis_config(campaign))

    def correct(self, campaign_path: Optional[str] = None, model_path: Optional[str] = None,
                kappa: Optional[float] = None) -> List[Path]:
        campaign = self.campaign(campaign_path)
        model = self.model(campaign, model_path)
        failed = self._failures(campaign)
        cfg = self._correction_config(campaign, kappa)
        dataset = build_corrected_dataset(model, self.mode, failed, cfg,
                                          self.rng.stream("correct"), self.workers)
        return [write_corrections(model.space, failed, dataset.results,
                                  self.out_dir / "corrections.csv")]

    def sweep(self, parameter: str, emit_plot_data: bool = False,
              full_grid: Optional[bool] = None, campaign_path: Optional[str] = None,
              model_path: Optional[str] = None) -> List[Path]:
        swept = SweepParameter.parse(parameter)
        campaign = self.campaign(campaign_path)
        model = self.model(campaign, model_path)
        sweep_settings = self.settings.app.sweep
        full_grid = sweep_settings.full_grid if full_grid is None else full_grid
        spec = SweepSpec(parameter=swept,
                         values=default_sweep_values(swept, full_grid),
                         repetitions=sweep_settings.repetitions,
                         baseline=self.diagnosis_config(campaign))
        result = run_sensitivity_sweep(spec, self._failures(campaign), model, self.mode,
                                       self.rng.stream(f"sweep/{swept.value}"), self.workers)
        return write_sweep(result, self.out_dir, emit_plot_data)

    def retrain(self, campaign_path: Optional[str] = None,
                kappa: Optional[float] = None) -> List[Path]:
        """Correct the failures and refit F from them and their corrections."""
        campaign = self.campaign(campaign_path)
        model = self.model(campaign)
        failed = self._failures(campaign)
        cfg = self._correction_config(campaign, kappa)
        dataset = build_corrected_dataset(model, self.mode, failed, cfg,
                                          self.rng.stream("correct"), self.workers)
        written = [
            save_execution_model(model, self.out_dir / "reference_model.json"),
            write_corrections(model.space, failed, dataset.results,
                              self.out_dir / "corrections.csv"),
        ]
        if not dataset.corrected:
            self.logger.warning("No failure could be corrected, nothing to retrain on")
            return written
        retrained = model.with_success(
            refit_with_synthetic(model.success, dataset.sources, dataset.corrected))
        written.append(save_execution_model(retrained, self.out_dir / "retrained_model.json"))
        return written

    def evaluate(self, trials: Optional[int] = None,
                 kappa_values: Optional[List[float]] = None,
                 pose_noise: Optional[float] = None) -> List[Path]:
        self._require_initialized()
        app = self.settings.app
        campaign = self.campaign()
        report = run_correction_experiment(
            self.validated["scene"], self.validated["space"],
            kappa_values or list(app.correction.kappa_values),
            trials or app.correction.trials,
            self.rng,
            self.diagnosis_config(campaign),
            s_max=app.correction.s_max,
            campaign_size=app.campaign.size,
            front_window=app.campaign.front_window,
            beta=app.execution.beta,
            max_iter=app.execution.max_iter,
            workers=self.workers,
            mode=self.mode,
            hyper=self.settings.hyperparams(),
            vocab=self.validated["vocabulary"],
            preconditions=self.validated.get("modes"),
            evaluation_noise=pose_noise)
        return [report.write(self.out_dir / "correction_experiment.csv")]

    def cleanup(self) -> None:
        """Log final status."""
        if self.logger:
            elapsed = time.perf_counter() - self.start_time
            self.logger.info(f"Shutdown - total runtime: {elapsed:.2f} seconds")
