"""
Configuration settings management for the action diagnosis toolkit.

This module loads the INI configuration (scene, vocabulary, diagnosis,
correction and sweep defaults) and environment overrides, with Pydantic
validation per section.
"""

import configparser
import logging
import os
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from ..core.space import ParameterSpace, make_space
from ..diagnosis.config import DiagnosisConfig
from ..relations.vocabulary import RelationVocabulary, make_vocabulary, relation
from ..simulator.scene import HandleScene, scene_vocabulary
from ..success_model.gp import GpHyperparams, default_hyperparams
from ..utils.exceptions import ConfigurationError
from ..utils.logging import parse_file_size

RELATION_PREFIX = "relation."
MODE_PREFIX = "mode."


def _floats(text: str) -> Tuple[float, ...]:
    """Parse a comma-separated list of floats; empty text gives ()."""
    return tuple(float(part) for part in text.split(",") if part.strip())


def _names(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _flag(text: str) -> bool:
    return text.strip().lower() in ('true', '1', 'yes', 'on')


class SpaceSettings(BaseModel):
    """Action parameter space."""

    names: List[str] = Field(default=["x", "y", "z"], description="Parameter names")
    lower: Tuple[float, ...] = Field(default=(-0.2, -0.2, -0.2), description="Lower bounds (m)")
    upper: Tuple[float, ...] = Field(default=(0.2, 0.2, 0.2), description="Upper bounds (m)")

    @model_validator(mode='after')
    def validate_lengths(self):
        if not len(self.names) == len(self.lower) == len(self.upper):
            raise ValueError("names, lower and upper must have the same length")
        return self

    def to_space(self) -> ParameterSpace:
        return make_space(zip(self.names, self.lower, self.upper))


class SceneSettings(BaseModel):
    """Simulated handle scene."""

    bbox_half_extents: Tuple[float, float, float] = Field(default=(0.01, 0.09, 0.02))
    grasp_tolerance: Tuple[float, float] = Field(default=(0.04, 0.015),
                                                 description="y and z tolerance (m)")
    reach_band: Tuple[float, float] = Field(default=(0.055, 0.09),
                                            description="Reach band in front of the bbox face (m)")
    pose_noise_std: float = Field(default=0.0, ge=0.0)

    def to_scene(self) -> HandleScene:
        return HandleScene(self.bbox_half_extents, self.grasp_tolerance, self.reach_band,
                           self.pose_noise_std)


class CampaignSettings(BaseModel):
    size: int = Field(default=100, ge=1, description="Executions per campaign")
    front_window: Tuple[float, float] = Field(default=(0.05, 0.15),
                                              description="x window in front of the bbox face (m)")
    aimed: bool = Field(default=False,
                        description="Command grasps inside the graspable box; needs pose noise")

    @field_validator('front_window')
    @classmethod
    def validate_front_window(cls, v):
        if not v[0] < v[1]:
            raise ValueError("front_window must be increasing")
        return v


class SuccessModelSettings(BaseModel):
    length_scales: Tuple[float, ...] = Field(default=(), description="Empty: bbox half extents")
    signal_variance: float = Field(default=1.0, gt=0.0)
    noise_variance: float = Field(default=0.01, gt=0.0)

    def to_hyperparams(self, scene: HandleScene) -> GpHyperparams:
        if not self.length_scales:
            defaults = default_hyperparams(scene.bbox_half_extents)
            return GpHyperparams(defaults.length_scales, self.signal_variance, self.noise_variance)
        return GpHyperparams(self.length_scales, self.signal_variance, self.noise_variance)


class ExecutionSettings(BaseModel):
    beta: float = Field(default=0.95, gt=0.0, le=1.0, description="Precondition frequency")
    max_iter: int = Field(default=200_000, ge=1, description="Rejection sampling budget")
    mode: str = Field(default="1", description="Qualitative mode used by commands")


class DiagnosisSettings(BaseModel):
    k_max: int = Field(default=200, ge=1)
    sigma0: Tuple[float, ...] = Field(default=(), description="Empty: campaign anchor")
    r: float = Field(default=0.05, gt=0.0)
    i_max: int = Field(default=50, ge=0)
    n: int = Field(default=50, ge=1)
    alpha: float = Field(default=0.8, gt=0.0, le=1.0)

    def to_config(self, anchor: Tuple[float, ...]) -> DiagnosisConfig:
        """DiagnosisConfig with ``sigma0`` falling back to ``anchor``."""
        return DiagnosisConfig(k_max=self.k_max, sigma0=self.sigma0 or tuple(anchor), r=self.r,
                               i_max=self.i_max, n=self.n, alpha=self.alpha)


class CorrectionSettings(BaseModel):
    s_max: int = Field(default=10, ge=1)
    kappa_values: Tuple[float, ...] = Field(default=(2.0, 4.0))
    trials: int = Field(default=60, ge=1)

    @field_validator('kappa_values')
    @classmethod
    def validate_kappa_values(cls, v):
        if not v or any(k < 1.0 for k in v):
            raise ValueError("kappa_values needs at least one value, all >= 1")
        return v


class SweepSettings(BaseModel):
    repetitions: int = Field(default=5, ge=1)
    full_grid: bool = False


class HarnessSettings(BaseModel):
    seed: int = Field(default=0, ge=0, le=2 ** 64 - 1)
    workers: int = Field(default=1, ge=1, le=256)
    out_dir: str = Field(default="results")


class LoggingSettings(BaseModel):
    """Logging configuration settings."""

    level: str = Field(default="INFO", description="Logging level")
    log_file: str = Field(default="logs/action_diagnosis.log", description="Log file path")
    max_file_size: str = Field(default="10MB", description="Maximum log file size")
    backup_count: int = Field(default=5, ge=0, le=100, description="Number of backup files")
    json_format: bool = Field(default=False, description="JSON lines in the log file")

    @field_validator('level')
    @classmethod
    def validate_level(cls, v):
        valid_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
        if v.upper() not in valid_levels:
            raise ValueError(f"Log level must be one of: {', '.join(valid_levels)}")
        return v.upper()

    @field_validator('max_file_size')
    @classmethod
    def validate_max_file_size(cls, v):
        parse_file_size(v)
        return v


class RelationSettings(BaseModel):
    """One ``[relation.<name>]`` section."""

    name: str
    parameter: str
    kind: str
    thresholds: Tuple[float, ...]
    group: Optional[str] = None

    @field_validator('kind')
    @classmethod
    def validate_kind(cls, v):
        if v not in ('below', 'above', 'inside'):
            raise ValueError(f"Relation kind must be below, above or inside, got {v}")
        return v


class AppSettings(BaseModel):
    """Complete application settings."""

    space: SpaceSettings
    scene: SceneSettings
    campaign: CampaignSettings
    success_model: SuccessModelSettings
    execution: ExecutionSettings
    diagnosis: DiagnosisSettings
    correction: CorrectionSettings
    sweep: SweepSettings
    harness: HarnessSettings
    logging: LoggingSettings
    relations: List[RelationSettings] = Field(default_factory=list)
    modes: Dict[str, List[str]] = Field(default_factory=dict)


class Settings:
    """
    Application settings manager.

    Loads configuration from an INI file and environment variables,
    with environment variables taking precedence and Pydantic validation.
    """

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize settings from configuration file.

        Args:
            config_file: Path to configuration file (defaults to config/action_diagnosis.ini)
        """
        self.logger = logging.getLogger(self.__class__.__name__)

        if config_file is None:
            config_file = str(Path(__file__).parent.parent.parent.parent
                              / "config" / "action_diagnosis.ini")

        self.config_file = Path(config_file)
        self.config = configparser.ConfigParser()

        self._load_config()
        self._app_settings = self._create_app_settings()

    def _load_config(self):
        """Load configuration from file."""
        if self.config_file.exists():
            try:
                self.config.read(self.config_file)
                self.logger.info(f"Configuration loaded from {self.config_file}")
            except configparser.Error as e:
                raise ConfigurationError(
                    f"Failed to load configuration file: {e}",
                    component="ConfigLoader"
                )
        else:
            self.logger.warning(f"Configuration file not found: {self.config_file}")

    def _get_env_or_config(self, env_var: Optional[str], section: str, key: str,
                           default: Optional[str] = None) -> str:
        """
        Get value from environment variable or config file.

        Args:
            env_var: Environment variable name, or None for file-only keys
            section: Config file section
            key: Config file key
            default: Default value if not found

        Returns:
            str: Configuration value

        Raises:
            ConfigurationError: If required configuration is missing
        """
        if env_var is not None:
            env_value = os.getenv(env_var)
            if env_value is not None:
                return env_value

        try:
            return self.config.get(section, key)
        except (configparser.NoSectionError, configparser.NoOptionError):
            if default is not None:
                return default
            raise ConfigurationError(
                f"Configuration not found: {section}.{key}"
                + (f" or environment variable {env_var}" if env_var else ""),
                config_section=section,
                config_key=key
            )

    def _relation_sections(self) -> List[RelationSettings]:
        relations = []
        for section in self.config.sections():
            if not section.startswith(RELATION_PREFIX):
                continue
            group = self._get_env_or_config(None, section, 'group', '').strip()
            relations.append(RelationSettings(
                name=section[len(RELATION_PREFIX):],
                parameter=self._get_env_or_config(None, section, 'parameter'),
                kind=self._get_env_or_config(None, section, 'kind').strip().lower(),
                thresholds=_floats(self._get_env_or_config(None, section, 'thresholds')),
                group=group or None
            ))
        return relations

    def _mode_sections(self) -> Dict[str, List[str]]:
        return {
            section[len(MODE_PREFIX):]: _names(self._get_env_or_config(None, section, 'relations'))
            for section in self.config.sections() if section.startswith(MODE_PREFIX)
        }

    def _create_app_settings(self) -> AppSettings:
        """Create validated application settings."""
        get = self._get_env_or_config
        try:
            space = SpaceSettings(
                names=_names(get(None, 'space', 'names', 'x, y, z')),
                lower=_floats(get(None, 'space', 'lower', '-0.2, -0.2, -0.2')),
                upper=_floats(get(None, 'space', 'upper', '0.2, 0.2, 0.2'))
            )

            scene = SceneSettings(
                bbox_half_extents=_floats(get(None, 'scene', 'bbox_half_extents',
                                              '0.01, 0.09, 0.02')),
                grasp_tolerance=_floats(get(None, 'scene', 'grasp_tolerance', '0.04, 0.015')),
                reach_band=_floats(get(None, 'scene', 'reach_band', '0.055, 0.09')),
                pose_noise_std=float(get(None, 'scene', 'pose_noise_std', '0.0'))
            )

            campaign = CampaignSettings(
                size=int(get(None, 'campaign', 'size', '100')),
                front_window=_floats(get(None, 'campaign', 'front_window', '0.05, 0.15')),
                aimed=_flag(get(None, 'campaign', 'aimed', 'false'))
            )

            success_model = SuccessModelSettings(
                length_scales=_floats(get(None, 'success_model', 'length_scales', '')),
                signal_variance=float(get(None, 'success_model', 'signal_variance', '1.0')),
                noise_variance=float(get(None, 'success_model', 'noise_variance', '0.01'))
            )

            execution = ExecutionSettings(
                beta=float(get(None, 'execution', 'beta', '0.95')),
                max_iter=int(get(None, 'execution', 'max_iter', '200000')),
                mode=get(None, 'execution', 'mode', '1').strip()
            )

            diagnosis = DiagnosisSettings(
                k_max=int(get(None, 'diagnosis', 'k_max', '200')),
                sigma0=_floats(get(None, 'diagnosis', 'sigma0', '')),
                r=float(get(None, 'diagnosis', 'r', '0.05')),
                i_max=int(get(None, 'diagnosis', 'i_max', '50')),
                n=int(get(None, 'diagnosis', 'n', '50')),
                alpha=float(get(None, 'diagnosis', 'alpha', '0.8'))
            )

            correction = CorrectionSettings(
                s_max=int(get(None, 'correction', 's_max', '10')),
                kappa_values=_floats(get(None, 'correction', 'kappa_values', '2, 4')),
                trials=int(get(None, 'correction', 'trials', '60'))
            )

            sweep = SweepSettings(
                repetitions=int(get(None, 'sweep', 'repetitions', '5')),
                full_grid=_flag(get(None, 'sweep', 'full_grid', 'false'))
            )

            harness = HarnessSettings(
                seed=int(get('ACTION_DIAGNOSIS_SEED', 'harness', 'seed', '0')),
                workers=int(get('ACTION_DIAGNOSIS_WORKERS', 'harness', 'workers', '1')),
                out_dir=get(None, 'harness', 'out_dir', 'results')
            )

            logging_settings = LoggingSettings(
                level=get('ACTION_DIAGNOSIS_LOG_LEVEL', 'logging', 'level', 'INFO'),
                log_file=get('ACTION_DIAGNOSIS_LOG_FILE', 'logging', 'log_file',
                             'logs/action_diagnosis.log'),
                max_file_size=get(None, 'logging', 'max_file_size', '10MB'),
                backup_count=int(get(None, 'logging', 'backup_count', '5')),
                json_format=_flag(get(None, 'logging', 'json_format', 'false'))
            )

            return AppSettings(
                space=space,
                scene=scene,
                campaign=campaign,
                success_model=success_model,
                execution=execution,
                diagnosis=diagnosis,
                correction=correction,
                sweep=sweep,
                harness=harness,
                logging=logging_settings,
                relations=self._relation_sections(),
                modes=self._mode_sections()
            )

        except Exception as e:
            if isinstance(e, ConfigurationError):
                raise
            raise ConfigurationError(f"Configuration validation failed: {e}")

    @property
    def app(self) -> AppSettings:
        """Get validated application settings."""
        return self._app_settings

    @property
    def seed(self) -> int:
        return self._app_settings.harness.seed

    @property
    def workers(self) -> int:
        return self._app_settings.harness.workers

    @property
    def log_level(self) -> str:
        return self._app_settings.logging.level

    @property
    def log_file(self) -> str:
        return self._app_settings.logging.log_file

    def space(self) -> ParameterSpace:
        return self._app_settings.space.to_space()

    def scene(self) -> HandleScene:
        return self._app_settings.scene.to_scene()

    def hyperparams(self) -> GpHyperparams:
        return self._app_settings.success_model.to_hyperparams(self.scene())

    def vocabulary(self, space: Optional[ParameterSpace] = None) -> RelationVocabulary:
        """
        Vocabulary from ``[relation.*]`` sections, or derived from the scene
        when there are none.
        """
        space = space or self.space()
        if not self._app_settings.relations:
            return scene_vocabulary(self.scene(), space)
        return make_vocabulary(space, [
            relation(space, r.name, r.parameter, r.kind, r.thresholds, r.group)
            for r in self._app_settings.relations
        ])
