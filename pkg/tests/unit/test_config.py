"""
Unit tests for configuration module.

Tests for settings loading, environment overrides and cross-section
validation.
"""

from pathlib import Path

import pytest

from action_diagnosis.config.settings import Settings
from action_diagnosis.config.validation import ConfigValidator
from action_diagnosis.simulator.scene import HandleScene
from action_diagnosis.utils.exceptions import ConfigurationError
from tests.fixtures.configs import SYMMETRIC_RELATIONS, write_config

SAMPLE_RELATIONS = Path(__file__).parent.parent.parent / "config" / "relations.sample.ini"


class TestSettings:
    """Test cases for Settings class."""

    def test_quick_config(self, quick_config_file):
        settings = Settings(quick_config_file)
        app = settings.app

        assert app.campaign.size == 40
        assert app.scene.grasp_tolerance == (0.06, 0.018)
        assert app.diagnosis.n == 3
        assert app.diagnosis.sigma0 == ()
        assert app.correction.kappa_values == (2.0, 4.0)
        assert app.sweep.full_grid is False
        assert settings.seed == 11
        assert settings.log_level == "WARNING"
        assert settings.log_file == ""

    def test_missing_file_uses_defaults(self, tmp_path):
        settings = Settings(str(tmp_path / "absent.ini"))

        assert settings.seed == 0
        assert settings.workers == 1
        assert settings.scene() == HandleScene()
        assert settings.app.execution.max_iter == 200_000
        assert settings.app.relations == []

    def test_default_file(self):
        settings = Settings()

        assert settings.config_file.name == "action_diagnosis.ini"
        assert settings.app.diagnosis.k_max == 200
        assert settings.app.correction.trials == 60

    def test_environment_overrides(self, quick_config_file, monkeypatch):
        monkeypatch.setenv("ACTION_DIAGNOSIS_SEED", "99")
        monkeypatch.setenv("ACTION_DIAGNOSIS_WORKERS", "4")
        monkeypatch.setenv("ACTION_DIAGNOSIS_LOG_LEVEL", "debug")

        settings = Settings(quick_config_file)

        assert settings.seed == 99
        assert settings.workers == 4
        assert settings.log_level == "DEBUG"

    @pytest.mark.parametrize("overrides", [
        {"execution": {"beta": "1.5"}},
        {"diagnosis": {"alpha": "0"}},
        {"correction": {"kappa_values": "0.5"}},
        {"campaign": {"front_window": "0.15, 0.05"}},
        {"harness": {"seed": "-3"}},
        {"logging": {"level": "VERBOSE"}},
        {"logging": {"max_file_size": "huge"}},
        {"scene": {"reach_band": "0.09"}},
    ])
    def test_invalid_values(self, tmp_path, overrides):
        path = write_config(tmp_path / "bad.ini", overrides)
        with pytest.raises(ConfigurationError, match="Configuration validation failed"):
            Settings(path)

    def test_non_numeric_value(self, tmp_path):
        path = write_config(tmp_path / "bad.ini", {"diagnosis": {"k_max": "many"}})
        with pytest.raises(ConfigurationError):
            Settings(path)

    def test_hyperparams_default_to_half_extents(self, quick_config_file):
        hyper = Settings(quick_config_file).hyperparams()
        assert hyper.length_scales == (0.01, 0.09, 0.02)

    def test_relation_and_mode_sections(self, tmp_path):
        extra = SYMMETRIC_RELATIONS + "\n[mode.1]\nrelations = aligned_x, aligned_y, aligned_z\n"
        settings = Settings(write_config(tmp_path / "relations.ini", extra=extra))

        vocab = settings.vocabulary()

        assert len(settings.app.relations) == 9
        assert vocab.group_of("leftOf_y") == "y_axis"
        assert vocab.get("in_front_of_x").thresholds == (0.01,)
        assert settings.app.modes == {"1": ["aligned_x", "aligned_y", "aligned_z"]}

    def test_unknown_relation_kind(self, tmp_path):
        extra = "\n[relation.odd]\nparameter = x\nkind = sideways\nthresholds = 0.1\n"
        with pytest.raises(ConfigurationError):
            Settings(write_config(tmp_path / "odd.ini", extra=extra))

    def test_missing_relation_key(self, tmp_path):
        extra = "\n[relation.odd]\nparameter = x\nkind = above\n"
        with pytest.raises(ConfigurationError) as exc_info:
            Settings(write_config(tmp_path / "odd.ini", extra=extra))
        assert exc_info.value.config_key == "thresholds"


class TestConfigValidator:
    """Test cases for ConfigValidator."""

    @pytest.fixture
    def validator(self):
        return ConfigValidator()

    def test_default_configuration(self, validator):
        validated = validator.validate_all_config(Settings())

        assert validated["space"].names == ("x", "y", "z")
        assert "far_in_front_of_x" in validated["vocabulary"]
        assert "modes" not in validated

    def test_quick_configuration(self, validator, quick_config_file):
        validated = validator.validate_all_config(Settings(quick_config_file))
        assert validated["scene"].graspable_interval(1) == (-0.06, 0.06)

    def test_sample_relations_align_with_scene(self, validator, tmp_path):
        path = write_config(tmp_path / "explicit.ini",
                            {"scene": {"grasp_tolerance": "0.04, 0.015",
                                       "reach_band": "0.055, 0.09"}},
                            extra=SAMPLE_RELATIONS.read_text())
        validated = validator.validate_all_config(Settings(path))

        assert validated["modes"].required(1) == frozenset(
            {"aligned_x", "aligned_y", "aligned_z"})

    def test_misaligned_vocabulary(self, validator, tmp_path):
        path = write_config(tmp_path / "symmetric.ini", extra=SYMMETRIC_RELATIONS)
        with pytest.raises(ConfigurationError, match="relations configuration is invalid"):
            validator.validate_all_config(Settings(path))

    def test_incomplete_vocabulary(self, validator, tmp_path):
        extra = ("\n[relation.aligned_x]\nparameter = x\nkind = inside\n"
                 "thresholds = 0.065, 0.10\n")
        with pytest.raises(ConfigurationError, match="parameter y has no relation"):
            validator.validate_all_config(Settings(write_config(tmp_path / "x.ini",
                                                                extra=extra)))

    def test_campaign_window_outside_space(self, validator, tmp_path):
        path = write_config(tmp_path / "window.ini", {"campaign": {"front_window": "0.05, 0.25"}})
        with pytest.raises(ConfigurationError, match="leaves the space on x"):
            validator.validate_all_config(Settings(path))

    def test_aimed_campaign_needs_pose_noise(self, validator, tmp_path):
        path = write_config(tmp_path / "aimed.ini", {"campaign": {"aimed": "true"}})
        with pytest.raises(ConfigurationError, match="aimed campaign needs pose_noise_std"):
            validator.validate_all_config(Settings(path))

    def test_aimed_campaign_with_pose_noise(self, validator, tmp_path):
        path = write_config(tmp_path / "aimed.ini", {"campaign": {"aimed": "true"},
                                                     "scene": {"pose_noise_std": "0.004"}})
        settings = Settings(path)
        validated = validator.validate_all_config(settings)

        assert settings.app.campaign.aimed is True
        assert validated["scene"].pose_noise_std == 0.004

    def test_mode_with_disjoint_relations(self, validator, tmp_path):
        extra = "\n[mode.1]\nrelations = aligned_y, leftOf_y\n"
        with pytest.raises(ConfigurationError, match="mode configuration is invalid"):
            validator.validate_all_config(Settings(write_config(tmp_path / "m.ini",
                                                                extra=extra)))
