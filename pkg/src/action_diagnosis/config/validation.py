"""
Cross-section configuration validation.

Per-section value checks live in the Pydantic models of settings.py; this
module checks the sections against each other: the vocabulary against the
parameter space, the vocabulary against the simulated scene, and the
campaign window against the space.
"""

from typing import Any, Dict, List

import numpy as np

from ..core.space import ParameterSpace
from ..execution_model.preconditions import PreconditionModel, make_preconditions
from ..relations.vocabulary import RelationVocabulary, validate_vocabulary
from ..simulator.scene import HandleScene, alignment_grid, alignment_violations
from ..utils.error_handler import ErrorHandler
from ..utils.exceptions import ActionDiagnosisError, ConfigurationError
from ..utils.logging import ErrorLogger, get_logger
from .settings import Settings


class ConfigValidator:
    """
    Main configuration validator.

    Raises ConfigurationError with every violation of one check listed.
    """

    def __init__(self):
        """Initialize configuration validator."""
        self.logger = get_logger("config_validator")
        self.error_logger = ErrorLogger("config_validator")
        self.error_handler = ErrorHandler("config_validator")

    def _fail(self, section: str, violations: List[str]) -> None:
        config_error = ConfigurationError(
            f"{section} configuration is invalid: " + "; ".join(violations),
            config_section=section,
            component="ConfigValidator"
        )
        context = {"config_section": section, "violations": violations}
        self.error_logger.log_error_with_context(config_error, "ConfigValidator", context)
        raise config_error

    def validate_vocabulary_config(self, space: ParameterSpace,
                                   vocab: RelationVocabulary) -> RelationVocabulary:
        """Vocabulary assumptions (unique names, surjective mapping, one parameter per group)."""
        violations = validate_vocabulary(space, vocab)
        if violations:
            self._fail("relations", violations)
        return vocab

    def validate_alignment(self, scene: HandleScene, space: ParameterSpace,
                           vocab: RelationVocabulary, max_reported: int = 5) -> None:
        """
        Scene and vocabulary agree: every failure cause's relation is true
        wherever the simulator reports that cause.
        """
        if space.dim != 3:
            self._fail("space", [f"the grasp scene needs 3 parameters, got {space.dim}"])
        violations = alignment_violations(scene, vocab, alignment_grid(scene, space))
        if violations:
            shown = violations[:max_reported]
            if len(violations) > max_reported:
                shown.append(f"... {len(violations) - max_reported} more")
            self._fail("relations", shown)

    def validate_campaign_window(self, scene: HandleScene, space: ParameterSpace,
                                 front_window) -> None:
        """The campaign sampling box lies inside the parameter space."""
        _, hy, hz = scene.bbox_half_extents
        lower = np.array([scene.front_face + front_window[0], -hy, -hz])
        upper = np.array([scene.front_face + front_window[1], hy, hz])
        outside = [
            name for name, lo, hi, s_lo, s_hi
            in zip(space.names, lower, upper, space.lower, space.upper)
            if lo < s_lo or hi > s_hi
        ]
        if outside:
            self._fail("campaign", [f"campaign window leaves the space on {', '.join(outside)}"])

    def validate_modes(self, vocab: RelationVocabulary,
                       modes: Dict[str, List[str]]) -> PreconditionModel:
        try:
            return make_preconditions(vocab, modes)
        except ActionDiagnosisError as e:
            self._fail("mode", [e.message])

    def validate_all_config(self, settings: Settings) -> Dict[str, Any]:
        """
        Validate all cross-section constraints.

        Args:
            settings: Settings instance

        Returns:
            dict: Built space, scene, vocabulary and (when configured) modes
        """
        try:
            space = settings.space()
            scene = settings.scene()
            vocab = settings.vocabulary(space)
        except ConfigurationError:
            raise
        except ActionDiagnosisError as e:
            self._fail("space", [e.message])

        validated: Dict[str, Any] = {"space": space, "scene": scene}
        validated["vocabulary"] = self.validate_vocabulary_config(space, vocab)
        self.validate_alignment(scene, space, vocab)
        self.validate_campaign_window(scene, space, settings.app.campaign.front_window)
        if settings.app.campaign.aimed and scene.pose_noise_std <= 0:
            self._fail("campaign", ["an aimed campaign needs pose_noise_std > 0"])
        if settings.app.modes:
            validated["modes"] = self.validate_modes(vocab, settings.app.modes)

        self.logger.info("Configuration validation completed successfully")
        return validated
