"""
Pytest configuration and shared fixtures for the action diagnosis test suite.

This module provides the default scene, its parameter space and
vocabulary, seeded random streams and fitted models.
"""

import sys
from pathlib import Path

import pytest

# Import application modules
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from action_diagnosis.core.rng import RngHandle
from action_diagnosis.relations.vocabulary import symmetric_grasp_vocabulary
from action_diagnosis.simulator.campaign import random_campaign
from action_diagnosis.simulator.scene import HandleScene, default_space, scene_vocabulary
from action_diagnosis.success_model.gp import default_hyperparams
from tests.fixtures.builders import aligned_model, training_set
from tests.fixtures.configs import write_config


# ============================================================================
# PYTEST CONFIGURATION
# ============================================================================

def pytest_configure(config):
    """Configure pytest with custom markers and settings."""
    config.addinivalue_line(
        "markers", "unit: mark test as a unit test"
    )
    config.addinivalue_line(
        "markers", "integration: mark test as an integration test"
    )
    config.addinivalue_line(
        "markers", "slow: mark test as slow running"
    )
    config.addinivalue_line(
        "markers", "performance: mark test as a performance test"
    )


def pytest_collection_modifyitems(config, items):
    """Modify test collection to add markers based on test location."""
    for item in items:
        # Add unit marker to tests in unit directory
        if "unit" in str(item.fspath):
            item.add_marker(pytest.mark.unit)

        # Integration tests run whole pipelines
        if "integration" in str(item.fspath):
            item.add_marker(pytest.mark.integration)
            item.add_marker(pytest.mark.slow)


# ============================================================================
# SCENE FIXTURES
# ============================================================================

@pytest.fixture
def space():
    """Provide the +/-0.2 m (x, y, z) parameter space."""
    return default_space()


@pytest.fixture
def scene():
    """Provide the default handle scene."""
    return HandleScene()


@pytest.fixture
def vocab(scene, space):
    """Provide the scene-aligned relation vocabulary."""
    return scene_vocabulary(scene, space)


@pytest.fixture
def symmetric_vocab(space):
    """Provide the bbox-symmetric vocabulary with a 0.02 m half-width on y."""
    return symmetric_grasp_vocabulary(space, (0.01, 0.02, 0.02), reach_margin=0.05)


@pytest.fixture
def hyper(scene):
    """Provide default GP hyperparameters for the scene."""
    return default_hyperparams(scene.bbox_half_extents)


# ============================================================================
# MODEL AND DATA FIXTURES
# ============================================================================

@pytest.fixture
def rng():
    """Provide a seeded random stream."""
    return RngHandle(1234)


@pytest.fixture
def experiences():
    """Provide aligned successes plus one failure per direction."""
    return training_set()


@pytest.fixture
def execution_model(vocab, hyper):
    """Provide an execution model requiring all aligned relations."""
    return aligned_model(vocab, hyper)


@pytest.fixture
def campaign(scene):
    """Provide a 100-grasp campaign on the default scene."""
    return random_campaign(scene, 100, RngHandle(7).stream("campaign"))


# ============================================================================
# CONFIGURATION FIXTURES
# ============================================================================

@pytest.fixture
def quick_config_file(tmp_path):
    """Create a small configuration file for pipeline and CLI tests."""
    return write_config(tmp_path / "quick.ini")


@pytest.fixture(autouse=True)
def clear_environment(monkeypatch):
    """Keep environment overrides from leaking into settings tests."""
    for name in ("ACTION_DIAGNOSIS_SEED", "ACTION_DIAGNOSIS_WORKERS",
                 "ACTION_DIAGNOSIS_LOG_LEVEL", "ACTION_DIAGNOSIS_LOG_FILE"):
        monkeypatch.delenv(name, raising=False)
