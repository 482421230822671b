"""
Unit tests for precondition learning, execution sampling and model bundles.
"""

import json

import numpy as np
import pytest

from action_diagnosis.core.rng import RngHandle
from action_diagnosis.execution_model.model import (
    ExecutionModel,
    ExecutionModelBundle,
    load_execution_model,
    sample_execution,
    save_execution_model,
)
from action_diagnosis.execution_model.preconditions import (
    learn_mode_preconditions,
    learn_preconditions,
    make_preconditions,
    mode_id,
)
from action_diagnosis.relations.conflicts import satisfies
from action_diagnosis.simulator.scene import default_space
from action_diagnosis.success_model.gp import fit_success_model, predict_many
from action_diagnosis.utils.exceptions import (
    ConfigurationError,
    DataValidationError,
    EmptyDatasetError,
    UnknownModeError,
    UnknownRelationError,
)
from tests.fixtures.builders import ALIGNED, MID_REACH, aligned_successes, make_experience


class TestPreconditionModel:
    """Test cases for hand-specified precondition models."""

    def test_required_lookup(self, vocab):
        model = make_preconditions(vocab, {1: ALIGNED, "2": {"aligned_x"}})

        assert model.required(1) == ALIGNED
        assert model.required("1") == ALIGNED
        assert model.required(2) == frozenset({"aligned_x"})
        assert model.mode_ids == (1, 2)

    def test_unknown_mode(self, vocab):
        with pytest.raises(UnknownModeError) as exc_info:
            make_preconditions(vocab, {1: ALIGNED}).required(3)
        assert exc_info.value.mode == 3

    def test_unknown_relation(self, vocab):
        with pytest.raises(UnknownRelationError):
            make_preconditions(vocab, {1: {"aligned_x", "nextTo_y"}})

    def test_disjoint_pair_rejected(self, vocab):
        with pytest.raises(DataValidationError, match="disjoint relations"):
            make_preconditions(vocab, {1: {"aligned_y", "leftOf_y"}})

    def test_no_modes(self, vocab):
        with pytest.raises(DataValidationError):
            make_preconditions(vocab, {})

    @pytest.mark.parametrize("raw,expected", [("1", 1), (" 7 ", 7), ("open", "open"), (4, 4)])
    def test_mode_id_normalization(self, raw, expected):
        assert mode_id(raw) == expected


class TestLearnPreconditions:
    """Test cases for learning R from successes."""

    def test_aligned_successes(self, vocab):
        model = learn_preconditions(vocab, aligned_successes())

        assert model.mode_ids == (1,)
        assert model.required(1) == ALIGNED

    def test_infrequent_relation_excluded(self, vocab):
        successes = aligned_successes()
        successes[3] = make_experience((MID_REACH, 0.06, 0.0), 1.0)

        required = learn_preconditions(vocab, successes, beta=0.95).required(1)

        assert required == frozenset({"aligned_x", "aligned_z"})

    def test_beta_is_inclusive(self, vocab):
        successes = aligned_successes()
        successes[3] = make_experience((MID_REACH, 0.06, 0.0), 1.0)

        assert learn_preconditions(vocab, successes, beta=0.9).required(1) == ALIGNED

    def test_no_successes(self, vocab):
        with pytest.raises(EmptyDatasetError):
            learn_preconditions(vocab, [])

    def test_failures_rejected(self, vocab):
        with pytest.raises(DataValidationError, match="successful experiences only"):
            learn_preconditions(vocab, [make_experience((0.15, 0.0, 0.0), 0.0)])

    @pytest.mark.parametrize("beta", [0.0, 1.5])
    def test_beta_range(self, vocab, beta):
        with pytest.raises(DataValidationError, match="beta"):
            learn_preconditions(vocab, aligned_successes(), beta=beta)

    def test_modes_learned_independently(self, vocab):
        left = [make_experience((MID_REACH, 0.06 + 0.001 * i, 0.0), 1.0) for i in range(5)]
        successes = aligned_successes(5) + left

        model = learn_mode_preconditions(vocab, successes, [1] * 5 + ["2"] * 5)

        assert model.required(1) == ALIGNED
        assert model.required(2) == frozenset({"aligned_x", "leftOf_y", "aligned_z"})

    def test_mode_ids_must_align(self, vocab):
        with pytest.raises(DataValidationError, match="mode id"):
            learn_mode_preconditions(vocab, aligned_successes(3), [1, 1])


class TestSampleExecution:
    """Test cases for rejection-sampling execution."""

    def test_sample_satisfies_preconditions(self, execution_model):
        x = sample_execution(execution_model, 1, 200_000, RngHandle(21))

        assert x is not None
        assert satisfies(execution_model.vocab, execution_model.preconditions, 1, x)
        assert execution_model.space.contains(x)

    def test_sampling_is_deterministic(self, execution_model):
        first = sample_execution(execution_model, 1, 200_000, RngHandle(4))
        second = sample_execution(execution_model, 1, 200_000, RngHandle(4))
        np.testing.assert_array_equal(first, second)

    def test_unsatisfiable_mode_returns_none(self, vocab, execution_model):
        # exhaustive axis groups: some relation is always true
        impossible = ExecutionModel(execution_model.space, vocab,
                                    make_preconditions(vocab, {1: []}), execution_model.success)
        assert sample_execution(impossible, 1, 5000, RngHandle(2)) is None

    def test_max_iter_must_be_positive(self, execution_model):
        with pytest.raises(DataValidationError, match="max_iter"):
            sample_execution(execution_model, 1, 0, RngHandle(2))

    def test_unknown_mode(self, execution_model):
        with pytest.raises(UnknownModeError):
            sample_execution(execution_model, 9, 100, RngHandle(2))


class TestExecutionModel:
    """Test cases for model construction and JSON bundles."""

    def test_space_mismatch(self, vocab, experiences, hyper):
        success = fit_success_model(experiences, hyper)
        with pytest.raises(DataValidationError, match="different parameter space"):
            ExecutionModel(default_space(0.3), vocab, make_preconditions(vocab, {1: ALIGNED}),
                           success)

    def test_with_success_keeps_relations(self, execution_model, experiences, hyper):
        replacement = fit_success_model(experiences[:10], hyper)
        swapped = execution_model.with_success(replacement)

        assert swapped.preconditions == execution_model.preconditions
        assert swapped.success is replacement

    def test_bundle_reload(self, execution_model, tmp_path, rng, space):
        path = save_execution_model(execution_model, tmp_path / "model.json")
        reloaded = load_execution_model(path)
        queries = rng.uniform(space.lower, space.upper, size=(40, 3))

        assert reloaded.space == execution_model.space
        assert reloaded.vocab.relations == execution_model.vocab.relations
        assert reloaded.preconditions.required(1) == ALIGNED
        np.testing.assert_allclose(predict_many(reloaded.success, queries),
                                   predict_many(execution_model.success, queries),
                                   rtol=1e-12, atol=1e-15)

    def test_bundle_is_json(self, execution_model, tmp_path):
        path = save_execution_model(execution_model, tmp_path / "model.json")
        data = json.loads(path.read_text())

        assert data["format_version"] == 1
        assert data["modes"] == {"1": sorted(ALIGNED)}
        assert [p["name"] for p in data["parameters"]] == ["x", "y", "z"]

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError, match="not found"):
            load_execution_model(tmp_path / "absent.json")

    def test_invalid_bundle(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"format_version": 2}')
        with pytest.raises(ConfigurationError, match="Invalid execution model"):
            load_execution_model(path)

    def test_bundle_roundtrip_through_pydantic(self, execution_model):
        bundle = ExecutionModelBundle.from_model(execution_model)
        assert ExecutionModelBundle.model_validate_json(bundle.model_dump_json()) == bundle
