"""
Unit tests for the relation vocabulary, conflict removal and precondition checks.
"""

import numpy as np
import pytest

from action_diagnosis.core.rng import RngHandle
from action_diagnosis.execution_model.preconditions import make_preconditions
from action_diagnosis.relations.conflicts import remove_conflicts, satisfies, satisfies_many
from action_diagnosis.relations.vocabulary import (
    PredicateKind,
    RelationDef,
    RelationalState,
    RelationVocabulary,
    extract_relations,
    make_vocabulary,
    relation,
    truth_matrix,
    validate_vocabulary,
)
from action_diagnosis.utils.exceptions import (
    ConfigurationError,
    DataValidationError,
    UnknownModeError,
    UnknownRelationError,
)
from tests.fixtures.builders import ALIGNED, MID_REACH


class TestRelationDef:
    """Test cases for single predicates."""

    def test_below_and_above_are_strict(self):
        below = RelationDef("b", 0, PredicateKind.BELOW, (0.0,))
        above = RelationDef("a", 0, PredicateKind.ABOVE, (0.0,))

        np.testing.assert_array_equal(below.evaluate([-0.1, 0.0, 0.1]), [True, False, False])
        np.testing.assert_array_equal(above.evaluate([-0.1, 0.0, 0.1]), [False, False, True])

    def test_inside_is_inclusive(self):
        inside = RelationDef("i", 0, "inside", (-0.1, 0.1))
        np.testing.assert_array_equal(inside.evaluate([-0.1, 0.0, 0.1, 0.11]),
                                      [True, True, True, False])

    def test_threshold_count_checked(self):
        with pytest.raises(DataValidationError, match="needs 2 threshold"):
            RelationDef("i", 0, "inside", (0.1,))
        with pytest.raises(DataValidationError, match="needs 1 threshold"):
            RelationDef("b", 0, "below", (0.1, 0.2))

    def test_inverted_interval(self):
        with pytest.raises(DataValidationError, match="inverted"):
            RelationDef("i", 0, "inside", (0.1, -0.1))


class TestExtractRelations:
    """Test cases for extract_relations on the bbox-symmetric vocabulary."""

    def test_left_of_handle(self, symmetric_vocab):
        state = extract_relations(symmetric_vocab, [0.0, 0.05, 0.0])

        assert state["leftOf_y"] is True
        assert state["rightOf_y"] is False
        assert state["aligned_y"] is False

    def test_bbox_center(self, symmetric_vocab):
        state = extract_relations(symmetric_vocab, [0.0, 0.0, 0.0])

        assert state.true_relations() == ALIGNED
        for name in ("behind_x", "in_front_of_x", "leftOf_y", "rightOf_y",
                     "below_z", "above_z", "far_in_front_of_x"):
            assert state[name] is False

    def test_far_in_front(self, symmetric_vocab):
        # front face at 0.01, reach margin 0.05
        state = extract_relations(symmetric_vocab, [0.12, 0.0, 0.0])
        assert state["far_in_front_of_x"] is True
        assert state["in_front_of_x"] is True

    def test_unknown_relation_lookup(self, symmetric_vocab):
        state = extract_relations(symmetric_vocab, [0.0, 0.0, 0.0])
        with pytest.raises(UnknownRelationError):
            state["nextTo_y"]

    def test_disjoint_groups_never_both_true(self, vocab, symmetric_vocab, space):
        rng = RngHandle(5)
        points = rng.uniform(space.lower, space.upper, size=(500, 3))
        for v in (vocab, symmetric_vocab):
            truth = truth_matrix(v, points)
            for members in v.groups().values():
                columns = [v.names.index(name) for name in members]
                assert truth[:, columns].sum(axis=1).max() <= 1
            for x in points[:50]:
                extract_relations(v, x)

    def test_state_rejects_group_clash(self, vocab):
        truth = [name in {"above_z", "below_z"} for name in vocab.names]
        with pytest.raises(DataValidationError, match="more than one true relation"):
            RelationalState.from_truth(vocab, truth)

    def test_truth_matrix_dimension_checked(self, vocab):
        with pytest.raises(DataValidationError, match="Dimension mismatch"):
            truth_matrix(vocab, np.zeros((4, 2)))


class TestRemoveConflicts:
    """Test cases for remove_conflicts."""

    def test_same_group_pair_removed(self, vocab):
        kept, violations = remove_conflicts(vocab, {"above_z", "below_z"}, {2: 0.03})

        assert kept == frozenset()
        assert violations == {}

    def test_no_conflict_unchanged(self, vocab):
        kept, violations = remove_conflicts(vocab, {"leftOf_y"}, {1: 0.06})

        assert kept == frozenset({"leftOf_y"})
        assert violations == {1: 0.06}

    def test_only_conflicting_group_removed(self, vocab):
        kept, violations = remove_conflicts(vocab, {"above_z", "leftOf_y", "rightOf_y"},
                                            {1: 0.06, 2: 0.03})

        assert kept == frozenset({"above_z"})
        assert violations == {2: 0.03}

    def test_unknown_candidate(self, vocab):
        with pytest.raises(UnknownRelationError):
            remove_conflicts(vocab, {"nextTo_y"}, {})

    def test_random_candidate_sets(self, vocab):
        generator = np.random.default_rng(9)
        names = np.array(vocab.names)
        for _ in range(500):
            candidates = {str(n) for n in names[generator.random(len(names)) < 0.4]}
            violations = {p: float(generator.normal()) for p in range(3)
                          if generator.random() < 0.7}
            kept, kept_violations = remove_conflicts(vocab, candidates, violations)

            assert kept <= candidates
            groups = [vocab.group_of(d) for d in kept]
            assert len(groups) == len(set(groups))
            for d in candidates - kept:
                assert sum(vocab.group_of(c) == vocab.group_of(d) for c in candidates) > 1
            assert kept_violations == {p: v for p, v in violations.items()
                                       if p in {vocab.parameter_of(d) for d in kept}}
            assert remove_conflicts(vocab, kept, kept_violations) == (kept, kept_violations)


class TestValidateVocabulary:
    """Test cases for validate_vocabulary and make_vocabulary."""

    def test_default_vocabulary_valid(self, space, vocab, symmetric_vocab):
        assert validate_vocabulary(space, vocab) == []
        assert validate_vocabulary(space, symmetric_vocab) == []

    def test_uncovered_parameter(self, space):
        v = RelationVocabulary(space, (
            relation(space, "aligned_x", "x", "inside", (-0.01, 0.01)),
            relation(space, "aligned_y", "y", "inside", (-0.09, 0.09)),
        ))
        assert validate_vocabulary(space, v) == ["parameter z has no relation"]

    def test_group_spanning_parameters(self, space):
        v = RelationVocabulary(space, (
            relation(space, "aligned_x", "x", "inside", (-0.01, 0.01)),
            relation(space, "leftOf_y", "y", "above", (0.09,), "g"),
            relation(space, "above_z", "z", "above", (0.02,), "g"),
        ))
        assert validate_vocabulary(space, v) == ["group g spans multiple parameters"]

    def test_duplicate_names(self, space):
        v = RelationVocabulary(space, (
            relation(space, "aligned", "x", "inside", (-0.01, 0.01)),
            relation(space, "aligned", "y", "inside", (-0.09, 0.09)),
            relation(space, "above_z", "z", "above", (0.02,)),
        ))
        assert validate_vocabulary(space, v) == ["duplicate relation name aligned"]

    def test_make_vocabulary_refuses_violations(self, space):
        with pytest.raises(ConfigurationError, match="parameter z has no relation"):
            make_vocabulary(space, [
                relation(space, "aligned_x", "x", "inside", (-0.01, 0.01)),
                relation(space, "aligned_y", "y", "inside", (-0.09, 0.09)),
            ])


class TestSatisfies:
    """Test cases for satisfies."""

    def test_bbox_center_satisfies_aligned(self, symmetric_vocab):
        preconditions = make_preconditions(symmetric_vocab, {1: ALIGNED})
        assert satisfies(symmetric_vocab, preconditions, 1, [0.0, 0.0, 0.0])

    def test_far_in_front_rejected(self, symmetric_vocab):
        preconditions = make_preconditions(
            symmetric_vocab, {1: {"in_front_of_x", "aligned_y", "aligned_z"}})
        assert satisfies(symmetric_vocab, preconditions, 1, [0.04, 0.0, 0.0])
        assert not satisfies(symmetric_vocab, preconditions, 1, [0.12, 0.0, 0.0])

    def test_one_violated_relation(self, vocab):
        preconditions = make_preconditions(vocab, {1: ALIGNED})
        assert satisfies(vocab, preconditions, 1, [MID_REACH, 0.0, 0.0])
        assert not satisfies(vocab, preconditions, 1, [MID_REACH, 0.0, 0.02])

    def test_unknown_mode(self, vocab):
        preconditions = make_preconditions(vocab, {1: ALIGNED})
        with pytest.raises(UnknownModeError):
            satisfies(vocab, preconditions, 2, [MID_REACH, 0.0, 0.0])

    def test_batch_matches_single(self, vocab, space):
        preconditions = make_preconditions(vocab, {1: ALIGNED})
        rng = RngHandle(8)
        points = rng.uniform([0.05, -0.06, -0.03], [0.12, 0.06, 0.03], size=(200, 3))

        batch = satisfies_many(vocab, ALIGNED, points)
        single = [satisfies(vocab, preconditions, 1, x) for x in points]
        np.testing.assert_array_equal(batch, single)
        assert batch.any() and not batch.all()
