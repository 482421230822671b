"""
Spatial relation vocabulary, relational states and conflict handling.
"""

from .conflicts import remove_conflicts, satisfies, satisfies_many
from .vocabulary import (
    PredicateKind,
    RelationDef,
    RelationalState,
    RelationVocabulary,
    axis_vocabulary,
    extract_relations,
    make_vocabulary,
    relation,
    symmetric_grasp_vocabulary,
    truth_matrix,
    validate_vocabulary,
)

__all__ = [
    'PredicateKind',
    'RelationDef',
    'RelationalState',
    'RelationVocabulary',
    'axis_vocabulary',
    'extract_relations',
    'make_vocabulary',
    'relation',
    'remove_conflicts',
    'satisfies',
    'satisfies_many',
    'symmetric_grasp_vocabulary',
    'truth_matrix',
    'validate_vocabulary'
]
