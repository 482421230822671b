"""
Shared domain types: parameter spaces, experiences and seeded randomness.
"""

from .experience import Experience, Provenance, failures, successes
from .rng import RngHandle
from .space import (
    ActionParameterization,
    ParameterDef,
    ParameterSpace,
    as_parameterization,
    clamp_to_space,
    make_space,
)

__all__ = [
    'ActionParameterization',
    'Experience',
    'ParameterDef',
    'ParameterSpace',
    'Provenance',
    'RngHandle',
    'as_parameterization',
    'clamp_to_space',
    'failures',
    'make_space',
    'successes'
]
