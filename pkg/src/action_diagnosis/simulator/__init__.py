"""
Handle-grasp simulator: ground-truth outcomes, failure causes and campaigns.
"""

from .campaign import (
    aimed_campaign,
    campaign_frame,
    random_campaign,
    read_campaign,
    write_campaign,
)
from .scene import (
    CAUSE_TO_RELATION,
    GraspOutcome,
    HandleScene,
    alignment_grid,
    alignment_violations,
    causes_to_relations,
    default_space,
    execute_grasp,
    grasp_causes,
    scene_vocabulary,
    simulate_grasp,
)

__all__ = [
    'CAUSE_TO_RELATION',
    'GraspOutcome',
    'HandleScene',
    'aimed_campaign',
    'alignment_grid',
    'alignment_violations',
    'campaign_frame',
    'causes_to_relations',
    'default_space',
    'execute_grasp',
    'grasp_causes',
    'random_campaign',
    'read_campaign',
    'scene_vocabulary',
    'simulate_grasp',
    'write_campaign'
]
