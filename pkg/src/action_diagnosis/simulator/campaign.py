"""
Grasp campaigns (random or aimed at the graspable region) and their CSV form.
"""

from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..core.experience import Experience
from ..core.rng import RngHandle
from ..utils.exceptions import ConfigurationError, DataValidationError
from ..utils.logging import get_logger
from .scene import CAUSE_TO_RELATION, HandleScene, execute_grasp

logger = get_logger(__name__)

CAMPAIGN_COLUMNS = ["id", "x", "y", "z", "success", "causes"]


def _require_executions(count: int) -> None:
    if count < 1:
        raise DataValidationError("Campaign needs at least one execution",
                                  field_name="count", invalid_value=str(count),
                                  component="Simulator")


def random_campaign(scene: HandleScene, count: int, rng: RngHandle,
                    front_window: Tuple[float, float] = (0.05, 0.15)) -> List[Experience]:
    """
    Execute ``count`` random grasps.

    y and z are uniform within the handle bounding box; x is uniform
    between ``front_window`` meters in front of the bbox face.

    Returns:
        Experiences with ids 0..count-1, cause labels and bbox extents
    """
    _require_executions(count)
    hx, hy, hz = scene.bbox_half_extents
    lower = np.array([scene.front_face + front_window[0], -hy, -hz])
    upper = np.array([scene.front_face + front_window[1], hy, hz])
    return _execute_campaign(scene, rng.uniform(lower, upper, size=(count, 3)), rng)


def aimed_campaign(scene: HandleScene, count: int, rng: RngHandle) -> List[Experience]:
    """
    Execute ``count`` grasps commanded uniformly inside the graspable box.

    Failures only come from pose noise, so with ``pose_noise_std`` > 0 the
    recorded parameters of a failure satisfy every alignment relation and
    the diagnosis has to search for the violated one.

    Raises:
        ConfigurationError: If the scene has no pose noise
        DataValidationError: If ``count`` < 1
    """
    _require_executions(count)
    if scene.pose_noise_std <= 0:
        raise ConfigurationError("An aimed campaign needs pose_noise_std > 0",
                                 config_section="scene", config_key="pose_noise_std",
                                 component="Simulator")
    intervals = [scene.graspable_interval(axis) for axis in range(3)]
    lower = np.array([low for low, _ in intervals])
    upper = np.array([high for _, high in intervals])
    return _execute_campaign(scene, rng.uniform(lower, upper, size=(count, 3)), rng)


def _execute_campaign(scene: HandleScene, points: np.ndarray,
                      rng: RngHandle) -> List[Experience]:
    experiences = []
    for i, x in enumerate(points):
        outcome = execute_grasp(scene, x, rng)
        experiences.append(Experience(
            params=x,
            label=1.0 if outcome.success else 0.0,
            cause_labels=outcome.causes,
            bbox_extents=scene.bbox_full_extents,
            experience_id=i,
        ))
    failed = sum(1 for e in experiences if not e.succeeded)
    logger.info(f"Campaign of {len(experiences)} grasps: {failed} failed")
    return experiences


def campaign_frame(experiences: Sequence[Experience]) -> pd.DataFrame:
    rows = []
    for index, e in enumerate(experiences):
        rows.append({
            "id": index if e.experience_id is None else e.experience_id,
            "x": float(e.params[0]),
            "y": float(e.params[1]),
            "z": float(e.params[2]),
            "success": int(e.succeeded),
            "causes": ";".join(sorted(e.cause_labels or ())),
        })
    return pd.DataFrame(rows, columns=CAMPAIGN_COLUMNS)


def write_campaign(experiences: Sequence[Experience], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    campaign_frame(experiences).to_csv(path, index=False, float_format="%.17g",
                                       lineterminator="\n")
    return path


def read_campaign(path: Union[str, Path], scene: HandleScene) -> List[Experience]:
    """
    Load a campaign CSV; bbox extents are taken from ``scene``.

    Raises:
        ConfigurationError: If the file is missing or lacks columns
        DataValidationError: On an unknown failure cause
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"Campaign file not found: {path}", component="Simulator")
    frame = pd.read_csv(path, dtype={"causes": str}, keep_default_na=False)
    missing = set(CAMPAIGN_COLUMNS) - set(frame.columns)
    if missing:
        raise ConfigurationError(f"Campaign file {path} lacks columns {sorted(missing)}",
                                 component="Simulator")

    experiences = []
    for row in frame.itertuples(index=False):
        causes = frozenset(c for c in str(row.causes).split(";") if c)
        unknown = causes - CAUSE_TO_RELATION.keys()
        if unknown:
            raise DataValidationError(f"Unknown failure cause(s) in {path}: {sorted(unknown)}",
                                      field_name="causes", component="Simulator")
        experiences.append(Experience(
            params=np.array([row.x, row.y, row.z], dtype=float),
            label=float(row.success),
            cause_labels=causes,
            bbox_extents=scene.bbox_full_extents,
            experience_id=int(row.id),
        ))
    return experiences
