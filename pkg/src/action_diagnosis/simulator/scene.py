"""
Deterministic handle-grasp world.

Parameterizations are end-effector offsets (x, y, z) from the handle
bounding-box center: +x points from the handle toward the robot, +y is
robot-left and +z is up. The front face of the bounding box sits at
x = +half_extent_x and the gripper must stop inside the reach band in
front of it.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
import numpy.typing as npt

from ..core.rng import RngHandle
from ..core.space import ActionParameterization, ParameterSpace, make_space
from ..relations.vocabulary import RelationVocabulary, axis_vocabulary, truth_matrix
from ..utils.exceptions import DataValidationError

TOO_FAR = "too_far"
COLLISION = "collision_with_drawer"
TOO_LEFT = "too_left"
TOO_RIGHT = "too_right"
TOO_HIGH = "too_high"
TOO_LOW = "too_low"

CAUSE_TO_RELATION: Dict[str, str] = {
    TOO_FAR: "far_in_front_of_x",
    COLLISION: "close_in_front_of_x",
    TOO_LEFT: "leftOf_y",
    TOO_RIGHT: "rightOf_y",
    TOO_HIGH: "above_z",
    TOO_LOW: "below_z",
}


@dataclass(frozen=True)
class HandleScene:
    """
    Handle geometry and graspable region, in meters.

    ``grasp_tolerance`` is (y, z): how far off-center a grasp still holds.
    ``reach_band`` is (min, max) distance in front of the bbox face; closer
    than min collides with the drawer, beyond max the gripper misses.
    """

    bbox_half_extents: Tuple[float, float, float] = (0.01, 0.09, 0.02)
    grasp_tolerance: Tuple[float, float] = (0.04, 0.015)
    reach_band: Tuple[float, float] = (0.055, 0.09)
    pose_noise_std: float = 0.0

    def __post_init__(self) -> None:
        for name in ("bbox_half_extents", "grasp_tolerance", "reach_band"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        values = self.bbox_half_extents + self.grasp_tolerance
        if len(self.bbox_half_extents) != 3 or len(self.grasp_tolerance) != 2:
            raise DataValidationError("Scene needs 3 half extents and 2 grasp tolerances",
                                      field_name="scene", component="Simulator")
        if not all(v > 0 for v in values):
            raise DataValidationError("Scene extents and tolerances must be positive",
                                      field_name="scene", invalid_value=str(values),
                                      component="Simulator")
        low, high = self.reach_band
        if not 0 <= low < high:
            raise DataValidationError("Reach band must satisfy 0 <= min < max",
                                      field_name="reach_band", invalid_value=str(self.reach_band),
                                      component="Simulator")
        if self.pose_noise_std < 0:
            raise DataValidationError("Pose noise must be non-negative",
                                      field_name="pose_noise_std", component="Simulator")

    @property
    def front_face(self) -> float:
        return float(self.bbox_half_extents[0])

    @property
    def bbox_full_extents(self) -> Tuple[float, float, float]:
        return tuple(2.0 * h for h in self.bbox_half_extents)

    def graspable_interval(self, axis: int) -> Tuple[float, float]:
        """Closed interval of successful values along ``axis``."""
        if axis == 0:
            # rounded so configured thresholds such as 0.10 match exactly
            return (round(self.front_face + self.reach_band[0], 12),
                    round(self.front_face + self.reach_band[1], 12))
        tolerance = self.grasp_tolerance[axis - 1]
        return -tolerance, tolerance


@dataclass(frozen=True)
class GraspOutcome:
    """Success flag and failure causes; success iff no cause."""

    success: bool
    causes: FrozenSet[str]

    def __post_init__(self) -> None:
        if self.success == bool(self.causes):
            raise DataValidationError("A grasp succeeds exactly when it has no failure cause",
                                      field_name="causes", component="Simulator")


def default_space(bound: float = 0.2) -> ParameterSpace:
    """Symmetric (x, y, z) box of +/- ``bound`` meters."""
    return make_space([("x", -bound, bound), ("y", -bound, bound), ("z", -bound, bound)])


def scene_vocabulary(scene: HandleScene, space: ParameterSpace) -> RelationVocabulary:
    """Three-way relation groups whose thresholds are the graspable intervals."""
    x_name, y_name, z_name = space.names[:3]
    x_lo, x_hi = scene.graspable_interval(0)
    y_lo, y_hi = scene.graspable_interval(1)
    z_lo, z_hi = scene.graspable_interval(2)
    return axis_vocabulary(space, [
        (x_name, x_lo, x_hi, "close_in_front_of_x", "aligned_x", "far_in_front_of_x"),
        (y_name, y_lo, y_hi, "rightOf_y", "aligned_y", "leftOf_y"),
        (z_name, z_lo, z_hi, "below_z", "aligned_z", "above_z"),
    ])


def grasp_causes(scene: HandleScene, xs: npt.ArrayLike) -> List[FrozenSet[str]]:
    """Failure causes for a batch of parameterizations."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    if xs.shape[1] != 3:
        raise DataValidationError("Grasp parameterizations have 3 coordinates",
                                  field_name="dimension", invalid_value=str(xs.shape[1]),
                                  component="Simulator")
    x_lo, x_hi = scene.graspable_interval(0)
    y_lo, y_hi = scene.graspable_interval(1)
    z_lo, z_hi = scene.graspable_interval(2)
    flags = {
        TOO_FAR: xs[:, 0] > x_hi,
        COLLISION: xs[:, 0] < x_lo,
        TOO_LEFT: xs[:, 1] > y_hi,
        TOO_RIGHT: xs[:, 1] < y_lo,
        TOO_HIGH: xs[:, 2] > z_hi,
        TOO_LOW: xs[:, 2] < z_lo,
    }
    return [frozenset(c for c, fired in flags.items() if fired[i]) for i in range(xs.shape[0])]


def simulate_grasp(scene: HandleScene, x: ActionParameterization) -> GraspOutcome:
    """Ground-truth outcome of grasping at ``x``."""
    causes = grasp_causes(scene, x)[0]
    return GraspOutcome(not causes, causes)


def execute_grasp(scene: HandleScene, x: ActionParameterization,
                  rng: Optional[RngHandle] = None) -> GraspOutcome:
    """
    Grasp with optional additive Gaussian pose noise.

    No random number is drawn when ``pose_noise_std`` is 0.
    """
    x = np.asarray(x, dtype=float)
    if scene.pose_noise_std > 0:
        if rng is None:
            raise DataValidationError("Pose noise needs a random stream", field_name="rng",
                                      component="Simulator")
        x = x + rng.normal(0.0, scene.pose_noise_std, size=x.shape)
    return simulate_grasp(scene, x)


def causes_to_relations(causes: Iterable[str]) -> FrozenSet[str]:
    """
    Ground-truth relations for a set of failure causes.

    Raises:
        DataValidationError: On an unknown cause
    """
    relations = set()
    for cause in causes:
        if cause not in CAUSE_TO_RELATION:
            raise DataValidationError(f"Unknown failure cause: {cause}", field_name="cause",
                                      invalid_value=cause, component="Simulator")
        relations.add(CAUSE_TO_RELATION[cause])
    return frozenset(relations)


def alignment_violations(scene: HandleScene, vocab: RelationVocabulary,
                         points: npt.ArrayLike) -> List[str]:
    """
    Grid points where a failure cause's relation is not true.

    An empty list means scene and vocabulary thresholds agree on ``points``.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    names = set(vocab.names)
    missing = sorted(set(CAUSE_TO_RELATION.values()) - names)
    if missing:
        return [f"vocabulary lacks cause relations {', '.join(missing)}"]

    truth = truth_matrix(vocab, points)
    column = {name: j for j, name in enumerate(vocab.names)}
    violations = []
    for i, causes in enumerate(grasp_causes(scene, points)):
        for relation_name in sorted(causes_to_relations(causes)):
            if not truth[i, column[relation_name]]:
                violations.append(f"{relation_name} false at {points[i].tolist()}")
    return violations


def alignment_grid(scene: HandleScene, space: ParameterSpace,
               per_axis: int = 9, offset: float = 1e-6) -> npt.NDArray[np.float64]:
    """
    Grid over the space whose axes also carry every graspable-interval
    endpoint and its neighbours at +/- ``offset``.
    """
    axes = []
    for axis, p in enumerate(space.params[:3]):
        values = list(np.linspace(p.lower, p.upper, per_axis))
        for edge in scene.graspable_interval(axis):
            values.extend([edge - offset, edge, edge + offset])
        axes.append(np.unique(np.clip(values, p.lower, p.upper)))
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)
