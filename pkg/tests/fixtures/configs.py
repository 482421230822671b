"""
INI configurations for settings and CLI tests.

QUICK_CONFIG keeps every pipeline small enough for the test suite; its
scene is more forgiving than the default so short campaigns still hold
successes and failures.
"""

from pathlib import Path
from typing import Dict, Optional, Union

QUICK_CONFIG = """
[space]
names = x, y, z
lower = -0.2, -0.2, -0.2
upper = 0.2, 0.2, 0.2

[scene]
bbox_half_extents = 0.01, 0.09, 0.02
grasp_tolerance = 0.06, 0.018
reach_band = 0.05, 0.10
pose_noise_std = 0.0

[campaign]
size = 40
front_window = 0.05, 0.15
aimed = false

[execution]
beta = 0.95
max_iter = 20000
mode = 1

[diagnosis]
k_max = 20
r = 0.05
i_max = 5
n = 3
alpha = 0.5

[correction]
s_max = 4
kappa_values = 2, 4
trials = 3

[sweep]
repetitions = 1
full_grid = false

[harness]
seed = 11
workers = 1
out_dir = results

[logging]
level = WARNING
max_file_size = 10MB
log_file =
"""

SYMMETRIC_RELATIONS = """
[relation.behind_x]
parameter = x
kind = below
thresholds = -0.01
group = x_axis

[relation.aligned_x]
parameter = x
kind = inside
thresholds = -0.01, 0.01
group = x_axis

[relation.in_front_of_x]
parameter = x
kind = above
thresholds = 0.01
group = x_axis

[relation.rightOf_y]
parameter = y
kind = below
thresholds = -0.09
group = y_axis

[relation.aligned_y]
parameter = y
kind = inside
thresholds = -0.09, 0.09
group = y_axis

[relation.leftOf_y]
parameter = y
kind = above
thresholds = 0.09
group = y_axis

[relation.below_z]
parameter = z
kind = below
thresholds = -0.02
group = z_axis

[relation.aligned_z]
parameter = z
kind = inside
thresholds = -0.02, 0.02
group = z_axis

[relation.above_z]
parameter = z
kind = above
thresholds = 0.02
group = z_axis
"""


def render_config(overrides: Optional[Dict[str, Dict[str, str]]] = None,
                  extra: str = "") -> str:
    """QUICK_CONFIG with some keys replaced (sections must exist) and text appended."""
    lines = QUICK_CONFIG.strip().splitlines()
    section = None
    out = []
    for line in lines:
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            section = stripped[1:-1]
        elif "=" in stripped and overrides and section in overrides:
            key = stripped.split("=", 1)[0].strip()
            if key in overrides[section]:
                line = f"{key} = {overrides[section][key]}"
        out.append(line)
    return "\n".join(out) + "\n" + extra


def write_config(path: Union[str, Path], overrides: Optional[Dict[str, Dict[str, str]]] = None,
                 extra: str = "") -> str:
    path = Path(path)
    path.write_text(render_config(overrides, extra))
    return str(path)
