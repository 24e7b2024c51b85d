"""Box3D -- from a 3D box detection to the world pseudo-measurement."""

from box3d.solver import (
    angular_size,
    bearing_from_detection,
    detection_from_pose,
    measurement_from_detection,
    normalized_rel_pos,
    thrust_direction,
    to_world,
)

__all__ = [
    "angular_size",
    "bearing_from_detection",
    "detection_from_pose",
    "measurement_from_detection",
    "normalized_rel_pos",
    "thrust_direction",
    "to_world",
]
