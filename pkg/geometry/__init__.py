"""Geometry -- frames, rotations, pinhole projection, and the cuboid model."""

from geometry.camera import (
    VERTEX_SIGNS,
    cuboid_vertices,
    in_image,
    normalized_vertices,
    pixel_to_unit_plane,
    project_cuboid,
    project_point,
    unit_plane_to_pixel,
)
from geometry.rotations import (
    E3,
    check_rotation,
    look_at,
    nearest_rotation,
    normalize,
    perturb_rotation,
    random_rotation,
    rot_x,
    rot_y,
    rot_z,
)

__all__ = [
    "E3",
    "VERTEX_SIGNS",
    "check_rotation",
    "cuboid_vertices",
    "in_image",
    "look_at",
    "nearest_rotation",
    "normalize",
    "normalized_vertices",
    "perturb_rotation",
    "pixel_to_unit_plane",
    "project_cuboid",
    "project_point",
    "random_rotation",
    "rot_x",
    "rot_y",
    "rot_z",
    "unit_plane_to_pixel",
]
