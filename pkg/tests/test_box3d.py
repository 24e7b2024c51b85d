"""
Unit tests for box3d.solver.

Covers:
- Recovery of the normalized relative position from exact detections
- Degenerate detections
- World pseudo-measurement, thrust direction, bearing, angular size
- Symmetric box orientations giving the same measurement
- Box3DDetection validation
"""

import time

import numpy as np
import pytest

from box3d.solver import (
    angular_size,
    bearing_from_detection,
    detection_from_pose,
    measurement_from_detection,
    normalized_rel_pos,
    thrust_direction,
    to_world,
)
from core.errors import SingularSystemError
from core.models.detections import Box3DDetection
from core.models.geometry import Cuboid, Pose
from geometry.rotations import look_at, random_rotation, rot_x, rot_y, rot_z
from simulator.attitude import mav_attitude_from_accel
from tests.helpers import random_pose_and_cuboid


def pose_at(translation, rotation=None) -> Pose:
    return Pose(
        rotation=np.eye(3) if rotation is None else rotation,
        translation=np.asarray(translation, dtype=float),
        frame_from="object",
        frame_to="camera",
    )


class TestNormalizedRelPos:
    def test_round_trip_over_random_poses(self):
        rng = np.random.Generator(np.random.PCG64(2024))
        worst = 0.0
        start = time.perf_counter()
        for _ in range(1000):
            pose, cuboid = random_pose_and_cuboid(rng)
            n = normalized_rel_pos(detection_from_pose(pose, cuboid))
            truth = pose.translation / cuboid.alpha
            worst = max(worst, np.linalg.norm(n.p_bar - truth) / np.linalg.norm(truth))
        assert worst <= 1e-9
        assert time.perf_counter() - start < 5.0

    def test_exact_detection_has_zero_residual(self):
        d = detection_from_pose(pose_at([0.5, -0.2, 6.0], rot_x(0.4)), Cuboid(dims=(0.9, 0.6, 0.3)))
        assert normalized_rel_pos(d).residual < 1e-12

    def test_scale_is_not_observable_from_one_image(self):
        # doubling the box and its distance gives the same detection
        small = detection_from_pose(pose_at([1.0, 0.0, 5.0]), Cuboid(dims=(1.0, 0.5, 0.5)))
        large = detection_from_pose(pose_at([2.0, 0.0, 10.0]), Cuboid(dims=(2.0, 1.0, 1.0)))
        np.testing.assert_allclose(small.vertices, large.vertices, atol=1e-15)
        np.testing.assert_allclose(normalized_rel_pos(small).p_bar, normalized_rel_pos(large).p_bar)

    def test_collapsed_vertices_are_singular(self):
        center = np.array([0.1, 0.2, 1.0])
        d = Box3DDetection(
            r_oc=np.eye(3), ldims=(1.0, 1.0, 1.0), vertices=np.tile(center, (8, 1)), center=center,
        )
        with pytest.raises(SingularSystemError):
            normalized_rel_pos(d)


class TestDetectionValidation:
    def test_first_dim_must_be_one(self):
        with pytest.raises(ValueError, match="exactly 1"):
            Box3DDetection(r_oc=np.eye(3), ldims=(2.0, 1.0, 1.0),
                           vertices=np.tile([0.0, 0.0, 1.0], (8, 1)), center=np.array([0.0, 0.0, 1.0]))

    def test_vertex_count(self):
        with pytest.raises(ValueError, match="8"):
            Box3DDetection(r_oc=np.eye(3), ldims=(1.0, 1.0, 1.0),
                           vertices=np.tile([0.0, 0.0, 1.0], (7, 1)), center=np.array([0.0, 0.0, 1.0]))

    def test_unit_plane_points(self):
        with pytest.raises(ValueError, match="third component"):
            Box3DDetection(r_oc=np.eye(3), ldims=(1.0, 1.0, 1.0),
                           vertices=np.tile([0.0, 0.0, 2.0], (8, 1)), center=np.array([0.0, 0.0, 1.0]))


class TestWorldMeasurement:
    def test_pseudo_measurement_relation(self, rng):
        p_c = np.array([-8.0, 1.0, -1.5])
        p_o = np.array([0.0, 0.5, -2.0])
        cuboid = Cuboid(dims=(0.92, 0.92, 0.55))
        r_cw = look_at(p_c, p_o)
        r_ow = random_rotation(rng)
        pose = Pose(rotation=r_cw.T @ r_ow, translation=r_cw.T @ (p_o - p_c),
                    frame_from="object", frame_to="camera")
        d = detection_from_pose(pose, cuboid)
        m = to_world(normalized_rel_pos(d), r_cw, 1.5)
        assert m.timestamp == 1.5
        np.testing.assert_allclose(cuboid.alpha * m.t_bar, p_o - p_c, atol=1e-9)

    def test_bearing_points_at_target_center(self):
        p_c = np.array([-8.0, 1.0, -1.5])
        p_o = np.array([0.0, 0.5, -2.0])
        # aim off-center so the bearing is not just the optical axis
        r_cw = look_at(p_c, p_o + np.array([0.0, 0.5, 0.0]))
        pose = Pose(rotation=np.eye(3), translation=r_cw.T @ (p_o - p_c),
                    frame_from="object", frame_to="camera")
        d = detection_from_pose(pose, Cuboid(dims=(1.0, 1.0, 1.0)))
        g = bearing_from_detection(d, r_cw)
        np.testing.assert_allclose(g, (p_o - p_c) / np.linalg.norm(p_o - p_c), atol=1e-12)

    def test_measurement_frame_fields(self):
        p_c = np.array([-5.0, 0.0, -1.0])
        r_cw = look_at(p_c, np.zeros(3))
        r_ow = mav_attitude_from_accel(np.array([1.0, 0.0, 0.0]))
        pose = Pose(rotation=r_cw.T @ r_ow, translation=r_cw.T @ -p_c,
                    frame_from="object", frame_to="camera")
        d = detection_from_pose(pose, Cuboid(dims=(0.5, 0.5, 0.2)))

        with_h = measurement_from_detection(d, r_cw, p_c, 2.0, with_attitude=True)
        without_h = measurement_from_detection(d, r_cw, p_c, 2.0, with_attitude=False)
        assert without_h.h is None
        np.testing.assert_allclose(with_h.h, thrust_direction(r_ow), atol=1e-12)
        assert with_h.angle > 0
        assert with_h.timestamp == with_h.t_bar.timestamp == 2.0
        np.testing.assert_array_equal(with_h.p_cw, p_c)


class TestThrustDirection:
    def test_level_body_thrusts_up(self):
        np.testing.assert_allclose(thrust_direction(np.eye(3)), [0.0, 0.0, -1.0])

    @pytest.mark.parametrize("yaw", [0.0, 0.7, -2.0, np.pi])
    def test_yaw_does_not_change_thrust(self, yaw, rng):
        r_ow = random_rotation(rng)
        np.testing.assert_allclose(thrust_direction(r_ow @ rot_z(yaw)), thrust_direction(r_ow), atol=1e-12)

    def test_collinear_with_specific_acceleration(self):
        a = np.array([2.0, -1.0, 0.5])
        h = thrust_direction(mav_attitude_from_accel(a, g=9.81))
        specific = a - 9.81 * np.array([0.0, 0.0, 1.0])
        np.testing.assert_allclose(h, specific / np.linalg.norm(specific), atol=1e-12)


class TestBoxSymmetry:
    """A detector cannot tell symmetric orientations of a box apart.

    Whichever one it reports, the vertex set is the same, only listed in a
    different order against the model vertices.
    """

    TRANSLATION = [0.4, -0.3, 7.0]

    def solve(self, rotation, cuboid):
        d = detection_from_pose(pose_at(self.TRANSLATION, rotation), cuboid)
        return d, normalized_rel_pos(d).p_bar, thrust_direction(d.r_oc)

    @staticmethod
    def same_vertex_set(a, b):
        def ordered(v):
            return v[np.lexsort(np.round(v, 9).T)]

        np.testing.assert_allclose(ordered(a.vertices), ordered(b.vertices), atol=1e-12)

    @pytest.mark.parametrize("yaw", [np.pi / 2, np.pi, -np.pi / 2])
    def test_square_footprint_ignores_quarter_yaw(self, yaw, rng):
        cuboid = Cuboid(dims=(0.92, 0.92, 0.55))
        r = random_rotation(rng)
        d0, p0, h0 = self.solve(r, cuboid)
        d1, p1, h1 = self.solve(r @ rot_z(yaw), cuboid)
        self.same_vertex_set(d0, d1)
        assert not np.allclose(d0.vertices, d1.vertices)
        np.testing.assert_allclose(p1, p0, atol=1e-9)
        np.testing.assert_allclose(h1, h0, atol=1e-12)

    def test_any_box_ignores_half_turn_yaw(self, rng):
        cuboid = Cuboid(dims=(0.9, 0.6, 0.3))
        r = random_rotation(rng)
        d0, p0, h0 = self.solve(r, cuboid)
        d1, p1, h1 = self.solve(r @ rot_z(np.pi), cuboid)
        self.same_vertex_set(d0, d1)
        np.testing.assert_allclose(p1, p0, atol=1e-9)
        np.testing.assert_allclose(h1, h0, atol=1e-12)

    def test_upside_down_box_keeps_position_but_flips_thrust(self, rng):
        cuboid = Cuboid(dims=(0.9, 0.6, 0.3))
        r = random_rotation(rng)
        d0, p0, h0 = self.solve(r, cuboid)
        d1, p1, h1 = self.solve(r @ rot_x(np.pi), cuboid)
        self.same_vertex_set(d0, d1)
        np.testing.assert_allclose(p1, p0, atol=1e-9)
        np.testing.assert_allclose(h1, -h0, atol=1e-12)


class TestAngularSize:
    def test_shrinks_with_distance(self):
        cuboid = Cuboid(dims=(1.0, 1.0, 1.0))
        near = angular_size(detection_from_pose(pose_at([0.0, 0.0, 5.0]), cuboid))
        far = angular_size(detection_from_pose(pose_at([0.0, 0.0, 20.0]), cuboid))
        assert 0 < far < near

    def test_depends_on_viewpoint_for_a_box(self):
        cuboid = Cuboid(dims=(2.0, 0.5, 0.5))
        broadside = angular_size(detection_from_pose(pose_at([0.0, 0.0, 10.0]), cuboid))
        # long x axis turned onto the optical axis
        end_on = angular_size(detection_from_pose(pose_at([0.0, 0.0, 10.0], rot_y(np.pi / 2)), cuboid))
        assert end_on < broadside

