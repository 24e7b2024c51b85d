"""
Tests for box3d.detection_log: writing, reading back, and rejecting bad rows.
"""

import numpy as np
import pytest

from box3d.detection_log import (
    DETECTION_COLUMNS,
    POSE_COLUMNS,
    CameraPose,
    TimedDetection,
    read_detection_log,
    read_pose_log,
    write_detection_log,
    write_pose_log,
)
from box3d.solver import detection_from_pose
from core.errors import DetectionLogError
from core.models.geometry import Cuboid, Pose
from geometry.rotations import random_rotation


@pytest.fixture
def detections(rng):
    rows = []
    for k in range(3):
        pose = Pose(rotation=random_rotation(rng), translation=np.array([0.3, -0.1, 6.0 + k]),
                    frame_from="object", frame_to="camera")
        rows.append(TimedDetection(t=0.02 * k, detection=detection_from_pose(pose, Cuboid(dims=(0.9, 0.6, 0.3)))))
    return rows


@pytest.fixture
def poses(rng):
    return [
        CameraPose(t=0.02 * k, position=rng.normal(size=3), r_cw=random_rotation(rng))
        for k in range(4)
    ]


def write_rows(path, header, rows):
    path.write_text("\n".join([",".join(header), *rows]) + "\n")


class TestRoundTrip:
    def test_detections_are_bit_exact(self, tmp_path, detections):
        path = write_detection_log(tmp_path / "det.csv", detections)
        back = read_detection_log(path)
        assert [d.t for d in back] == [d.t for d in detections]
        for original, loaded in zip(detections, back):
            np.testing.assert_array_equal(loaded.detection.r_oc, original.detection.r_oc)
            np.testing.assert_array_equal(loaded.detection.vertices, original.detection.vertices)
            np.testing.assert_array_equal(loaded.detection.center, original.detection.center)
            assert loaded.detection.ldims == original.detection.ldims

    def test_poses_are_bit_exact(self, tmp_path, poses):
        back = read_pose_log(write_pose_log(tmp_path / "poses.csv", poses))
        for original, loaded in zip(poses, back):
            assert loaded.t == original.t
            np.testing.assert_array_equal(loaded.position, original.position)
            np.testing.assert_array_equal(loaded.r_cw, original.r_cw)

    def test_header(self, tmp_path, poses):
        path = write_pose_log(tmp_path / "sub" / "poses.csv", poses)
        assert path.read_text().splitlines()[0] == ",".join(POSE_COLUMNS)
        assert len(DETECTION_COLUMNS) == 30


class TestRejects:
    def test_missing_file(self, tmp_path):
        with pytest.raises(DetectionLogError, match="cannot read"):
            read_pose_log(tmp_path / "absent.csv")

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(DetectionLogError) as info:
            read_detection_log(path)
        assert info.value.line == 1

    def test_wrong_header(self, tmp_path):
        path = tmp_path / "poses.csv"
        write_rows(path, ["time", *POSE_COLUMNS[1:]], [])
        with pytest.raises(DetectionLogError, match="header"):
            read_pose_log(path)

    def test_header_only(self, tmp_path):
        path = tmp_path / "poses.csv"
        write_rows(path, POSE_COLUMNS, [])
        with pytest.raises(DetectionLogError, match="no rows"):
            read_pose_log(path)

    def test_short_row_reports_line(self, tmp_path):
        path = tmp_path / "poses.csv"
        good = ",".join(["0", "0", "0", "0", "1", "0", "0", "0", "1", "0", "0", "0", "1"])
        write_rows(path, POSE_COLUMNS, [good, "0.1,1,2"])
        with pytest.raises(DetectionLogError) as info:
            read_pose_log(path)
        assert info.value.line == 3

    def test_non_numeric_field(self, tmp_path):
        path = tmp_path / "poses.csv"
        write_rows(path, POSE_COLUMNS, [",".join(["0", "x", *["0"] * 11])])
        with pytest.raises(DetectionLogError, match="non-numeric"):
            read_pose_log(path)

    def test_non_increasing_time(self, tmp_path):
        path = tmp_path / "poses.csv"
        row = ",".join(["0.5", "0", "0", "0", "1", "0", "0", "0", "1", "0", "0", "0", "1"])
        write_rows(path, POSE_COLUMNS, [row, row])
        with pytest.raises(DetectionLogError, match="increasing"):
            read_pose_log(path)

    def test_non_rotation(self, tmp_path):
        path = tmp_path / "poses.csv"
        write_rows(path, POSE_COLUMNS, [",".join(["0", "0", "0", "0", "2", "0", "0", "0", "2", "0", "0", "0", "2"])])
        with pytest.raises(DetectionLogError) as info:
            read_pose_log(path)
        assert info.value.line == 2
