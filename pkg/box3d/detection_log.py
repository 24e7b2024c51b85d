"""Detection and camera-pose logs -- the CSV files consumed by `bbx replay`.

Detection log, one row per detected frame:

    t, r00..r22 (R_o^c row-major), lbar2, lbar3, q0x, q0y, ..., q7x, q7y, cx, cy

Camera-pose log, one row per frame (detected or not):

    t, px, py, pz, r00..r22 (R_c^w row-major)

Floats are written with repr() so a written log reads back bit-identically.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from core.errors import DetectionLogError
from core.models.detections import Box3DDetection
from core.models.geometry import Rotation, Vector3
from geometry.rotations import check_rotation

logger = logging.getLogger(__name__)

_ROT_COLUMNS = [f"r{i}{j}" for i in range(3) for j in range(3)]
_VERTEX_COLUMNS = [f"q{i}{axis}" for i in range(8) for axis in ("x", "y")]

DETECTION_COLUMNS = ["t", *_ROT_COLUMNS, "lbar2", "lbar3", *_VERTEX_COLUMNS, "cx", "cy"]
POSE_COLUMNS = ["t", "px", "py", "pz", *_ROT_COLUMNS]

# Logs written by other tools may carry small rounding in the rotation block.
ROTATION_TOL = 1e-6


@dataclass(frozen=True)
class TimedDetection:
    t: float
    detection: Box3DDetection


@dataclass(frozen=True)
class CameraPose:
    t: float
    position: Vector3
    r_cw: Rotation


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------

def detection_row(t: float, d: Box3DDetection) -> list[str]:
    values = [t, *np.asarray(d.r_oc).reshape(9), d.ldims[1], d.ldims[2]]
    values.extend(np.asarray(d.vertices)[:, :2].reshape(16))
    values.extend(d.center[:2])
    return [repr(float(v)) for v in values]


def pose_row(t: float, position: Vector3, r_cw: Rotation) -> list[str]:
    values = [t, *np.asarray(position), *np.asarray(r_cw).reshape(9)]
    return [repr(float(v)) for v in values]


def write_detection_log(path: Path, rows: list[TimedDetection]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(DETECTION_COLUMNS)
        for row in rows:
            writer.writerow(detection_row(row.t, row.detection))
    return path


def write_pose_log(path: Path, rows: list[CameraPose]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(POSE_COLUMNS)
        for row in rows:
            writer.writerow(pose_row(row.t, row.position, row.r_cw))
    return path


# ---------------------------------------------------------------------------
# Reading
# ---------------------------------------------------------------------------

def _read_rows(path: Path, columns: list[str]) -> list[tuple[int, list[float]]]:
    """Parse a numeric CSV with the given header; returns (line_number, values)."""
    try:
        with open(path, newline="") as f:
            lines = list(csv.reader(f))
    except OSError as e:
        raise DetectionLogError(f"cannot read {path}: {e}") from e

    if not lines:
        raise DetectionLogError(f"{path} is empty", line=1)
    header = [h.strip() for h in lines[0]]
    if header != columns:
        raise DetectionLogError(f"unexpected header in {path}", line=1)

    rows: list[tuple[int, list[float]]] = []
    last_t: float | None = None
    for line_no, fields in enumerate(lines[1:], start=2):
        if not fields or all(not x.strip() for x in fields):
            continue
        if len(fields) != len(columns):
            raise DetectionLogError(
                f"expected {len(columns)} fields, got {len(fields)}", line=line_no
            )
        try:
            values = [float(x) for x in fields]
        except ValueError as e:
            raise DetectionLogError(f"non-numeric field ({e})", line=line_no) from e
        if not all(np.isfinite(values)):
            raise DetectionLogError("non-finite value", line=line_no)
        if last_t is not None and values[0] <= last_t:
            raise DetectionLogError("timestamps must be strictly increasing", line=line_no)
        last_t = values[0]
        rows.append((line_no, values))

    if not rows:
        raise DetectionLogError(f"{path} has a header but no rows", line=2)
    return rows


def _rotation(values: list[float], line_no: int) -> Rotation:
    try:
        return check_rotation(np.array(values).reshape(3, 3), tol=ROTATION_TOL)
    except ValueError as e:
        raise DetectionLogError(str(e), line=line_no) from e


def read_detection_log(path: Path) -> list[TimedDetection]:
    detections: list[TimedDetection] = []
    for line_no, v in _read_rows(path, DETECTION_COLUMNS):
        r_oc = _rotation(v[1:10], line_no)
        lbar2, lbar3 = v[10], v[11]
        xy = np.array(v[12:28]).reshape(8, 2)
        vertices = np.column_stack([xy, np.ones(8)])
        center = np.array([v[28], v[29], 1.0])
        try:
            d = Box3DDetection(r_oc=r_oc, ldims=(1.0, lbar2, lbar3), vertices=vertices, center=center)
        except ValueError as e:
            raise DetectionLogError(str(e), line=line_no) from e
        detections.append(TimedDetection(t=v[0], detection=d))
    logger.info("Read %d detections from %s", len(detections), path)
    return detections


def read_pose_log(path: Path) -> list[CameraPose]:
    poses = [
        CameraPose(t=v[0], position=np.array(v[1:4]), r_cw=_rotation(v[4:13], line_no))
        for line_no, v in _read_rows(path, POSE_COLUMNS)
    ]
    logger.info("Read %d camera poses from %s", len(poses), path)
    return poses
