"""Frame synthesis -- ground truth, exact detection and noisy measurements.

Two noise modes:
  pseudo     the exact measurement frame gets additive Gaussian noise on
             T_bar, bearing, angular size and thrust direction
  detection  vertices and the detected rotation are perturbed, and the
             frame is rebuilt from the noisy detection by the box solver
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from box3d.solver import detection_from_pose, measurement_from_detection, thrust_direction
from core.errors import NonPositiveDepthError, SingularSystemError
from core.models.detections import Box3DDetection, WorldPseudoMeasurement
from core.models.geometry import Pose
from core.models.scenarios import Scenario
from core.models.states import MeasurementFrame
from core.models.traces import FrameTruth
from geometry.camera import in_image
from geometry.rotations import look_at, normalize, perturb_rotation
from simulator.attitude import ground_attitude, mav_attitude_from_accel
from simulator.trajectories import Trajectory, build_trajectory, heading_yaw

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Scene:
    """Built trajectories of one scenario; guidance is integrated once here."""

    scenario: Scenario
    observer: Trajectory
    target: Trajectory

    @classmethod
    def from_scenario(cls, sc: Scenario) -> Scene:
        horizon = sc.times()[-1]
        if sc.observer.kind == "guidance":
            target = build_trajectory(sc.target)
            observer = build_trajectory(sc.observer, pursued=target, horizon=horizon)
        else:
            observer = build_trajectory(sc.observer)
            target = build_trajectory(sc.target, pursued=observer, horizon=horizon)
        return cls(scenario=sc, observer=observer, target=target)


def _fully_visible(d: Box3DDetection, sc: Scenario) -> bool:
    return all(in_image(q, sc.camera) for q in d.vertices) and in_image(d.center, sc.camera)


def _perturb_detection(d: Box3DDetection, sc: Scenario, rng: np.random.Generator) -> Box3DDetection:
    sigma = sc.detection.sigma_vertex
    vertices = d.vertices.copy()
    vertices[:, :2] += rng.normal(0.0, sigma, size=(8, 2))
    center = d.center.copy()
    center[:2] += rng.normal(0.0, sigma, size=2)
    r_oc = perturb_rotation(d.r_oc, sc.detection.sigma_rotation, rng)
    return Box3DDetection(r_oc=r_oc, ldims=d.ldims, vertices=vertices, center=center)


def _perturb_frame(frame: MeasurementFrame, sc: Scenario, rng: np.random.Generator) -> MeasurementFrame:
    n = sc.noise
    t_bar = frame.t_bar.t_bar + rng.normal(0.0, n.sigma_tbar, size=3)
    h = None
    if frame.h is not None:
        h = normalize(frame.h + rng.normal(0.0, n.sigma_h, size=3))
    bearing = normalize(frame.bearing + rng.normal(0.0, n.sigma_bearing, size=3))
    # reflect at zero so the angle stays positive
    angle = abs(frame.angle + rng.normal(0.0, n.sigma_angle))
    return replace(
        frame,
        t_bar=WorldPseudoMeasurement(t_bar=t_bar, timestamp=frame.timestamp),
        h=h,
        bearing=bearing,
        angle=angle,
    )


def synthesize_frame(
    sc: Scenario,
    t: float,
    rng: np.random.Generator,
    scene: Scene | None = None,
) -> FrameTruth:
    """Truth and (noisy) measurements of scenario `sc` at time t.

    Out-of-view frames are flagged with in_fov=False and carry no
    measurement. Random draws happen only for in-view frames, in a fixed
    order, so equal seeds give equal frames.
    """
    scene = scene or Scene.from_scenario(sc)
    p_o, v_o, a_o = scene.target.sample(t)
    p_c, v_c, a_c = scene.observer.sample(t)

    yaw = heading_yaw(sc.target, v_o)
    if sc.target_is_mav:
        r_ow = mav_attitude_from_accel(a_o, sc.noise.g, yaw)
        h = thrust_direction(r_ow)
    else:
        r_ow = ground_attitude(yaw)
        h = None

    aim = p_o if sc.aim == "target" else np.array(sc.aim_point, dtype=float)
    r_cw = look_at(p_c, aim)
    pose_oc = Pose(
        rotation=r_cw.T @ r_ow,
        translation=r_cw.T @ (p_o - p_c),
        frame_from="object",
        frame_to="camera",
    )

    truth = dict(
        t=t, p_o=p_o, v_o=v_o, a_o=a_o, r_ow=r_ow,
        p_c=p_c, v_c=v_c, a_c=a_c, r_cw=r_cw,
        alpha=sc.target_cuboid.alpha, h=h,
    )

    try:
        exact = detection_from_pose(pose_oc, sc.target_cuboid)
    except NonPositiveDepthError as e:
        logger.debug("t=%.3f: target behind camera (%s)", t, e)
        return FrameTruth(**truth, exact=None, noisy=None, frame=None, in_fov=False)

    if not _fully_visible(exact, sc):
        logger.debug("t=%.3f: target outside image bounds", t)
        return FrameTruth(**truth, exact=exact, noisy=None, frame=None, in_fov=False)

    if sc.detection.mode == "detection":
        noisy = _perturb_detection(exact, sc, rng)
        try:
            frame = measurement_from_detection(noisy, r_cw, p_c, t, with_attitude=sc.target_is_mav)
        except SingularSystemError as e:
            logger.debug("t=%.3f: degenerate noisy detection (%s)", t, e)
            frame = None
    else:
        noisy = exact
        exact_frame = measurement_from_detection(exact, r_cw, p_c, t, with_attitude=sc.target_is_mav)
        frame = _perturb_frame(exact_frame, sc, rng)

    return FrameTruth(**truth, exact=exact, noisy=noisy, frame=frame, in_fov=True)
