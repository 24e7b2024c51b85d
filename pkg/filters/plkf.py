"""Pseudo-linear Kalman filter core.

All four estimators share one correction step: the measurement matrix H is
built from the measurements themselves, the innovation covariance is
inverted with a pseudo-inverse (the attitude block is rank 2 by
construction), and the covariance is symmetrized after every update.

Scale states stay at or above ALPHA_FLOOR. The box filters compute their
gain from the H the prior predicts; the baselines use the measured H
throughout.

State layouts:
    CommonState   x = [p, v, alpha]        (7)
    MavState      x = [p, v, a, alpha]     (10)
    BearingState  x = [p, v]               (6)
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import block_diag

from core.errors import MissingAttitudeError, NonPositiveAngleError, ZeroVectorError
from core.models.states import (
    BearingState,
    CommonState,
    MavState,
    MeasurementFrame,
    NoiseParams,
)

E3 = np.array([0.0, 0.0, 1.0])
I3 = np.eye(3)
O3 = np.zeros((3, 3))

# alpha substituted into R
R_ALPHA_FLOOR = 1e-3
# smallest scale (m) kept after a correction
ALPHA_FLOOR = 0.05
THRUST_ACCEL_FLOOR = 1e-2
RANGE_FLOOR = 1e-3


# ---------------------------------------------------------------------------
# Shared core
# ---------------------------------------------------------------------------

def symmetrize(p: np.ndarray) -> np.ndarray:
    return 0.5 * (p + p.T)


def kalman_gain(p: np.ndarray, h: np.ndarray, r: np.ndarray) -> np.ndarray:
    """K = P H^T (H P H^T + R)^+"""
    s = h @ p @ h.T + r
    return p @ h.T @ np.linalg.pinv(s)


def kalman_predict(
    x: np.ndarray, p: np.ndarray, a: np.ndarray, w: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    return a @ x, symmetrize(a @ p @ a.T + w)


def kalman_correct(
    x: np.ndarray,
    p: np.ndarray,
    z: np.ndarray,
    h: np.ndarray,
    r: np.ndarray,
    h_gain: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Correct (x, P) with z. The innovation is z - H x; gain and covariance
    use h_gain when given, H otherwise."""
    h_gain = h if h_gain is None else h_gain
    k = kalman_gain(p, h_gain, r)
    x_new = x + k @ (z - h @ x)
    # Joseph form keeps P positive semi-definite when S is singular
    i_kh = np.eye(len(x)) - k @ h_gain
    p_new = i_kh @ p @ i_kh.T + k @ r @ k.T
    return x_new, symmetrize(p_new)


def projector(h: np.ndarray) -> np.ndarray:
    """Orthogonal projector onto the plane normal to h: P = I - h h^T.

    h is renormalized first; raises ZeroVectorError for ||h|| < 1e-9.
    """
    h = np.asarray(h, dtype=float)
    norm = np.linalg.norm(h)
    if norm < 1e-9:
        raise ZeroVectorError(f"cannot build projector from vector with norm {norm:.3g}")
    u = h / norm
    return I3 - np.outer(u, u)


# ---------------------------------------------------------------------------
# Transition models
# ---------------------------------------------------------------------------

def constant_velocity_transition(dt: float, with_scale: bool = True) -> np.ndarray:
    n = 7 if with_scale else 6
    a = np.eye(n)
    a[0:3, 3:6] = dt * I3
    return a


def constant_acceleration_transition(dt: float) -> np.ndarray:
    a = np.eye(10)
    a[0:3, 3:6] = dt * I3
    a[0:3, 6:9] = 0.5 * dt * dt * I3
    a[3:6, 6:9] = dt * I3
    return a


def _check_dt(dt: float) -> None:
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")


def predict_common(s: CommonState, dt: float, n: NoiseParams) -> CommonState:
    """Constant-velocity propagation of (p, v, alpha)."""
    _check_dt(dt)
    a = constant_velocity_transition(dt)
    w = np.diag([n.sigma_p**2] * 3 + [n.sigma_v**2] * 3 + [n.sigma_alpha**2])
    x, p = kalman_predict(s.vector, s.cov, a, w)
    return CommonState.from_vector(x, p)


def predict_mav(s: MavState, dt: float, n: NoiseParams) -> MavState:
    """Constant-acceleration propagation of (p, v, a, alpha); no position process noise."""
    _check_dt(dt)
    a = constant_acceleration_transition(dt)
    w = np.diag([0.0] * 3 + [n.sigma_v**2] * 3 + [n.sigma_a**2] * 3 + [n.sigma_alpha**2])
    x, p = kalman_predict(s.vector, s.cov, a, w)
    return MavState.from_vector(x, p)


def predict_bearing(s: BearingState, dt: float, n: NoiseParams) -> BearingState:
    _check_dt(dt)
    a = constant_velocity_transition(dt, with_scale=False)
    w = np.diag([n.sigma_p**2] * 3 + [n.sigma_v**2] * 3)
    x, p = kalman_predict(s.vector, s.cov, a, w)
    return BearingState.from_vector(x, p)


# ---------------------------------------------------------------------------
# Corrections
# ---------------------------------------------------------------------------

def predicted_t_bar(p: np.ndarray, alpha: float, p_cw: np.ndarray) -> np.ndarray:
    """T_bar the prior expects to see: (p - p_c) / alpha."""
    return (np.asarray(p, dtype=float) - np.asarray(p_cw, dtype=float)) / max(alpha, ALPHA_FLOOR)


def _position_rows(t_bar: np.ndarray, dim: int) -> np.ndarray:
    """[I, O, ..., -T_bar] with the scale in the last column."""
    h = np.zeros((3, dim))
    h[:, 0:3] = I3
    h[:, dim - 1] = -t_bar
    return h


def _mav_rows(t_bar: np.ndarray, p_h: np.ndarray) -> np.ndarray:
    h = np.zeros((6, 10))
    h[0:3] = _position_rows(t_bar, 10)
    h[3:6, 6:9] = p_h
    return h


def _floor_scale(x: np.ndarray) -> np.ndarray:
    x[-1] = max(x[-1], ALPHA_FLOOR)
    return x


def update_common(
    s: CommonState, m: MeasurementFrame, n: NoiseParams, instrumented: bool = True
) -> CommonState:
    """p_c^w = p_o^w - alpha * T_bar, with noise alpha * eps_T_bar.

    The innovation uses the measured T_bar. With `instrumented`, gain and
    covariance use the T_bar predicted from the prior, which carries no
    noise of this frame. With the measured matrix that noise pulls alpha
    toward zero and the position onto the camera.
    """
    t_bar = m.t_bar.t_bar
    p_c = np.asarray(m.p_cw, dtype=float)
    h = _position_rows(t_bar, 7)
    h_gain = _position_rows(predicted_t_bar(s.p, s.alpha, p_c), 7) if instrumented else h
    alpha_prior = max(s.alpha, R_ALPHA_FLOOR)
    r = (alpha_prior * n.sigma_tbar) ** 2 * I3
    x, p = kalman_correct(s.vector, s.cov, p_c, h, r, h_gain)
    return CommonState.from_vector(_floor_scale(x), p)


def update_mav(
    s: MavState, m: MeasurementFrame, n: NoiseParams, instrumented: bool = True
) -> MavState:
    """Joint position and attitude correction.

    z = [p_c^w; P_h g e3], H = [[I, O, O, -T_bar], [O, O, P_h, O]],
    R = V diag(sigma_tbar^2 I, sigma_h^2 I) V^T with
    V = blockdiag(alpha I, ||a - g e3|| P_h) evaluated at the prior.

    With `instrumented` the gain uses the T_bar predicted from the prior
    (see update_common). The attitude rows always use the measured P_h, so
    the attitude block of the innovation covariance stays rank 2.
    """
    if m.h is None:
        raise MissingAttitudeError("bearing-box-mav update needs a thrust direction")
    p_h = projector(m.h)
    p_c = np.asarray(m.p_cw, dtype=float)

    h = _mav_rows(m.t_bar.t_bar, p_h)
    h_gain = h
    if instrumented:
        h_gain = _mav_rows(predicted_t_bar(s.p, s.alpha, p_c), p_h)

    z = np.concatenate([p_c, p_h @ (n.g * E3)])

    alpha_prior = max(s.alpha, R_ALPHA_FLOOR)
    thrust_accel = max(float(np.linalg.norm(s.a - n.g * E3)), THRUST_ACCEL_FLOOR)
    v = block_diag(alpha_prior * I3, thrust_accel * p_h)
    sigma = block_diag(n.sigma_tbar**2 * I3, n.sigma_h**2 * I3)
    r = v @ sigma @ v.T

    x, p = kalman_correct(s.vector, s.cov, z, h, r, h_gain)
    return MavState.from_vector(_floor_scale(x), p)


def update_bearing_only(s: BearingState, m: MeasurementFrame, n: NoiseParams) -> BearingState:
    """P_g p_o^w = P_g p_c^w with the bearing noise scaled by the estimated range."""
    if m.bearing is None:
        raise ValueError("bearing-only update needs a bearing")
    p_g = projector(m.bearing)
    p_c = np.asarray(m.p_cw, dtype=float)

    h = np.hstack([p_g, O3])
    z = p_g @ p_c
    distance = max(float(np.linalg.norm(s.p - p_c)), RANGE_FLOOR)
    r = (distance * n.sigma_bearing) ** 2 * p_g

    x, p = kalman_correct(s.vector, s.cov, z, h, r)
    return BearingState.from_vector(x, p)


def update_bearing_angle(s: CommonState, m: MeasurementFrame, n: NoiseParams) -> CommonState:
    """p_c^w = p_o^w - (g / theta) * l on the state (p, v, l).

    Bearing and angle noise map into the pseudo-measurement as
    (l/theta) eps_g - (l g / theta^2) eps_theta.
    """
    if m.bearing is None or m.angle is None:
        raise ValueError("bearing-angle update needs a bearing and an angle")
    theta = float(m.angle)
    if theta <= 0:
        raise NonPositiveAngleError(f"angular size must be positive, got {theta}")
    g = np.asarray(m.bearing, dtype=float)
    g = g / np.linalg.norm(g)

    h = _position_rows(g / theta, 7)
    size_hat = max(s.alpha, R_ALPHA_FLOOR)
    scale = (size_hat / theta) ** 2
    r = scale * (n.sigma_bearing**2 * I3 + (n.sigma_angle / theta) ** 2 * np.outer(g, g))

    x, p = kalman_correct(s.vector, s.cov, np.asarray(m.p_cw, dtype=float), h, r)
    return CommonState.from_vector(_floor_scale(x), p)
