"""Trajectory programs -- positions with exact velocities and accelerations.

Every kind is closed form except guidance, which integrates a pursuit law
with scipy's solve_ivp and reads the acceleration off the ODE right-hand side.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Protocol

import numpy as np
from scipy.integrate import solve_ivp

from core.models.scenarios import TrajectoryProgram
from geometry.rotations import normalize

logger = logging.getLogger(__name__)

Kinematics = tuple[np.ndarray, np.ndarray, np.ndarray]

# odd harmonics of a unit triangle wave: sum (-1)^j sin(k w t) / k^2
ZIGZAG_HARMONICS = (1, 3, 5)
TRIANGLE_GAIN = 8.0 / math.pi**2


class Trajectory(Protocol):
    program: TrajectoryProgram

    def sample(self, t: float) -> Kinematics:
        ...


# ---------------------------------------------------------------------------
# Closed-form kinds
# ---------------------------------------------------------------------------

def _stationary(p: TrajectoryProgram, t: float) -> Kinematics:
    return np.array(p.origin, dtype=float), np.zeros(3), np.zeros(3)


def _constant_velocity(p: TrajectoryProgram, t: float) -> Kinematics:
    v = np.array(p.velocity, dtype=float)
    return np.array(p.origin, dtype=float) + v * t, v, np.zeros(3)


def _circle(p: TrajectoryProgram, t: float) -> Kinematics:
    omega = p.speed / p.radius
    theta = p.phase + omega * t
    c, s = math.cos(theta), math.sin(theta)
    pos = np.array(p.origin, dtype=float) + p.radius * np.array([c, s, 0.0])
    vel = p.radius * omega * np.array([-s, c, 0.0])
    acc = -p.radius * omega**2 * np.array([c, s, 0.0])
    return pos, vel, acc


def _spiral(p: TrajectoryProgram, t: float) -> Kinematics:
    pos, vel, acc = _circle(p, t)
    pos[2] += p.climb_rate * t
    vel[2] += p.climb_rate
    return pos, vel, acc


def _zigzag(p: TrajectoryProgram, t: float) -> Kinematics:
    forward = normalize(p.direction)
    lateral = normalize(p.lateral)
    omega = 2.0 * math.pi / p.period
    wave = dwave = ddwave = 0.0
    for j, k in enumerate(ZIGZAG_HARMONICS):
        sign = -1.0 if j % 2 else 1.0
        wave += sign * math.sin(k * omega * t) / k**2
        dwave += sign * omega * math.cos(k * omega * t) / k
        ddwave -= sign * omega**2 * math.sin(k * omega * t)
    gain = TRIANGLE_GAIN * p.amplitude
    pos = np.array(p.origin, dtype=float) + p.speed * t * forward + gain * wave * lateral
    vel = p.speed * forward + gain * dwave * lateral
    acc = gain * ddwave * lateral
    return pos, vel, acc


def _straight_lines(p: TrajectoryProgram, t: float) -> Kinematics:
    points = [np.array(w, dtype=float) for w in p.waypoints]
    if p.loop:
        points.append(points[0])
    legs = len(points) - 1
    span = p.leg_duration
    leg = int(t // span)
    if p.loop:
        leg %= legs
    elif leg >= legs:
        return points[-1], np.zeros(3), np.zeros(3)
    s = (t % span) / span
    delta = points[leg + 1] - points[leg]
    # minimum-jerk profile, at rest at both ends of every leg
    blend = 10 * s**3 - 15 * s**4 + 6 * s**5
    dblend = (30 * s**2 - 60 * s**3 + 30 * s**4) / span
    ddblend = (60 * s - 180 * s**2 + 120 * s**3) / span**2
    return points[leg] + blend * delta, dblend * delta, ddblend * delta


def _polynomial(p: TrajectoryProgram, t: float) -> Kinematics:
    coeffs = np.array(p.coefficients, dtype=float)
    poly = np.polynomial.polynomial
    d1 = poly.polyder(coeffs, 1, axis=0) if len(coeffs) > 1 else np.zeros((1, 3))
    d2 = poly.polyder(coeffs, 2, axis=0) if len(coeffs) > 2 else np.zeros((1, 3))
    return poly.polyval(t, coeffs), poly.polyval(t, d1), poly.polyval(t, d2)


CLOSED_FORM: dict[str, Callable[[TrajectoryProgram, float], Kinematics]] = {
    "stationary": _stationary,
    "constant_velocity": _constant_velocity,
    "circle": _circle,
    "spiral": _spiral,
    "zigzag": _zigzag,
    "straight_lines": _straight_lines,
    "polynomial": _polynomial,
}


class AnalyticTrajectory:
    def __init__(self, program: TrajectoryProgram) -> None:
        if program.kind not in CLOSED_FORM:
            raise ValueError(f"'{program.kind}' has no closed form")
        self.program = program
        self._fn = CLOSED_FORM[program.kind]

    def sample(self, t: float) -> Kinematics:
        return self._fn(self.program, t)


# ---------------------------------------------------------------------------
# Guidance
# ---------------------------------------------------------------------------

class GuidanceTrajectory:
    """Pure pursuit of another trajectory with a first-order velocity lag.

    The commanded velocity points at the pursued position with magnitude
    speed * tanh((distance - standoff) / ramp), so the pursuer backs off
    inside the standoff radius. The actual velocity follows the command with
    time constant `lag`.
    """

    def __init__(self, program: TrajectoryProgram, pursued: Trajectory, horizon: float) -> None:
        self.program = program
        self._pursued = pursued
        self._horizon = horizon
        y0 = np.concatenate([program.origin, program.velocity]).astype(float)
        self._solution = solve_ivp(
            self._rhs,
            (0.0, horizon),
            y0,
            method="RK45",
            dense_output=True,
            rtol=1e-9,
            atol=1e-9,
        )
        if not self._solution.success:
            raise RuntimeError(f"guidance integration failed: {self._solution.message}")
        logger.debug("Guidance trajectory integrated over %.2fs (%d steps)", horizon, self._solution.t.size)

    def _rhs(self, t: float, y: np.ndarray) -> np.ndarray:
        target, _, _ = self._pursued.sample(t)
        offset = target - y[:3]
        distance = float(np.linalg.norm(offset))
        if distance < 1e-9:
            command = np.zeros(3)
        else:
            gain = self.program.speed * math.tanh((distance - self.program.standoff) / self.program.ramp)
            command = gain * offset / distance
        return np.concatenate([y[3:], (command - y[3:]) / self.program.lag])

    def sample(self, t: float) -> Kinematics:
        if t < 0.0 or t > self._horizon + 1e-9:
            raise ValueError(f"t={t} outside the integrated horizon [0, {self._horizon}]")
        y = self._solution.sol(t)
        acc = self._rhs(t, y)[3:]
        return y[:3].copy(), y[3:].copy(), acc


# ---------------------------------------------------------------------------
# Public helpers
# ---------------------------------------------------------------------------

def build_trajectory(
    program: TrajectoryProgram,
    pursued: Trajectory | None = None,
    horizon: float | None = None,
) -> Trajectory:
    if program.kind == "guidance":
        if pursued is None or horizon is None:
            raise ValueError("guidance needs a pursued trajectory and a horizon")
        return GuidanceTrajectory(program, pursued, horizon)
    return AnalyticTrajectory(program)


def sample_trajectory(
    p: TrajectoryProgram,
    t: float,
    pursued: Trajectory | None = None,
    horizon: float | None = None,
) -> Kinematics:
    """(position, velocity, acceleration) of program `p` at time t."""
    return build_trajectory(p, pursued, horizon if horizon is not None else t).sample(t)


def heading_yaw(program: TrajectoryProgram, velocity: np.ndarray) -> float:
    """Configured yaw, else the horizontal heading of `velocity` (0 when hovering)."""
    if program.yaw is not None:
        return program.yaw
    vx, vy = float(velocity[0]), float(velocity[1])
    if math.hypot(vx, vy) < 1e-9:
        return 0.0
    return math.atan2(vy, vx)
