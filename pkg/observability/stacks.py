"""Stacked observation systems.

Every pseudo-measurement gives three linear equations

    p_o(t_k) - alpha * T_bar(t_k) = p_c(t_k)

in the target's motion parameters and alpha. Stacking N of them (plus the
attitude equations P_h a_o = P_h g e3 for multicopters) yields a matrix
whose full column rank is equivalent to observability of the noise-free
system. Times are taken relative to the first observation.
"""

from __future__ import annotations

import numpy as np

from core.errors import InsufficientObservationsError, MissingAttitudeError
from core.models.observability import Observation, ObservationStack, RowTag
from filters.plkf import projector

I3 = np.eye(3)
E3 = np.array([0.0, 0.0, 1.0])


def _check_times(obs: list[Observation]) -> np.ndarray:
    if not obs:
        raise InsufficientObservationsError("need at least one observation")
    t = np.array([o.t for o in obs], dtype=float)
    if np.any(np.diff(t) <= 0):
        raise ValueError("observation times must be strictly increasing")
    return t - t[0]


def build_second_order_stack(obs: list[Observation], h: np.ndarray, g: float = 9.81) -> ObservationStack:
    """(3N+3) x 10 system in (p_o(t_1), v_o, a_o, alpha) for a constant-acceleration MAV.

    Rows: [I, dt I, dt^2/2 I, -T_bar] per observation, then [O, O, P_h, O].
    """
    dts = _check_times(obs)
    n_obs = len(obs)
    matrix = np.zeros((3 * n_obs + 3, 10))
    rhs = np.zeros(3 * n_obs + 3)
    meta: list[RowTag] = []

    for k, (o, dt) in enumerate(zip(obs, dts)):
        rows = slice(3 * k, 3 * k + 3)
        matrix[rows, 0:3] = I3
        matrix[rows, 3:6] = dt * I3
        matrix[rows, 6:9] = 0.5 * dt * dt * I3
        matrix[rows, 9] = -np.asarray(o.t_bar)
        rhs[rows] = o.p_c
        meta.extend([("position", o.t)] * 3)

    p_h = projector(h)
    matrix[3 * n_obs:, 6:9] = p_h
    rhs[3 * n_obs:] = p_h @ (g * E3)
    meta.extend([("attitude", obs[-1].t)] * 3)
    return ObservationStack(matrix=matrix, rhs=rhs, meta=meta)


def build_first_order_stack(obs: list[Observation]) -> ObservationStack:
    """3N x 7 system in (p_o(t_1), v_o, alpha) for a constant-velocity target."""
    dts = _check_times(obs)
    n_obs = len(obs)
    matrix = np.zeros((3 * n_obs, 7))
    rhs = np.zeros(3 * n_obs)
    meta: list[RowTag] = []

    for k, (o, dt) in enumerate(zip(obs, dts)):
        rows = slice(3 * k, 3 * k + 3)
        matrix[rows, 0:3] = I3
        matrix[rows, 3:6] = dt * I3
        matrix[rows, 6] = -np.asarray(o.t_bar)
        rhs[rows] = o.p_c
        meta.extend([("position", o.t)] * 3)
    return ObservationStack(matrix=matrix, rhs=rhs, meta=meta)


def second_difference_weights(t: np.ndarray, power: int, k: int) -> float:
    """2 * f[t_{k-2}, t_{k-1}, t_k] for f(t) = t**power.

    Equals (f_k - 2 f_{k-1} + f_{k-2}) / tau^2 on a uniform grid and is
    exactly the second derivative for polynomials of degree <= 2.
    """
    t0, t1, t2 = t[k - 2], t[k - 1], t[k]
    f0, f1, f2 = t0**power, t1**power, t2**power
    d1 = (f1 - f0) / (t1 - t0)
    d2 = (f2 - f1) / (t2 - t1)
    return 2.0 * (d2 - d1) / (t2 - t0)


def build_polynomial_stack(
    obs: list[Observation],
    n: int,
    attitude_rows: bool,
    g: float = 9.81,
) -> ObservationStack:
    """System in the target's polynomial coefficients (b_0..b_n) and alpha.

    Top block: [I, t_k I, ..., t_k^n I, -T_bar(t_k)] = p_c(t_k).
    Attitude block (k >= 3, needs h on each observation):
    [O, O, 2 P_h, D2(t_k^3) P_h, ..., D2(t_k^n) P_h, O] = P_h g e3,
    where D2 is the second divided difference operator above.
    """
    if n < 1:
        raise ValueError(f"polynomial order must be >= 1, got {n}")
    if len(obs) < n + 1:
        raise InsufficientObservationsError(
            f"order {n} needs at least {n + 1} observations, got {len(obs)}"
        )
    t = _check_times(obs)
    n_obs = len(obs)
    cols = 3 * n + 4
    n_att = max(n_obs - 2, 0) if attitude_rows else 0

    matrix = np.zeros((3 * n_obs + 3 * n_att, cols))
    rhs = np.zeros(3 * n_obs + 3 * n_att)
    meta: list[RowTag] = []

    for k, o in enumerate(obs):
        rows = slice(3 * k, 3 * k + 3)
        for m in range(n + 1):
            matrix[rows, 3 * m:3 * m + 3] = t[k] ** m * I3
        matrix[rows, cols - 1] = -np.asarray(o.t_bar)
        rhs[rows] = o.p_c
        meta.extend([("position", o.t)] * 3)

    if attitude_rows:
        for j, k in enumerate(range(2, n_obs)):
            h = obs[k].h
            if h is None:
                raise MissingAttitudeError(f"observation at t={obs[k].t} has no thrust direction")
            p_h = projector(h)
            rows = slice(3 * n_obs + 3 * j, 3 * n_obs + 3 * j + 3)
            for m in range(2, n + 1):
                matrix[rows, 3 * m:3 * m + 3] = second_difference_weights(t, m, k) * p_h
            rhs[rows] = p_h @ (g * E3)
            meta.extend([("attitude", obs[k].t)] * 3)

    return ObservationStack(matrix=matrix, rhs=rhs, meta=meta)
