"""Numeric rank decisions and the analytic observability conditions.

A multicopter target is observable when either
  (a) the observer has higher-order motion (nonzero jerk, >= 4 observations), or
  (b) the relative acceleration has a component orthogonal to the thrust
      direction (>= 3 observations).
For a target without attitude information the observer must accelerate
relative to a constant-velocity target (>= 3 observations).
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np

from core.errors import InsufficientObservationsError, MissingAttitudeError
from core.models.observability import (
    ConditionTriggered,
    Observation,
    ObservabilityVerdict,
    ObservationSample,
    WindowVerdict,
)
from filters.plkf import projector
from observability.stacks import (
    build_first_order_stack,
    build_polynomial_stack,
    build_second_order_stack,
)

logger = logging.getLogger(__name__)

PREDICATE_TOL = 1e-6
BAND = (1e-10, 1e-6)

I3 = np.eye(3)


def numeric_rank(
    matrix: np.ndarray,
    rtol: float | None = None,
    scale_columns: bool = True,
) -> tuple[int, float, float]:
    """SVD rank with the standard rule sigma > max(rows, cols) * eps * sigma_max.

    Columns are scaled to unit norm first (rank is unchanged, conditioning of
    the polynomial blocks is much better). Returns (rank, sigma_min, sigma_max);
    sigma_min is 0 when there are fewer rows than columns.
    """
    m = np.array(matrix, dtype=float)
    if m.size == 0:
        return 0, 0.0, 0.0
    if scale_columns:
        norms = np.linalg.norm(m, axis=0)
        norms[norms == 0] = 1.0
        m = m / norms
    sv = np.linalg.svd(m, compute_uv=False)
    sigma_max = float(sv[0])
    if sigma_max == 0.0:
        return 0, 0.0, 0.0
    tol = (rtol if rtol is not None else max(m.shape) * np.finfo(float).eps) * sigma_max
    rank = int(np.sum(sv > tol))
    sigma_min = float(sv[-1]) if m.shape[0] >= m.shape[1] else 0.0
    return rank, sigma_min, sigma_max


def vector_rank(v: np.ndarray, reference: float = 1.0, atol: float = 1e-10) -> int:
    """Rank of a single vector: 1 unless its norm is below atol * max(1, reference)."""
    return int(np.linalg.norm(v) > atol * max(1.0, reference))


def relative_acceleration(obs: list[Observation], k: int) -> np.ndarray:
    """rho at observation k (k >= 2) from three consecutive pseudo-measurements.

    Equals (a_c - a_o) / alpha at t_{k-1} for piecewise-quadratic relative motion.
    """
    if k < 2 or k >= len(obs):
        raise InsufficientObservationsError(f"rho needs observations k-2..k, got k={k} of {len(obs)}")
    o0, o1, o2 = obs[k - 2], obs[k - 1], obs[k]
    slope_late = (o1.t_bar - o2.t_bar) / (o2.t - o1.t)
    slope_early = (o0.t_bar - o1.t_bar) / (o1.t - o0.t)
    return 2.0 / (o2.t - o0.t) * (slope_late - slope_early)


def projector_block_pair(h: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """([[I, u], [P_h, 0]], [[I, u], [0, P_h u]]) -- both have rank 3 + rank(P_h u)."""
    p_h = projector(h)
    u = np.asarray(u, dtype=float)
    left = np.zeros((6, 4))
    left[0:3, 0:3] = I3
    left[0:3, 3] = u
    left[3:6, 0:3] = p_h
    right = np.zeros((6, 4))
    right[0:3, 0:3] = I3
    right[0:3, 3] = u
    right[3:6, 3] = p_h @ u
    return left, right


# ---------------------------------------------------------------------------
# Analytic conditions
# ---------------------------------------------------------------------------

def _observer_jerk_nonzero(samples: list[ObservationSample]) -> bool:
    for prev, cur in zip(samples, samples[1:]):
        jerk = (np.asarray(cur.a_c) - np.asarray(prev.a_c)) / (cur.t - prev.t)
        if np.linalg.norm(jerk) > PREDICATE_TOL:
            return True
    return False


def _thrust_orthogonal_accel(samples: list[ObservationSample], fallback_h: np.ndarray) -> bool:
    for s in samples:
        h = s.h if s.h is not None else fallback_h
        rel = np.asarray(s.a_o) - np.asarray(s.a_c)
        if np.linalg.norm(projector(h) @ rel) > PREDICATE_TOL:
            return True
    return False


def _relative_accel_nonzero(samples: list[ObservationSample]) -> bool:
    return any(
        np.linalg.norm(np.asarray(s.a_c) - np.asarray(s.a_o)) > PREDICATE_TOL for s in samples
    )


def check_observability_conditions(
    samples: list[ObservationSample],
    model: Literal["mav", "common"] = "mav",
    g: float = 9.81,
) -> ObservabilityVerdict:
    """Evaluate the analytic conditions and the numeric rank on noise-free truth.

    model="mav" uses the (3N+3) x 10 constant-acceleration stack with the
    first sample's thrust direction; model="common" uses the 3N x 7
    constant-velocity stack. A mismatch between prediction and rank is
    flagged; mismatches with sigma_min/sigma_max inside [1e-10, 1e-6] are
    numerically ambiguous and reported as in-band.
    """
    if len(samples) < 3:
        raise InsufficientObservationsError(f"need at least 3 samples, got {len(samples)}")
    obs = [s.observation() for s in samples]
    n_obs = len(samples)

    if model == "mav":
        h = samples[0].h
        if h is None:
            raise MissingAttitudeError("mav model needs thrust directions on the samples")
        stack = build_second_order_stack(obs, h, g)
        cond_a = n_obs >= 4 and _observer_jerk_nonzero(samples)
        cond_b = _thrust_orthogonal_accel(samples, h)
    else:
        stack = build_first_order_stack(obs)
        cond_a = _relative_accel_nonzero(samples)
        cond_b = False

    rank, sigma_min, sigma_max = numeric_rank(stack.matrix)
    cols = stack.matrix.shape[1]
    observable = rank == cols
    predicted = cond_a or cond_b
    ratio = sigma_min / sigma_max if sigma_max > 0 else 0.0
    in_band = BAND[0] <= ratio <= BAND[1]
    disagreement = predicted != observable

    triggered: ConditionTriggered = "none"
    if cond_a:
        triggered = "higher_order_motion"
    elif cond_b:
        triggered = "thrust_orthogonal_accel"

    if disagreement and in_band:
        logger.info("Rank/predicate mismatch inside tolerance band (sigma ratio %.3g)", ratio)
    elif disagreement:
        logger.warning(
            "Rank/predicate mismatch: rank %d of %d, cond_a=%s cond_b=%s, sigma ratio %.3g",
            rank, cols, cond_a, cond_b, ratio,
        )

    return ObservabilityVerdict(
        observable=observable,
        numeric_rank=rank,
        cols=cols,
        sigma_min=sigma_min,
        sigma_max=sigma_max,
        condition_triggered=triggered,
        cond_a=cond_a,
        cond_b=cond_b,
        predicted=predicted,
        disagreement=disagreement,
        in_band=in_band,
    )


# ---------------------------------------------------------------------------
# Sliding windows over a trajectory
# ---------------------------------------------------------------------------

def _divided_difference(t: np.ndarray, values: np.ndarray, order: int) -> np.ndarray:
    """All order-th divided differences of `values` (rows) over the nodes t."""
    d = np.array(values, dtype=float)
    for j in range(1, order + 1):
        d = (d[1:] - d[:-1]) / (t[j:] - t[:-j])[:, None]
    return d


def window_verdict(
    samples: list[ObservationSample],
    n: int,
    attitude_rows: bool,
    scenario: str = "",
    g: float = 9.81,
) -> WindowVerdict:
    """Rank verdict for one window under an order-n polynomial target model.

    Within the window the target is replaced by its least-squares order-n
    polynomial fit (the motion model the rank conditions assume); the
    observer keeps its exact motion.
    """
    if len(samples) < n + 1:
        raise InsufficientObservationsError(
            f"order {n} needs at least {n + 1} samples, got {len(samples)}"
        )
    t = np.array([s.t for s in samples])
    t_rel = t - t[0]
    p_o = np.array([s.p_o for s in samples], dtype=float)
    p_c = np.array([s.p_c for s in samples], dtype=float)
    alpha = samples[0].alpha

    coeffs = np.polynomial.polynomial.polyfit(t_rel, p_o, n)
    p_fit = np.polynomial.polynomial.polyval(t_rel, coeffs).T

    obs = [
        Observation(
            t=s.t,
            t_bar=(p_fit[k] - p_c[k]) / alpha,
            p_c=p_c[k],
            h=s.h if attitude_rows else None,
        )
        for k, s in enumerate(samples)
    ]
    stack = build_polynomial_stack(obs, n, attitude_rows, g)
    rank, sigma_min, sigma_max = numeric_rank(stack.matrix)
    cols = stack.matrix.shape[1]

    cond_a = False
    if len(samples) >= n + 2:
        higher = _divided_difference(t_rel, p_c, n + 1)
        cond_a = bool(np.any(np.linalg.norm(higher, axis=1) > PREDICATE_TOL))
    cond_b = False
    if attitude_rows and len(samples) >= 3:
        cond_b = _thrust_orthogonal_accel(samples[2:], samples[0].h)

    return WindowVerdict(
        scenario=scenario,
        t_start=float(t[0]),
        N=len(samples),
        n=n,
        rank=rank,
        cols=cols,
        sigma_min=sigma_min,
        sigma_max=sigma_max,
        cond_a=cond_a,
        cond_b=cond_b,
        observable=rank == cols,
    )


def sliding_window_verdicts(
    samples: list[ObservationSample],
    n: int,
    window: int = 10,
    stride: int = 1,
    spacing: int = 1,
    attitude_rows: bool = True,
    scenario: str = "",
    g: float = 9.81,
) -> list[WindowVerdict]:
    """Slide a window of `window` observations over `samples[::spacing]`."""
    if window < 1 or stride < 1 or spacing < 1:
        raise ValueError("window, stride and spacing must be positive")
    picked = samples[::spacing]
    if len(picked) < window:
        raise InsufficientObservationsError(
            f"window of {window} needs {window} samples after spacing {spacing}, got {len(picked)}"
        )
    verdicts = [
        window_verdict(picked[start:start + window], n, attitude_rows, scenario, g)
        for start in range(0, len(picked) - window + 1, stride)
    ]
    logger.info(
        "%s: %d windows, %d observable (n=%d, attitude rows %s)",
        scenario or "<samples>", len(verdicts), sum(v.observable for v in verdicts), n, attitude_rows,
    )
    return verdicts
