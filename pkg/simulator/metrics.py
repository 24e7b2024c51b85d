"""Evaluation metrics -- depth error, consistency, and per-axis accuracy.

NIDE (normalized integral depth error) is the mean of |d_est - d| / d over
the frames of a trace; NEES is e^T P^-1 e / n_x for one frame.
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np
from scipy.stats import chi2

from core.errors import EmptyTraceError
from core.models.geometry import Rotation, Vector3
from core.models.traces import EstimateTrace, MetricSummary

logger = logging.getLogger(__name__)

DepthMode = Literal["optical", "range"]


def depth_of(p_o: Vector3, p_c: Vector3, r_cw: Rotation, mode: DepthMode = "optical") -> float:
    """Optical-axis depth e3^T R_c^w^T (p_o - p_c), or Euclidean range."""
    rel = np.asarray(p_o, dtype=float) - np.asarray(p_c, dtype=float)
    if mode == "range":
        return float(np.linalg.norm(rel))
    return float((np.asarray(r_cw).T @ rel)[2])


def nide(trace: EstimateTrace, include_out_of_fov: bool = False) -> float:
    """Mean relative depth error over frames with a positive true depth."""
    terms = [
        abs(r.depth_est - r.depth_true) / r.depth_true
        for r in trace.records
        if r.depth_true is not None
        and r.depth_est is not None
        and r.depth_true > 0
        and (include_out_of_fov or r.in_fov)
    ]
    if not terms:
        raise EmptyTraceError(f"no frames with positive true depth in {trace.estimator} trace")
    return float(np.mean(terms))


def nees_with_flag(truth: np.ndarray, est: np.ndarray, cov: np.ndarray) -> tuple[float, bool]:
    """NEES plus whether the pseudo-inverse had to stand in for P^-1."""
    e = np.asarray(truth, dtype=float) - np.asarray(est, dtype=float)
    n_x = e.size
    try:
        weighted = np.linalg.solve(cov, e)
        used_pinv = False
    except np.linalg.LinAlgError:
        weighted = np.linalg.pinv(cov) @ e
        used_pinv = True
        logger.debug("Singular covariance, NEES via pseudo-inverse")
    return max(float(e @ weighted), 0.0) / n_x, used_pinv


def nees(truth: np.ndarray, est: np.ndarray, cov: np.ndarray) -> float:
    return nees_with_flag(truth, est, cov)[0]


def axis_errors(trace: EstimateTrace) -> tuple[float, float, float]:
    """Root-mean-square position error along x, y and z."""
    records = [r for r in trace.require() if r.p_true is not None]
    if not records:
        raise EmptyTraceError(f"{trace.estimator} trace has no ground truth")
    errors = np.array([r.estimate.position - r.p_true for r in records])
    rmse = np.sqrt(np.mean(errors**2, axis=0))
    return float(rmse[0]), float(rmse[1]), float(rmse[2])


def chi2_band(dof: int, runs: int = 1, confidence: float = 0.95) -> tuple[float, float]:
    """Two-sided band for the average of `runs` NEES values normalized by dof.

    The sum of runs NEES values times dof is chi-square with dof * runs
    degrees of freedom.
    """
    total = dof * runs
    tail = (1.0 - confidence) / 2.0
    return float(chi2.ppf(tail, total) / total), float(chi2.ppf(1.0 - tail, total) / total)


def mean_nees(trace: EstimateTrace) -> float | None:
    values = [r.nees for r in trace.records if r.nees is not None]
    return float(np.mean(values)) if values else None


def summarize(trace: EstimateTrace, include_out_of_fov: bool = False) -> MetricSummary:
    records = trace.require()
    try:
        nide_value: float | None = nide(trace, include_out_of_fov)
    except EmptyTraceError:
        logger.warning("%s on %s: no in-view frames, NIDE undefined", trace.estimator, trace.scenario)
        nide_value = None
    rx, ry, rz = axis_errors(trace)
    return MetricSummary(
        scenario=trace.scenario,
        estimator=trace.estimator,
        nide=nide_value,
        mean_nees=mean_nees(trace),
        rmse_x=rx,
        rmse_y=ry,
        rmse_z=rz,
        frames=len(records),
        seed=trace.seed,
    )
