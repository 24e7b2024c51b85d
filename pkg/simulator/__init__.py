"""Simulator -- synthetic scenarios, frame synthesis, estimator runs and metrics."""

from simulator.attitude import mav_attitude_from_accel
from simulator.catalog import get_scenario, scenario_names
from simulator.engine import SimulationEngine, observation_samples, replay, run_scenario
from simulator.metrics import axis_errors, chi2_band, depth_of, nees, nees_with_flag, nide, summarize
from simulator.synthesis import Scene, synthesize_frame
from simulator.trajectories import build_trajectory, sample_trajectory

__all__ = [
    "Scene",
    "SimulationEngine",
    "axis_errors",
    "build_trajectory",
    "chi2_band",
    "depth_of",
    "get_scenario",
    "mav_attitude_from_accel",
    "nees",
    "nees_with_flag",
    "nide",
    "observation_samples",
    "replay",
    "run_scenario",
    "sample_trajectory",
    "scenario_names",
    "summarize",
    "synthesize_frame",
]
