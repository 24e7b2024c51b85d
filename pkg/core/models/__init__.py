"""Domain models shared across all components."""

from core.models.geometry import CameraIntrinsics, Cuboid, Pose
from core.models.detections import Box3DDetection, NormalizedRelPos, WorldPseudoMeasurement
from core.models.states import (
    BearingState,
    CommonState,
    FilterInit,
    MavState,
    MeasurementFrame,
    NoiseParams,
)
from core.models.observability import (
    Observation,
    ObservabilityVerdict,
    ObservationSample,
    ObservationStack,
    WindowVerdict,
)
from core.models.scenarios import DetectionNoise, RunConfig, Scenario, TrajectoryProgram
from core.models.traces import EstimateTrace, FrameTruth, MetricSummary, ScenarioRun, TraceRecord

__all__ = [
    "BearingState",
    "Box3DDetection",
    "CameraIntrinsics",
    "CommonState",
    "Cuboid",
    "DetectionNoise",
    "EstimateTrace",
    "FilterInit",
    "FrameTruth",
    "MavState",
    "MeasurementFrame",
    "MetricSummary",
    "NoiseParams",
    "NormalizedRelPos",
    "Observation",
    "ObservabilityVerdict",
    "ObservationSample",
    "ObservationStack",
    "Pose",
    "RunConfig",
    "Scenario",
    "ScenarioRun",
    "TraceRecord",
    "TrajectoryProgram",
    "WindowVerdict",
    "WorldPseudoMeasurement",
]
