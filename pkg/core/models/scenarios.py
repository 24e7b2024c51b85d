"""Scenario models -- trajectory programs, scenarios, and run configuration."""

from __future__ import annotations

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.models.geometry import CameraIntrinsics, Cuboid
from core.models.states import FilterInit, NoiseParams

Vec3 = tuple[float, float, float]

TrajectoryKind = Literal[
    "stationary",
    "constant_velocity",
    "straight_lines",
    "circle",
    "spiral",
    "zigzag",
    "guidance",
    "polynomial",
]


class TrajectoryProgram(BaseModel):
    """Motion of the observer or the target.

    Which fields matter depends on `kind`:
      stationary         origin
      constant_velocity  origin, velocity
      circle             origin (center), radius, speed, phase
      spiral             circle fields plus climb_rate along world z
      zigzag             origin, direction * speed forward, lateral * amplitude
                         smoothed triangle wave of the given period
      straight_lines     waypoints, leg_duration, loop
      polynomial         coefficients b_0..b_n (p = sum b_i t^i)
      guidance           origin, velocity (initial), speed (cap), standoff,
                         ramp, lag; pursues the other party
    yaw fixes the body heading; None means "face the velocity".
    """

    model_config = ConfigDict(extra="forbid")

    kind: TrajectoryKind
    origin: Vec3 = (0.0, 0.0, 0.0)
    velocity: Vec3 = (0.0, 0.0, 0.0)
    radius: float = Field(default=1.0, gt=0)
    speed: float = Field(default=0.0, ge=0)
    phase: float = 0.0
    climb_rate: float = 0.0
    direction: Vec3 = (1.0, 0.0, 0.0)
    lateral: Vec3 = (0.0, 0.0, 1.0)
    amplitude: float = Field(default=0.0, ge=0)
    period: float = Field(default=10.0, gt=0)
    waypoints: list[Vec3] = Field(default_factory=list)
    leg_duration: float = Field(default=5.0, gt=0)
    loop: bool = False
    coefficients: list[Vec3] = Field(default_factory=list)
    standoff: float = Field(default=5.0, ge=0)
    ramp: float = Field(default=2.0, gt=0)
    lag: float = Field(default=1.0, gt=0)
    yaw: float | None = None

    @model_validator(mode="after")
    def _kind_parameters(self) -> TrajectoryProgram:
        if self.kind == "straight_lines" and len(self.waypoints) < 2:
            raise ValueError("straight_lines needs at least two waypoints")
        if self.kind == "polynomial" and not self.coefficients:
            raise ValueError("polynomial needs at least one coefficient vector")
        return self


class DetectionNoise(BaseModel):
    """Where measurement noise enters the synthetic pipeline.

    "pseudo": additive noise on T_bar, bearing, angle and h directly.
    "detection": noise on the unit-plane vertices (sigma_vertex) and on the
    detected rotation (sigma_rotation, rad), propagated through the solver.
    """

    model_config = ConfigDict(extra="forbid")

    mode: Literal["pseudo", "detection"] = "pseudo"
    sigma_vertex: float = Field(default=0.002, ge=0)
    sigma_rotation: float = Field(default=0.02, ge=0)


class Scenario(BaseModel):
    """One simulated experiment: who moves how, what is seen, and how noisily."""

    model_config = ConfigDict(extra="forbid")

    name: str
    description: str = ""
    observer: TrajectoryProgram
    target: TrajectoryProgram
    target_cuboid: Cuboid
    target_is_mav: bool = False
    camera: CameraIntrinsics = Field(default_factory=CameraIntrinsics)
    aim: Literal["target", "fixed"] = "target"
    aim_point: Vec3 | None = None
    dt: float = Field(default=0.02, gt=0)
    duration: float = Field(default=30.0, gt=0)
    noise: NoiseParams = Field(default_factory=NoiseParams)
    detection: DetectionNoise = Field(default_factory=DetectionNoise)
    init: FilterInit = Field(default_factory=FilterInit)
    seed: int = Field(default=0, ge=0, lt=2**64)
    estimators: list[str] = Field(default_factory=lambda: ["bearing-box", "bearing-only"])

    @model_validator(mode="after")
    def _timing_and_aim(self) -> Scenario:
        if self.duration < self.dt:
            raise ValueError(f"duration {self.duration} is shorter than dt {self.dt}")
        if self.aim == "fixed" and self.aim_point is None:
            raise ValueError("aim 'fixed' needs an aim_point")
        if self.observer.kind == "guidance" and self.target.kind == "guidance":
            raise ValueError("observer and target cannot both use guidance")
        return self

    @property
    def frame_count(self) -> int:
        return int(round(self.duration / self.dt)) + 1

    def times(self) -> list[float]:
        """Frame timestamps k * dt for k = 0 .. frame_count - 1."""
        return [k * self.dt for k in range(self.frame_count)]


class RunConfig(BaseModel):
    """Resolved arguments of `bbx run`."""

    model_config = ConfigDict(extra="forbid")

    scenario: str | None = None
    scenario_file: Path | None = None
    estimators: list[str] | None = None
    out_dir: Path = Path("out")
    seed: int | None = Field(default=None, ge=0, lt=2**64)
    dt: float | None = Field(default=None, gt=0)
    duration: float | None = Field(default=None, gt=0)
    noise_overrides: dict[str, float] = Field(default_factory=dict)
    export_detections: bool = False

    @field_validator("estimators")
    @classmethod
    def _non_empty(cls, names: list[str] | None) -> list[str] | None:
        if names is not None and not names:
            raise ValueError("estimator set must not be empty")
        return names

    @field_validator("noise_overrides")
    @classmethod
    def _known_noise_keys(cls, overrides: dict[str, float]) -> dict[str, float]:
        unknown = sorted(set(overrides) - set(NoiseParams.model_fields))
        if unknown:
            raise ValueError(f"unknown noise parameter(s): {', '.join(unknown)}")
        return overrides

    @model_validator(mode="after")
    def _one_source(self) -> RunConfig:
        if (self.scenario is None) == (self.scenario_file is None):
            raise ValueError("give exactly one of scenario or scenario_file")
        return self
