"""Built-in scenarios.

World frame has gravity along +z, so altitudes are negative z. Cases 1-4
are the convergence studies (spiral, zigzag and guidance observers, then a
stationary camera); the remaining entries mirror the flight and ground
experiments: a simulated circling multicopter, indoor multicopter flights
and a toy car.
"""

from __future__ import annotations

import math

from core.models.geometry import Cuboid
from core.models.scenarios import DetectionNoise, Scenario, TrajectoryProgram
from core.models.states import FilterInit, NoiseParams

MAV_BOX = Cuboid(dims=(0.92, 0.92, 0.55))
INDOOR_MAV_BOX = Cuboid(dims=(0.25, 0.32, 0.085))
CAR_BOX = Cuboid(dims=(0.28, 0.24, 0.14))

MAV_ESTIMATORS = ["bearing-box-mav", "bearing-only", "bearing-angle"]
COMMON_ESTIMATORS = ["bearing-box", "bearing-only", "bearing-angle"]

SIM_NOISE = NoiseParams(
    sigma_tbar=0.2,
    sigma_h=0.02,
    sigma_v=1e-3,
    sigma_a=math.sqrt(0.001),
    sigma_alpha=1e-4,
)

INDOOR_NOISE = NoiseParams(
    sigma_tbar=0.3,
    sigma_h=0.03,
    sigma_v=1e-3,
    sigma_a=math.sqrt(0.0005),
    sigma_alpha=1e-4,
)


def _init(
    p0: tuple[float, float, float],
    position: float,
    velocity: float,
    acceleration: float,
    alpha: float,
    alpha0: float = 1.0,
) -> FilterInit:
    """Start at p0 with per-block variances; every estimator reads its own entries."""
    return FilterInit(
        p0=p0,
        alpha0=alpha0,
        cov_diag=[position] * 3 + [velocity] * 3 + [acceleration] * 3 + [alpha],
    )


# initial guesses about 0.9 m from where the targets of cases 1-4 start
NEAR_START = (3.5, 0.5, -1.5)
CRUISER_START = (0.5, -2.5, -1.5)


def _case1() -> Scenario:
    return Scenario(
        name="case1",
        description="Spiral observer, circling multicopter",
        observer=TrajectoryProgram(
            kind="spiral", origin=(-12.0, 0.0, -1.0), radius=3.0, speed=2.0, climb_rate=-0.05,
        ),
        target=TrajectoryProgram(kind="circle", origin=(0.0, 0.0, -2.0), radius=4.0, speed=0.5),
        target_cuboid=MAV_BOX,
        target_is_mav=True,
        noise=SIM_NOISE,
        init=_init(NEAR_START, position=0.5, velocity=0.25, acceleration=0.25, alpha=0.01),
        estimators=list(MAV_ESTIMATORS),
    )


def _case2() -> Scenario:
    return Scenario(
        name="case2",
        description="Zigzag observer, multicopter cruising at constant velocity",
        observer=TrajectoryProgram(
            kind="zigzag", origin=(-12.0, -3.0, -1.0), direction=(0.0, 1.0, 0.0), speed=0.3,
            lateral=(0.0, 0.0, 1.0), amplitude=2.0, period=8.0,
        ),
        target=TrajectoryProgram(kind="constant_velocity", origin=(0.0, -3.0, -2.0), velocity=(0.0, 0.3, 0.0)),
        target_cuboid=MAV_BOX,
        target_is_mav=True,
        noise=SIM_NOISE,
        init=_init(CRUISER_START, position=0.5, velocity=0.25, acceleration=0.25, alpha=0.01),
        estimators=list(MAV_ESTIMATORS),
    )


def _case3() -> Scenario:
    return Scenario(
        name="case3",
        description="Observer on a pursuit guidance path, multicopter at constant velocity",
        observer=TrajectoryProgram(
            kind="guidance", origin=(-15.0, 4.0, -1.0), speed=1.5, standoff=8.0, ramp=2.0, lag=1.0,
        ),
        target=TrajectoryProgram(kind="constant_velocity", origin=(0.0, -3.0, -2.0), velocity=(0.0, 0.3, 0.0)),
        target_cuboid=MAV_BOX,
        target_is_mav=True,
        noise=SIM_NOISE,
        init=_init(CRUISER_START, position=0.5, velocity=0.25, acceleration=0.25, alpha=0.01),
        estimators=list(MAV_ESTIMATORS),
    )


def _stationary_circle(name: str, description: str) -> Scenario:
    return Scenario(
        name=name,
        description=description,
        observer=TrajectoryProgram(kind="stationary", origin=(-10.0, 0.0, -1.0)),
        target=TrajectoryProgram(kind="circle", origin=(0.0, 0.0, -2.0), radius=4.0, speed=4.0),
        target_cuboid=MAV_BOX,
        target_is_mav=True,
        aim="fixed",
        aim_point=(0.0, 0.0, -2.0),
        noise=SIM_NOISE,
        init=_init(NEAR_START, position=1.0, velocity=16.0, acceleration=16.0, alpha=0.05),
        estimators=list(MAV_ESTIMATORS),
    )


def _case4() -> Scenario:
    return _stationary_circle("case4", "Stationary camera, multicopter circling at 4 m/s")


def _airsim_circle() -> Scenario:
    sc = _stationary_circle(
        "airsim-circle",
        "Simulated flight: stationary camera, circle of radius 4 m at 4 m/s, detections with vertex noise",
    )
    return sc.model_copy(update={
        "estimators": ["bearing-box-mav", "bearing-box", "bearing-only", "bearing-angle"],
        "detection": DetectionNoise(mode="detection", sigma_vertex=0.002, sigma_rotation=0.02),
    })


def _mav_circle() -> Scenario:
    return Scenario(
        name="mav-circle",
        description="Indoor flight: small multicopter circling in front of a static camera",
        observer=TrajectoryProgram(kind="stationary", origin=(-4.0, 0.0, -1.2)),
        target=TrajectoryProgram(kind="circle", origin=(0.0, 0.0, -1.5), radius=1.5, speed=1.0),
        target_cuboid=INDOOR_MAV_BOX,
        target_is_mav=True,
        aim="fixed",
        aim_point=(0.0, 0.0, -1.5),
        noise=INDOOR_NOISE,
        init=_init((0.0, 0.0, -1.0), position=10.0, velocity=10.0, acceleration=10.0, alpha=1.0),
        duration=40.0,
        estimators=list(MAV_ESTIMATORS),
    )


def _mav_straight_lines() -> Scenario:
    return Scenario(
        name="mav-straight-lines",
        description="Indoor flight: small multicopter flying a square of straight legs",
        observer=TrajectoryProgram(kind="stationary", origin=(-5.0, 0.0, -1.2)),
        target=TrajectoryProgram(
            kind="straight_lines",
            waypoints=[(1.5, -1.5, -1.5), (1.5, 1.5, -1.5), (-1.5, 1.5, -1.5), (-1.5, -1.5, -1.5)],
            leg_duration=4.0,
            loop=True,
        ),
        target_cuboid=INDOOR_MAV_BOX,
        target_is_mav=True,
        aim="fixed",
        aim_point=(0.0, 0.0, -1.5),
        noise=INDOOR_NOISE,
        init=_init((0.0, 0.0, -1.0), position=10.0, velocity=10.0, acceleration=10.0, alpha=1.0),
        duration=40.0,
        estimators=list(MAV_ESTIMATORS),
    )


def _car_zigzag() -> Scenario:
    return Scenario(
        name="car-zigzag",
        description="Toy car driving straight, hand-held camera moving in a zigzag",
        observer=TrajectoryProgram(
            kind="zigzag", origin=(-3.0, 0.0, -1.2), direction=(1.0, 0.0, 0.0), speed=0.2,
            lateral=(0.0, 1.0, 0.0), amplitude=1.0, period=6.0,
        ),
        target=TrajectoryProgram(kind="constant_velocity", origin=(0.0, 0.0, -0.07), velocity=(0.2, 0.0, 0.0)),
        target_cuboid=CAR_BOX,
        init=_init((0.0, 0.5, 0.0), position=10.0, velocity=10.0, acceleration=10.0, alpha=1.0),
        duration=30.0,
        estimators=list(COMMON_ESTIMATORS),
    )


def _car_straight() -> Scenario:
    return Scenario(
        name="car-straight",
        description="Toy car driving straight, camera gently accelerating alongside",
        observer=TrajectoryProgram(
            kind="polynomial",
            coefficients=[(-3.0, 0.5, -1.2), (0.1, 0.0, 0.0), (0.01, 0.005, 0.0)],
        ),
        target=TrajectoryProgram(kind="constant_velocity", origin=(0.0, 0.0, -0.07), velocity=(0.2, 0.0, 0.0)),
        target_cuboid=CAR_BOX,
        init=_init((0.0, 0.5, 0.0), position=10.0, velocity=10.0, acceleration=10.0, alpha=1.0),
        duration=30.0,
        estimators=list(COMMON_ESTIMATORS),
    )


BUILTIN_SCENARIOS = {
    "case1": _case1,
    "case2": _case2,
    "case3": _case3,
    "case4": _case4,
    "airsim-circle": _airsim_circle,
    "car-zigzag": _car_zigzag,
    "car-straight": _car_straight,
    "mav-circle": _mav_circle,
    "mav-straight-lines": _mav_straight_lines,
}


def scenario_names() -> list[str]:
    return list(BUILTIN_SCENARIOS)


def get_scenario(name: str) -> Scenario:
    """Fresh copy of a built-in scenario. Raises KeyError if unknown."""
    if name not in BUILTIN_SCENARIOS:
        raise KeyError(f"No scenario named '{name}'. Available: {scenario_names()}")
    return BUILTIN_SCENARIOS[name]()
