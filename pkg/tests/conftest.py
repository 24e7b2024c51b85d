"""Shared fixtures: a seeded generator, the default camera, noise-free settings."""

from __future__ import annotations

import numpy as np
import pytest

from core.models.geometry import CameraIntrinsics
from core.models.states import NoiseParams


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(12345))


@pytest.fixture
def camera() -> CameraIntrinsics:
    return CameraIntrinsics()


@pytest.fixture
def zero_noise() -> NoiseParams:
    return NoiseParams(
        sigma_tbar=0.0, sigma_h=0.0, sigma_p=0.0, sigma_v=0.0, sigma_a=0.0,
        sigma_alpha=0.0, sigma_bearing=0.0, sigma_angle=0.0,
    )
