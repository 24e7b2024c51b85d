"""Estimator registry -- stores and creates estimator implementations by name.

Estimators keep mutable per-run state, so the registry stores factories and
hands out a fresh instance for every run.
"""

from __future__ import annotations

import logging
from typing import Callable

from core.models.states import NoiseParams
from core.protocols import Estimator

logger = logging.getLogger(__name__)

EstimatorFactory = Callable[[NoiseParams], Estimator]


class EstimatorRegistry:
    """Central registry for estimator factories.

    Usage:
        registry = EstimatorRegistry()
        registry.register("bearing-box", BearingBoxEstimator)

        est = registry.create("bearing-box", noise)
        registry.names()  # ["bearing-box"]
    """

    def __init__(self) -> None:
        self._factories: dict[str, EstimatorFactory] = {}
        self._requires_attitude: dict[str, bool] = {}

    def register(
        self, name: str, factory: EstimatorFactory, requires_attitude: bool = False
    ) -> None:
        if name in self._factories:
            logger.warning("Overwriting existing estimator '%s'", name)
        self._factories[name] = factory
        self._requires_attitude[name] = requires_attitude
        logger.debug("Registered estimator: %s", name)

    def create(self, name: str, noise: NoiseParams) -> Estimator:
        """Instantiate an estimator. Raises KeyError if unknown."""
        instance = self._factory(name)(noise)
        if not isinstance(instance, Estimator):
            raise TypeError(f"Estimator '{name}' does not implement the Estimator protocol")
        return instance

    def requires_attitude(self, name: str) -> bool:
        self._factory(name)
        return self._requires_attitude[name]

    def has(self, name: str) -> bool:
        return name in self._factories

    def names(self) -> list[str]:
        return list(self._factories.keys())

    def validate(self, names: list[str]) -> list[str]:
        """Return `names` unchanged if all are registered, else raise KeyError."""
        for name in names:
            self._factory(name)
        return names

    def _factory(self, name: str) -> EstimatorFactory:
        if name not in self._factories:
            raise KeyError(f"No estimator named '{name}'. Available: {self.names()}")
        return self._factories[name]


def default_registry() -> EstimatorRegistry:
    """Registry with the four built-in estimators."""
    from plugins.estimators import BUILTIN_ESTIMATORS

    registry = EstimatorRegistry()
    for meta, cls in BUILTIN_ESTIMATORS:
        registry.register(meta["name"], cls, requires_attitude=meta["requires_attitude"])
    return registry
