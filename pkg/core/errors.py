"""Error hierarchy -- every failure the toolkit raises on purpose.

The CLI maps ConfigError and DetectionLogError to exit status 2 and
everything else to exit status 3.
"""

from __future__ import annotations


class BearingBoxError(Exception):
    """Base class for all toolkit errors."""


class NonPositiveDepthError(BearingBoxError, ValueError):
    """A point lies on or behind the image plane.

    `index` is the cuboid vertex that failed, or None for a single point
    or the box center.
    """

    def __init__(self, depth: float, index: int | None = None) -> None:
        self.depth = depth
        self.index = index
        where = "center" if index is None else f"vertex {index}"
        super().__init__(f"Non-positive depth {depth:.6g} at {where}")


class SingularSystemError(BearingBoxError, ArithmeticError):
    """The stacked vertex system is rank deficient (degenerate detection)."""


class MissingAttitudeError(BearingBoxError, ValueError):
    """An attitude-aware update was given a frame without a thrust direction."""


class ZeroVectorError(BearingBoxError, ValueError):
    """A direction vector is too short to normalize."""


class NonPositiveAngleError(BearingBoxError, ValueError):
    """Angular size measurement is zero or negative."""


class InsufficientObservationsError(BearingBoxError, ValueError):
    """Not enough observations to build the requested stack."""


class FreeFallError(BearingBoxError, ValueError):
    """Acceleration equals gravity, so the thrust direction is undefined."""


class EmptyTraceError(BearingBoxError, ValueError):
    """A metric was requested on a trace with no usable frames."""


class ConfigError(BearingBoxError):
    """Invalid scenario file, run configuration, or CLI override."""


class DetectionLogError(BearingBoxError):
    """Malformed detection or camera-pose log."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
