"""Observability -- stacked observation systems and rank verdicts."""

from observability.conditions import (
    projector_block_pair,
    check_observability_conditions,
    numeric_rank,
    relative_acceleration,
    sliding_window_verdicts,
    vector_rank,
    window_verdict,
)
from observability.stacks import (
    build_first_order_stack,
    build_polynomial_stack,
    build_second_order_stack,
    second_difference_weights,
)

__all__ = [
    "projector_block_pair",
    "build_first_order_stack",
    "build_polynomial_stack",
    "build_second_order_stack",
    "check_observability_conditions",
    "numeric_rank",
    "relative_acceleration",
    "second_difference_weights",
    "sliding_window_verdicts",
    "vector_rank",
    "window_verdict",
]
