"""Efficiencies of weak-measurement-assisted entanglement distillation.

Thin wrapper around the compiled extension; every function takes plain
scalars and returns scalars, tuples or dicts.
"""

from qdistil._core import (
    NotDistillableError,
    RatioUndefinedError,
    __version__,
    asymptotic_ratio,
    bell_efficiency,
    bell_filter,
    bisection_efficiency,
    efficiency_ratio,
    ghz_efficiency,
    ghz_filter,
    nonmax_efficiency,
    optimal_w,
    run_validation,
    w_round,
    w_threshold,
    w_trajectory,
)

__all__ = [
    "NotDistillableError",
    "RatioUndefinedError",
    "__version__",
    "asymptotic_ratio",
    "bell_efficiency",
    "bell_filter",
    "bisection_efficiency",
    "efficiency_ratio",
    "ghz_efficiency",
    "ghz_filter",
    "nonmax_efficiency",
    "optimal_w",
    "run_validation",
    "w_round",
    "w_threshold",
    "w_trajectory",
]
