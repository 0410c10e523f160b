"""Branch measures and their stability under coarse-graining."""

from .branch_measures import (
    DEFAULT_THRESHOLD,
    BranchProfile,
    StabilityReport,
    RatioResult,
    born_weights,
    branch_count,
    count_stability,
    consecutive_grains,
    measure_ratio,
)

__all__ = [
    "DEFAULT_THRESHOLD",
    "BranchProfile",
    "StabilityReport",
    "RatioResult",
    "born_weights",
    "branch_count",
    "count_stability",
    "consecutive_grains",
    "measure_ratio",
]
