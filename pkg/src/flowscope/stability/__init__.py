"""Markov Stability: scoring, Louvain optimization, sweeps and robust windows."""

from .information import mean_pairwise_vi, variation_of_information
from .louvain import louvain_optimize, louvain_partition
from .quality import (
    QualityMatrix,
    StabilityScore,
    clustered_autocovariance,
    quality_matrix,
    stability_score,
)
from .sweep import (
    DEFAULT_N_RUNS,
    DEFAULT_VI_THRESHOLD,
    RobustWindow,
    SweepRecord,
    choose_partition,
    most_persistent_nontrivial,
    select_robust_partitions,
    stability_sweep,
    time_grid,
)

__all__ = [
    "DEFAULT_N_RUNS",
    "DEFAULT_VI_THRESHOLD",
    "QualityMatrix",
    "RobustWindow",
    "StabilityScore",
    "SweepRecord",
    "choose_partition",
    "clustered_autocovariance",
    "louvain_optimize",
    "louvain_partition",
    "mean_pairwise_vi",
    "most_persistent_nontrivial",
    "quality_matrix",
    "select_robust_partitions",
    "stability_sweep",
    "stability_score",
    "time_grid",
    "variation_of_information",
]
