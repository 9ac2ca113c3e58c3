"""Random-walk dynamics: teleportation operator, PageRank, P(t)."""

from .dense_dump import dump_dense, load_dense
from .expm_action import expm_action
from .transition import (
    DEFAULT_TELEPORT_ALPHA,
    CombinatorialWalk,
    MarkovOperator,
    StationaryDistribution,
    TimeMode,
    TransitionSystem,
    build_transition,
    propagate,
    stationary_distribution,
    transition_at_time,
)
from .walker_simulation import WalkerSample, simulate_walkers

__all__ = [
    "DEFAULT_TELEPORT_ALPHA",
    "CombinatorialWalk",
    "MarkovOperator",
    "StationaryDistribution",
    "TimeMode",
    "TransitionSystem",
    "WalkerSample",
    "build_transition",
    "dump_dense",
    "expm_action",
    "load_dense",
    "propagate",
    "simulate_walkers",
    "stationary_distribution",
    "transition_at_time",
]
