#!/usr/bin/env python3
"""
Flow Role Extraction

Markov Stability on the RMST similarity graph (combinatorial walk), followed
by per-role degree statistics taken from the original directed graph.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..analysis.friends import FriendProportions, coarse_grain, external_friend_proportion
from ..dynamics.transition import CombinatorialWalk, TimeMode
from ..errors import DimensionError
from ..graph.directed_graph import DirectedGraph, degree_vectors
from ..graph.partition import Partition
from ..stability.sweep import (
    DEFAULT_N_RUNS,
    DEFAULT_VI_THRESHOLD,
    RobustWindow,
    SweepRecord,
    choose_partition,
    stability_sweep,
    time_grid,
)
from .rmst import ZERO_DISTANCE, RmstGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RoleSummary:
    role: int
    n_members: int
    mean_in_degree: float
    mean_out_degree: float


@dataclass
class RoleReport:
    """Role partition of g's nodes with per-role statistics and the role-to-role flow matrix."""
    partition: Partition
    roles: List[RoleSummary]
    flow_matrix: np.ndarray
    window: Optional[RobustWindow] = None
    sweep: List[SweepRecord] = field(default_factory=list)
    friend_proportions: Optional[FriendProportions] = None

    @property
    def n_roles(self) -> int:
        return self.partition.n_communities

    def summary(self) -> Dict[str, object]:
        summary: Dict[str, object] = {"n_roles": self.n_roles}
        if self.window is not None:
            summary["window_t_start"] = self.window.t_start
            summary["window_t_end"] = self.window.t_end
            summary["window_persistence"] = self.window.persistence
        for role in self.roles:
            summary[f"role_{role.role}_count"] = role.n_members
            summary[f"role_{role.role}_mean_in_degree"] = role.mean_in_degree
            summary[f"role_{role.role}_mean_out_degree"] = role.mean_out_degree
        return summary


def role_summaries(g: DirectedGraph, roles: Partition) -> List[RoleSummary]:
    degrees = degree_vectors(g)
    summaries = []
    for role in range(roles.n_communities):
        members = roles.members(role)
        summaries.append(RoleSummary(
            role=role,
            n_members=len(members),
            mean_in_degree=float(np.mean(degrees.in_degree[members])),
            mean_out_degree=float(np.mean(degrees.out_degree[members])),
        ))
    return summaries


def extract_roles(g: DirectedGraph, rmst_graph: RmstGraph,
                  times: Optional[Sequence[float]] = None, n_runs: int = DEFAULT_N_RUNS,
                  vi_threshold: float = DEFAULT_VI_THRESHOLD, base_seed: int = 0,
                  workers: int = 1, interest: Optional[Partition] = None) -> RoleReport:
    """Roles from the most persistent non-singleton window of a sweep on the RMST graph."""
    if rmst_graph.n_nodes != g.n_nodes:
        raise DimensionError(f"RMST has {rmst_graph.n_nodes} nodes, graph has {g.n_nodes}")

    window = None
    records: List[SweepRecord] = []
    if rmst_graph.max_distance <= ZERO_DISTANCE:
        # every profile is identical: nothing separates the nodes
        logger.info("All profiles coincide; a single role")
        roles = Partition.all_in_one(g.n_nodes)
    else:
        walk = CombinatorialWalk(rmst_graph.to_graph(g.node_labels))
        pi = np.full(g.n_nodes, 1.0 / g.n_nodes)
        grid = list(times) if times is not None else time_grid()
        records = stability_sweep(walk, pi, grid, n_runs=n_runs, mode=TimeMode.CONTINUOUS,
                                  base_seed=base_seed, workers=workers)
        roles, window = choose_partition(records, vi_threshold)

    roles = roles.ranked_by_size()
    report = RoleReport(
        partition=roles,
        roles=role_summaries(g, roles),
        flow_matrix=coarse_grain(g, roles),
        window=window,
        sweep=records,
    )
    if interest is not None:
        report.friend_proportions = external_friend_proportion(g, interest, roles)
    logger.info(f"Extracted {report.n_roles} roles: sizes {roles.sizes().tolist()}")
    return report
