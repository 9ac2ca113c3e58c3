#!/usr/bin/env python3
"""
Community Composition

Coarse-grained flow between communities, coverage of the largest
communities and the share of each node's friends (out-neighbours) that sit
in another interest community, grouped by role.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..errors import ParameterError
from ..graph.directed_graph import DirectedGraph
from ..graph.partition import Partition, validate_partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FriendProportions:
    """Per-role external-friend proportions; nodes without friends are only counted.

    `nodes[r]` holds the node indices behind `proportions[r]`, entry for entry.
    """
    proportions: List[np.ndarray]
    no_friends: List[int]
    nodes: List[np.ndarray]

    def means(self) -> List[float]:
        return [float(values.mean()) if values.size else float("nan") for values in self.proportions]

    def per_node(self) -> List[Tuple[int, int, float]]:
        """(node, role, proportion) for every node with friends, in node order."""
        rows = [(int(node), role, float(value))
                for role, (members, values) in enumerate(zip(self.nodes, self.proportions))
                for node, value in zip(members, values)]
        return sorted(rows)


def coarse_grain(g: DirectedGraph, partition: Partition) -> np.ndarray:
    """c x c matrix; entry (a, b) sums the weights of edges from community a to b."""
    validate_partition(partition, g.n_nodes)
    indicator = partition.indicator_matrix()
    return np.asarray((indicator.T @ g.adjacency @ indicator).todense(), dtype=np.float64)


def community_coverage(partition: Partition, top_k: int) -> float:
    """Fraction of nodes inside the top_k largest communities."""
    if top_k < 1:
        raise ParameterError(f"top_k must be >= 1, got {top_k}")
    if partition.n_nodes == 0:
        return 0.0
    sizes = np.sort(partition.sizes())[::-1]
    return float(sizes[:top_k].sum() / partition.n_nodes)


def external_friend_proportion(g: DirectedGraph, interest: Partition,
                               roles: Partition) -> FriendProportions:
    """Per node, the fraction of out-neighbours outside its interest community."""
    validate_partition(interest, g.n_nodes)
    validate_partition(roles, g.n_nodes)
    adjacency = g.adjacency
    # edge multiplicity, not weight: a friend is a followed account
    out_count = np.diff(adjacency.indptr)
    sources = np.repeat(np.arange(g.n_nodes), out_count)
    outside = interest.assignment[sources] != interest.assignment[adjacency.indices]
    external = np.bincount(sources, weights=outside.astype(np.float64), minlength=g.n_nodes)

    proportions = []
    no_friends = []
    nodes = []
    for role in range(roles.n_communities):
        members = roles.members(role)
        has_friends = members[out_count[members] > 0]
        proportions.append(external[has_friends] / out_count[has_friends])
        nodes.append(has_friends)
        no_friends.append(int(len(members) - len(has_friends)))
    return FriendProportions(proportions=proportions, no_friends=no_friends, nodes=nodes)
