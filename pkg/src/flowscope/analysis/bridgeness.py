#!/usr/bin/env python3
"""
Between-Community Bridgeness

Information travels against the edge direction (an edge u -> v means u
follows v, so content posted by v reaches u). For flow from community C1 to
community C2 we count shortest directed paths from every i in C2 to every j
in C1, inside the subgraph induced by C1 and C2. Each reachable pair carries
mass 1, split over its shortest paths (Brandes accumulation), and each
boundary edge C2 -> C1 collects the mass of the paths through it.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from ..errors import ParameterError
from ..graph.directed_graph import DirectedGraph
from ..graph.partition import Partition, validate_partition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BridgeEdge:
    """One boundary edge source -> target (source in C2 follows target in C1).

    `bridgeness` divides by the reachable pairs and `crossing_share` by the total
    crossing mass; the two agree unless some path crosses the boundary twice.
    The endpoint shares are `endpoint_profile` values: the fraction of C2 that
    follows the target and the fraction of C1 the source follows.
    """
    source: str
    target: str
    raw_mass: float
    bridgeness: float
    bridgeness_ratio: float
    crossing_share: float = 0.0
    target_followed_by_share: float = 0.0
    source_following_share: float = 0.0


@dataclass
class BridgenessReport:
    """Boundary edges for information flow c_source -> c_dest, highest ratio first."""
    c_source: int
    c_dest: int
    rows: List[BridgeEdge] = field(default_factory=list)
    n_boundary_edges: int = 0
    n_reachable_pairs: int = 0
    n_unreachable_pairs: int = 0
    total_crossing_mass: float = 0.0

    @property
    def empty(self) -> bool:
        return self.n_reachable_pairs == 0


def _check_community(partition: Partition, community: int) -> None:
    if not 0 <= community < partition.n_communities:
        raise ParameterError(f"community {community} outside 0..{partition.n_communities - 1}")


def shortest_path_mass(indptr: np.ndarray, indices: np.ndarray, sources: np.ndarray,
                       is_target: np.ndarray) -> Tuple[np.ndarray, int]:
    """Per-edge (CSR position) share of all source -> target shortest paths, and the reachable pair count."""
    n = len(indptr) - 1
    edge_mass = np.zeros(len(indices))
    reachable = 0
    for source in sources:
        sigma = np.zeros(n)
        distance = np.full(n, -1, dtype=np.int64)
        sigma[source] = 1.0
        distance[source] = 0
        predecessors: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        order = []
        queue = deque([source])
        while queue:
            v = queue.popleft()
            order.append(v)
            for position in range(indptr[v], indptr[v + 1]):
                w = indices[position]
                if distance[w] < 0:
                    distance[w] = distance[v] + 1
                    queue.append(w)
                if distance[w] == distance[v] + 1:
                    sigma[w] += sigma[v]
                    predecessors[w].append((v, position))

        delta = np.zeros(n)
        for w in reversed(order):
            target_mass = 1.0 if is_target[w] and w != source else 0.0
            if target_mass:
                reachable += 1
            coefficient = (target_mass + delta[w]) / sigma[w]
            for v, position in predecessors[w]:
                share = sigma[v] * coefficient
                edge_mass[position] += share
                delta[v] += share
    return edge_mass, reachable


def edge_bridgeness(g: DirectedGraph, partition: Partition, c_source_info: int,
                    c_dest_info: int) -> BridgenessReport:
    """Bridgeness and bridgeness ratio of the boundary edges for information flow C1 -> C2."""
    validate_partition(partition, g.n_nodes)
    _check_community(partition, c_source_info)
    _check_community(partition, c_dest_info)
    if c_source_info == c_dest_info:
        raise ParameterError("bridgeness needs two different communities")

    c1 = partition.members(c_source_info)
    c2 = partition.members(c_dest_info)
    nodes = np.concatenate([c1, c2])
    sub = g.adjacency[nodes][:, nodes].tocsr()
    sub.sort_indices()
    in_c1 = np.zeros(len(nodes), dtype=bool)
    in_c1[:len(c1)] = True

    # paths start in C2 (local indices after C1)
    edge_mass, reachable = shortest_path_mass(sub.indptr, sub.indices,
                                              np.arange(len(c1), len(nodes)), in_c1)
    report = BridgenessReport(c_source=c_source_info, c_dest=c_dest_info,
                              n_reachable_pairs=reachable,
                              n_unreachable_pairs=len(c1) * len(c2) - reachable)

    out_count = np.diff(sub.indptr)
    tails = np.repeat(np.arange(len(nodes)), out_count)
    boundary = np.flatnonzero(~in_c1[tails] & in_c1[sub.indices])
    report.n_boundary_edges = int(len(boundary))
    if reachable == 0:
        logger.info(f"No reachable pairs for flow {c_source_info} -> {c_dest_info}")
        return report

    crossing = float(np.sum(edge_mass[boundary]))
    report.total_crossing_mass = crossing
    expected = crossing / len(boundary)
    labels = g.node_labels
    rows = []
    for position in boundary:
        source = labels[nodes[tails[position]]]
        target = labels[nodes[sub.indices[position]]]
        rows.append(BridgeEdge(
            source=source,
            target=target,
            raw_mass=float(edge_mass[position]),
            bridgeness=float(edge_mass[position] / reachable),
            bridgeness_ratio=float(edge_mass[position] / expected),
            crossing_share=float(edge_mass[position] / crossing),
            target_followed_by_share=endpoint_profile(g, partition, target, c_dest_info)[0],
            source_following_share=endpoint_profile(g, partition, source, c_source_info)[1],
        ))
    # stable sort keeps source-major edge order among equal ratios
    report.rows = sorted(rows, key=lambda row: -row.bridgeness_ratio)
    logger.info(f"Bridgeness {c_source_info} -> {c_dest_info}: {reachable} reachable pairs, "
                f"{len(boundary)} boundary edges")
    return report


def endpoint_profile(g: DirectedGraph, partition: Partition, node: str,
                     community: int) -> Tuple[float, float]:
    """(followed_by_share, following_share) of `node` with respect to one community's other members."""
    validate_partition(partition, g.n_nodes)
    _check_community(partition, community)
    index = g.index_of(node)
    members = partition.members(community)
    members = members[members != index]
    if len(members) == 0:
        return 0.0, 0.0
    followed_by = np.isin(members, g.in_neighbors(index)).sum()
    following = np.isin(members, g.out_neighbors(index)).sum()
    return float(followed_by / len(members)), float(following / len(members))
