#!/usr/bin/env python3
"""
Relaxed Minimum Spanning Tree

Sparsifies a similarity matrix into an undirected graph: the MST of the
cosine distances d = 1 - Y, plus every pair (i, j) with

    d_ij < mlink_ij + γ (d_i^k + d_j^k)

where mlink_ij is the largest distance on the MST path between i and j and
d_i^k is the distance from i to its k-th nearest neighbour.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DimensionError, ParameterError
from ..graph.directed_graph import DirectedGraph
from .profiles import SimilarityMatrix

logger = logging.getLogger(__name__)

DEFAULT_GAMMA = 0.5
DEFAULT_K_NEIGHBOR = 1
ZERO_DISTANCE = 1e-12

Edge = Tuple[int, int]


@dataclass(frozen=True)
class RmstGraph:
    """Undirected sparsified similarity graph; edges are (i, j) with i < j, sorted."""
    n_nodes: int
    edges: List[Edge]
    mst_edges: List[Edge]
    gamma: float
    k_neighbor: int
    max_distance: float = 0.0

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def to_graph(self, node_labels: Optional[Sequence[str]] = None) -> DirectedGraph:
        """Symmetric unweighted DirectedGraph carrying both orientations of every edge."""
        if node_labels is None:
            node_labels = [str(i) for i in range(self.n_nodes)]
        if len(node_labels) != self.n_nodes:
            raise DimensionError(f"{len(node_labels)} labels for {self.n_nodes} nodes")
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        sources = np.concatenate([edges[:, 0], edges[:, 1]])
        targets = np.concatenate([edges[:, 1], edges[:, 0]])
        return DirectedGraph(node_labels, sources, targets)


def minimum_spanning_tree(distance: np.ndarray) -> List[Edge]:
    """Prim on a dense distance matrix; ties broken by the lexicographic pair (min, max)."""
    n = distance.shape[0]
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best = distance[0].copy()
    best_from = np.zeros(n, dtype=np.int64)
    edges: List[Edge] = []

    for _ in range(n - 1):
        fringe = np.flatnonzero(~in_tree)
        fringe_best = best[fringe]
        tied = fringe[fringe_best == fringe_best.min()]
        pairs = [(min(int(best_from[v]), int(v)), max(int(best_from[v]), int(v))) for v in tied]
        edge = min(pairs)
        node = edge[0] if in_tree[edge[1]] else edge[1]
        edges.append(edge)
        in_tree[node] = True

        row = distance[node]
        closer = ~in_tree & (row < best)
        best[closer] = row[closer]
        best_from[closer] = node
        # equal distance: keep the lexicographically smaller pair
        for v in np.flatnonzero(~in_tree & (row == best) & ~closer):
            current = (min(int(best_from[v]), int(v)), max(int(best_from[v]), int(v)))
            candidate = (min(node, int(v)), max(node, int(v)))
            if candidate < current:
                best_from[v] = node
    return sorted(edges)


def path_maximum(distance: np.ndarray, tree_edges: Sequence[Edge]) -> np.ndarray:
    """mlink[i, j]: largest distance along the tree path from i to j (0 on the diagonal)."""
    n = distance.shape[0]
    mlink = np.zeros((n, n))
    # joining tree edges in increasing order, each edge is the path maximum
    # between the two components it merges
    members = {i: [i] for i in range(n)}
    root = np.arange(n)
    for i, j in sorted(tree_edges, key=lambda edge: (distance[edge], edge)):
        a, b = root[i], root[j]
        left, right = members.pop(a), members.pop(b)
        weight = distance[i, j]
        mlink[np.ix_(left, right)] = weight
        mlink[np.ix_(right, left)] = weight
        merged = left + right
        root[merged] = a
        members[a] = merged
    return mlink


def kth_neighbor_distance(distance: np.ndarray, k_neighbor: int) -> np.ndarray:
    """Distance from every node to its k-th nearest other node."""
    n = distance.shape[0]
    masked = distance.copy()
    np.fill_diagonal(masked, np.inf)
    return np.partition(masked, k_neighbor - 1, axis=1)[:, k_neighbor - 1] if n > 1 else np.zeros(n)


def rmst(similarity: SimilarityMatrix, gamma: float = DEFAULT_GAMMA,
         k_neighbor: int = DEFAULT_K_NEIGHBOR) -> RmstGraph:
    """Relaxed MST of a similarity matrix; MST edges are always kept."""
    Y = similarity.Y if isinstance(similarity, SimilarityMatrix) else np.asarray(similarity)
    n = Y.shape[0]
    if Y.ndim != 2 or Y.shape[1] != n:
        raise DimensionError(f"similarity must be square, got shape {Y.shape}")
    if not np.allclose(Y, Y.T, atol=1e-12):
        raise ParameterError("similarity matrix must be symmetric")
    if not gamma > 0:
        raise ParameterError(f"gamma must be > 0, got {gamma}")
    if n < 2:
        raise ParameterError(f"RMST needs at least two nodes, got {n}")
    if not 1 <= k_neighbor <= n - 1:
        raise ParameterError(f"k_neighbor must lie in [1, {n - 1}], got {k_neighbor}")

    distance = SimilarityMatrix(Y=np.asarray(Y, dtype=np.float64)).distances()
    # rounding noise between proportional profiles
    distance[distance < ZERO_DISTANCE] = 0.0
    tree = minimum_spanning_tree(distance)
    mlink = path_maximum(distance, tree)
    knn = kth_neighbor_distance(distance, k_neighbor)

    relaxed = distance < mlink + gamma * (knn[:, None] + knn[None, :])
    upper_i, upper_j = np.nonzero(np.triu(relaxed, k=1))
    edges = set(zip(upper_i.tolist(), upper_j.tolist()))
    edges.update(tree)
    edges = sorted(edges)
    logger.info(f"RMST: {n} nodes, {len(tree)} tree edges, {len(edges)} edges "
                f"(gamma={gamma}, k={k_neighbor})")
    return RmstGraph(n_nodes=n, edges=edges, mst_edges=tree, gamma=gamma, k_neighbor=k_neighbor,
                     max_distance=float(distance.max()))
