#!/usr/bin/env python3
"""
Directed Graph Core

Weighted sparse directed graph with stable node labels, degree vectors,
weakly connected components and induced subgraphs.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from ..errors import NodeLookupError, ParameterError

logger = logging.getLogger(__name__)


def _freeze(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


class DirectedGraph:
    """Immutable weighted directed graph; the adjacency matrix A with A[i, j] = weight(i -> j)."""

    def __init__(self, node_labels: Sequence[str], sources: Sequence[int] = (),
                 targets: Sequence[int] = (), weights: Optional[Sequence[float]] = None):
        labels = tuple(str(label) for label in node_labels)
        index: Dict[str, int] = {}
        for i, label in enumerate(labels):
            if label in index:
                raise ParameterError(f"duplicate node label {label!r}")
            index[label] = i

        n = len(labels)
        rows = np.asarray(sources, dtype=np.int64)
        cols = np.asarray(targets, dtype=np.int64)
        if weights is None:
            data = np.ones(len(rows), dtype=np.float64)
        else:
            data = np.asarray(weights, dtype=np.float64)
        if not (len(rows) == len(cols) == len(data)):
            raise ParameterError("sources, targets and weights must have equal length")
        if len(rows) and (rows.min() < 0 or cols.min() < 0 or rows.max() >= n or cols.max() >= n):
            raise ParameterError("edge endpoint outside 0..N-1")
        if len(data) and (not np.all(np.isfinite(data)) or data.min() <= 0):
            raise ParameterError("edge weights must be finite and > 0")

        # duplicate (source, target) rows are summed
        adjacency = sp.coo_matrix((data, (rows, cols)), shape=(n, n)).tocsr()
        adjacency.sum_duplicates()
        adjacency.sort_indices()

        self._labels = labels
        self._index = index
        self._adjacency = adjacency
        self._in_adjacency = adjacency.T.tocsr()
        self._in_adjacency.sort_indices()

    @classmethod
    def from_edges(cls, node_labels: Sequence[str],
                   edges: Iterable[Tuple[int, int, float]]) -> "DirectedGraph":
        """Build a graph from (source index, target index, weight) triples."""
        edge_list = list(edges)
        if not edge_list:
            return cls(node_labels)
        sources, targets, weights = zip(*edge_list)
        return cls(node_labels, sources, targets, weights)

    @classmethod
    def from_dense(cls, matrix, node_labels: Optional[Sequence[str]] = None) -> "DirectedGraph":
        """Build a graph from a dense adjacency matrix; zero entries are absent edges."""
        dense = np.asarray(matrix, dtype=np.float64)
        if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
            raise ParameterError("adjacency matrix must be square")
        if node_labels is None:
            node_labels = [f"v{i}" for i in range(dense.shape[0])]
        rows, cols = np.nonzero(dense)
        return cls(node_labels, rows, cols, dense[rows, cols])

    # --- basic accessors -------------------------------------------------

    @property
    def node_labels(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def n_nodes(self) -> int:
        return len(self._labels)

    @property
    def n_edges(self) -> int:
        return int(self._adjacency.nnz)

    @property
    def adjacency(self) -> sp.csr_matrix:
        """Row access: out-edges of each node."""
        return self._adjacency

    @property
    def in_adjacency(self) -> sp.csr_matrix:
        """Row access on the transpose: in-edges of each node."""
        return self._in_adjacency

    @property
    def total_weight(self) -> float:
        return float(self._adjacency.data.sum())

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise NodeLookupError(f"unknown node label {label!r}") from None

    def out_neighbors(self, i: int) -> np.ndarray:
        start, end = self._adjacency.indptr[i], self._adjacency.indptr[i + 1]
        return self._adjacency.indices[start:end]

    def in_neighbors(self, i: int) -> np.ndarray:
        start, end = self._in_adjacency.indptr[i], self._in_adjacency.indptr[i + 1]
        return self._in_adjacency.indices[start:end]

    def weight(self, source: str, target: str) -> float:
        """Weight of source -> target, 0.0 when the edge is absent."""
        return float(self._adjacency[self.index_of(source), self.index_of(target)])

    def edges(self) -> List[Tuple[int, int, float]]:
        """All edges in row-major (source, target) order."""
        coo = self._adjacency.tocoo()
        return [(int(s), int(t), float(w)) for s, t, w in zip(coo.row, coo.col, coo.data)]

    def to_dense(self) -> np.ndarray:
        return self._adjacency.toarray()

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        if self._labels != other._labels:
            return False
        a, b = self._adjacency, other._adjacency
        return (np.array_equal(a.indptr, b.indptr) and np.array_equal(a.indices, b.indices)
                and np.array_equal(a.data, b.data))

    __hash__ = None

    def __repr__(self) -> str:
        return f"DirectedGraph(N={self.n_nodes}, E={self.n_edges})"


@dataclass(frozen=True)
class DegreeVectors:
    """Weighted degrees: out_degree = A·1 (row sums), in_degree = Aᵀ·1 (column sums)."""
    in_degree: np.ndarray
    out_degree: np.ndarray

    @property
    def dangling(self) -> np.ndarray:
        return self.out_degree == 0


def degree_vectors(g: DirectedGraph) -> DegreeVectors:
    out_degree = np.asarray(g.adjacency.sum(axis=1)).ravel()
    in_degree = np.asarray(g.adjacency.sum(axis=0)).ravel()
    return DegreeVectors(in_degree=_freeze(in_degree), out_degree=_freeze(out_degree))


def weakly_connected_components(g: DirectedGraph) -> List[frozenset]:
    """Node-label sets of the weak components, largest first (ties: earliest node first)."""
    if g.n_nodes == 0:
        return []
    n_components, labels = connected_components(g.adjacency, directed=True, connection="weak")
    members: List[List[int]] = [[] for _ in range(n_components)]
    for node, component in enumerate(labels):
        members[component].append(node)
    members.sort(key=lambda nodes: (-len(nodes), nodes[0]))
    logger.debug(f"{n_components} weak components, largest has {len(members[0])} nodes")
    return [frozenset(g.node_labels[i] for i in nodes) for nodes in members]


def induced_subgraph(g: DirectedGraph, nodes: Iterable[str]) -> DirectedGraph:
    """Edges with both endpoints in `nodes`; indices compacted in the original order."""
    keep = sorted({g.index_of(label) for label in nodes})
    keep_array = np.asarray(keep, dtype=np.int64)
    sub = g.adjacency[keep_array][:, keep_array].tocoo() if keep else sp.coo_matrix((0, 0))
    labels = [g.node_labels[i] for i in keep]
    return DirectedGraph(labels, sub.row, sub.col, sub.data)


def largest_component(g: DirectedGraph) -> Tuple[DirectedGraph, List[int]]:
    """The subgraph induced by the largest weak component plus all component sizes."""
    components = weakly_connected_components(g)
    if not components:
        return g, []
    sizes = [len(component) for component in components]
    logger.info(f"Largest weak component: {sizes[0]} of {g.n_nodes} nodes ({len(sizes)} components)")
    return induced_subgraph(g, components[0]), sizes
