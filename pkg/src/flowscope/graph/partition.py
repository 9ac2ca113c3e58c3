"""
Node -> community assignments.

A Partition is the map form of the N x c indicator matrix H: row i of H has
its single 1 in column assignment[i].
"""

from dataclasses import dataclass
from typing import Dict, Sequence

import numpy as np
import scipy.sparse as sp

from ..errors import DimensionError, NodeLookupError, PartitionError


@dataclass(frozen=True, eq=False)
class Partition:
    """Community index per node, every index in 0..c-1 used at least once."""
    assignment: np.ndarray

    def __post_init__(self):
        assignment = np.array(self.assignment, dtype=np.int64, copy=True).ravel()
        if assignment.size and assignment.min() < 0:
            raise PartitionError("community indices must be nonnegative")
        if assignment.size:
            used = np.bincount(assignment)
            if np.any(used == 0):
                missing = int(np.flatnonzero(used == 0)[0])
                raise PartitionError(f"community index {missing} is unused")
        assignment.flags.writeable = False
        object.__setattr__(self, "assignment", assignment)

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        """Relabel arbitrary hashable community labels to 0..c-1 by first appearance."""
        mapping: Dict = {}
        indices = []
        for label in labels:
            if label not in mapping:
                mapping[label] = len(mapping)
            indices.append(mapping[label])
        return cls(np.asarray(indices, dtype=np.int64))

    @classmethod
    def all_in_one(cls, n: int) -> "Partition":
        return cls(np.zeros(n, dtype=np.int64))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(np.arange(n, dtype=np.int64))

    @property
    def n_nodes(self) -> int:
        return int(self.assignment.size)

    @property
    def n_communities(self) -> int:
        return int(self.assignment.max()) + 1 if self.assignment.size else 0

    c = n_communities

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.n_communities)

    def members(self, community: int) -> np.ndarray:
        if not 0 <= community < self.n_communities:
            raise PartitionError(f"community {community} outside 0..{self.n_communities - 1}")
        return np.flatnonzero(self.assignment == community)

    def indicator_matrix(self) -> sp.csr_matrix:
        """The N x c indicator matrix H."""
        n = self.n_nodes
        return sp.csr_matrix((np.ones(n), (np.arange(n), self.assignment)),
                             shape=(n, self.n_communities))

    def canonical(self) -> "Partition":
        """Same grouping with indices renumbered by first appearance."""
        return Partition.from_labels(self.assignment.tolist())

    def same_grouping(self, other: "Partition") -> bool:
        if self.n_nodes != other.n_nodes:
            return False
        return bool(np.array_equal(self.canonical().assignment, other.canonical().assignment))

    def ranked_by_size(self) -> "Partition":
        """Renumber communities by size, largest first (ties: earliest member first)."""
        sizes = self.sizes()
        first = np.full(self.n_communities, self.n_nodes, dtype=np.int64)
        np.minimum.at(first, self.assignment, np.arange(self.n_nodes))
        order = sorted(range(self.n_communities), key=lambda c: (-sizes[c], first[c]))
        rank = np.empty(self.n_communities, dtype=np.int64)
        rank[order] = np.arange(self.n_communities)
        return Partition(rank[self.assignment])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.same_grouping(other)

    __hash__ = None

    def __len__(self) -> int:
        return self.n_nodes

    def __repr__(self) -> str:
        return f"Partition(N={self.n_nodes}, c={self.n_communities})"


def validate_partition(partition: Partition, n_nodes: int) -> None:
    if partition.n_nodes != n_nodes:
        raise PartitionError(f"partition covers {partition.n_nodes} nodes, graph has {n_nodes}")


def restrict_partition(node_labels: Sequence[str], partition: Partition,
                       keep: Sequence[str]) -> Partition:
    """The partition induced on the nodes listed in `keep`."""
    if len(node_labels) != partition.n_nodes:
        raise DimensionError("labels and partition differ in length")
    position = {label: i for i, label in enumerate(node_labels)}
    try:
        assignment = [int(partition.assignment[position[label]]) for label in keep]
    except KeyError as exc:
        raise NodeLookupError(f"unknown node label {exc.args[0]!r}") from None
    # indices survive when every community keeps a member
    if assignment and set(assignment) == set(range(partition.n_communities)):
        return Partition(assignment)
    return Partition.from_labels(assignment)
