"""Directed graphs, partitions and edge-list files."""

from .directed_graph import (
    DegreeVectors,
    DirectedGraph,
    degree_vectors,
    induced_subgraph,
    largest_component,
    weakly_connected_components,
)
from .edge_list import load_edge_list, load_partition, write_edge_list, write_partition
from .partition import Partition, restrict_partition, validate_partition

__all__ = [
    "DegreeVectors",
    "DirectedGraph",
    "Partition",
    "degree_vectors",
    "induced_subgraph",
    "largest_component",
    "load_edge_list",
    "load_partition",
    "restrict_partition",
    "validate_partition",
    "weakly_connected_components",
    "write_edge_list",
    "write_partition",
]
