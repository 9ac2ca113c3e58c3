#!/usr/bin/env python3
"""
Planted-Structure Benchmark Graphs

Seeded directed stochastic block models and layered source -> mediator ->
sink graphs. Every source row draws from its own Philox stream spawned from
the seed, and edges are decided by integer comparison against
floor(p * 2^53), so the same seed gives the same graph on every platform.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence, Union

import numpy as np

from ..errors import ParameterError
from ..graph.directed_graph import DirectedGraph
from ..graph.edge_list import write_edge_list, write_partition
from ..graph.partition import Partition

logger = logging.getLogger(__name__)

RESOLUTION = 2 ** 53


@dataclass(frozen=True)
class PlantedGraph:
    """A generated graph and the partition it was built from."""
    graph: DirectedGraph
    planted: Partition
    parameters: Dict[str, object] = field(default_factory=dict)


def _threshold(p: float) -> int:
    return int(np.floor(p * RESOLUTION))


def _block_labels(sizes: Sequence[int]) -> np.ndarray:
    return np.repeat(np.arange(len(sizes)), sizes)


def _sample_edges(blocks: np.ndarray, thresholds: np.ndarray, seed: int) -> DirectedGraph:
    """Row i draws one integer per column; i -> j exists when it falls below thresholds[block i, block j]."""
    n = len(blocks)
    streams = np.random.SeedSequence(seed).spawn(n)
    sources: List[np.ndarray] = []
    targets: List[np.ndarray] = []
    for i, stream in enumerate(streams):
        draws = np.random.Generator(np.random.Philox(stream)).integers(0, RESOLUTION, size=n,
                                                                      dtype=np.int64)
        row = draws < thresholds[blocks[i], blocks]
        row[i] = False
        hits = np.flatnonzero(row)
        sources.append(np.full(len(hits), i, dtype=np.int64))
        targets.append(hits)
    labels = [f"v{i}" for i in range(n)]
    if n == 0:
        return DirectedGraph(labels)
    return DirectedGraph(labels, np.concatenate(sources), np.concatenate(targets))


def directed_sbm(block_sizes: Sequence[int], p_in: float, p_out: float, seed: int = 0) -> PlantedGraph:
    """Directed SBM; ordered pairs within a block connect with p_in, across blocks with p_out."""
    if not block_sizes or any(size < 1 for size in block_sizes):
        raise ParameterError("block sizes must all be >= 1")
    if not 0.0 <= p_out < p_in <= 1.0:
        raise ParameterError(f"need 0 <= p_out < p_in <= 1, got p_in={p_in}, p_out={p_out}")

    k = len(block_sizes)
    thresholds = np.full((k, k), _threshold(p_out), dtype=np.int64)
    np.fill_diagonal(thresholds, _threshold(p_in))
    blocks = _block_labels(block_sizes)
    graph = _sample_edges(blocks, thresholds, seed)
    logger.info(f"Directed SBM: blocks={list(block_sizes)}, p_in={p_in}, p_out={p_out}, "
                f"seed={seed}, edges={graph.n_edges}")
    return PlantedGraph(graph=graph, planted=Partition(blocks), parameters={
        "generator": "directed_sbm", "block_sizes": list(block_sizes),
        "p_in": p_in, "p_out": p_out, "seed": seed,
    })


def layered_flow_graph(layer_sizes: Sequence[int], p_forward: float, seed: int = 0) -> PlantedGraph:
    """Edges only from layer l to layer l + 1, each with probability p_forward."""
    if len(layer_sizes) < 2:
        raise ParameterError("a layered graph needs at least 2 layers")
    if any(size < 1 for size in layer_sizes):
        raise ParameterError("layer sizes must all be >= 1")
    if not 0.0 < p_forward <= 1.0:
        raise ParameterError(f"p_forward must lie in (0, 1], got {p_forward}")

    k = len(layer_sizes)
    thresholds = np.zeros((k, k), dtype=np.int64)
    thresholds[np.arange(k - 1), np.arange(1, k)] = _threshold(p_forward)
    layers = _block_labels(layer_sizes)
    graph = _sample_edges(layers, thresholds, seed)
    logger.info(f"Layered flow graph: layers={list(layer_sizes)}, p_forward={p_forward}, "
                f"seed={seed}, edges={graph.n_edges}")
    return PlantedGraph(graph=graph, planted=Partition(layers), parameters={
        "generator": "layered_flow_graph", "layer_sizes": list(layer_sizes),
        "p_forward": p_forward, "seed": seed,
    })


def write_planted(planted: PlantedGraph, edge_path: Union[str, Path],
                  partition_path: Union[str, Path]) -> None:
    """Unweighted edge list plus the sidecar planted partition."""
    write_edge_list(planted.graph, edge_path, weighted=False)
    write_partition(partition_path, planted.graph.node_labels, planted.planted)
