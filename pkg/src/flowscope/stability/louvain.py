#!/usr/bin/env python3
"""
Louvain Optimizer for Markov Stability

Greedy node moves plus aggregation on a symmetric quality matrix F with a
null-model vector π; the objective is

    Σ_C Σ_{i,j∈C} F_ij - Σ_C (Σ_{i∈C} π_i)²

which equals r(t, H) when F is the symmetrized ΠP(t). Node visit order is a
seeded shuffle per pass; equal gains go to the smallest community index.

The result is a local optimum. Moves never split a community once it is
aggregated, so even the best of many seeds can stop short of the global
optimum; this shows up more in discrete time, where P(t) is sparser.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np
import scipy.sparse as sp

from ..dynamics.transition import MarkovOperator, TimeMode
from ..graph.partition import Partition
from .quality import PiLike, QualityMatrix, StabilityScore, quality_matrix, stability_score

logger = logging.getLogger(__name__)

MIN_IMPROVEMENT = 1e-12


def _canonical_labels(communities: np.ndarray) -> np.ndarray:
    _, first_index, inverse = np.unique(communities, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first_index, kind="stable"), kind="stable")
    return order[inverse]


def _move_nodes(flow: sp.csr_matrix, null: np.ndarray,
                rng: np.random.Generator) -> Tuple[np.ndarray, bool]:
    """Local moving phase; returns community per node and whether any node moved."""
    n = flow.shape[0]
    community = np.arange(n)
    community_null = null.astype(np.float64, copy=True)
    sizes = np.ones(n, dtype=np.int64)
    indptr, indices, data = flow.indptr, flow.indices, flow.data
    moved_any = False

    while True:
        moves = 0
        for node in rng.permutation(n):
            current = community[node]
            neighbors = indices[indptr[node]:indptr[node + 1]]
            weights = data[indptr[node]:indptr[node + 1]]
            off_diagonal = neighbors != node
            candidates, inverse = np.unique(community[neighbors[off_diagonal]], return_inverse=True)
            links = np.bincount(inverse, weights=weights[off_diagonal], minlength=len(candidates))

            # take the node out of its community
            sizes[current] -= 1
            community_null[current] = community_null[current] - null[node] if sizes[current] else 0.0

            gains = 2.0 * links - 2.0 * null[node] * community_null[candidates]
            position = np.searchsorted(candidates, current)
            if position < len(candidates) and candidates[position] == current:
                current_gain = gains[position]
            else:
                current_gain = -2.0 * null[node] * community_null[current]

            # isolation in an empty community scores 0
            if sizes[current] == 0:
                empty = current
            else:
                empty = int(np.flatnonzero(sizes == 0)[0])
            options = np.append(candidates, [current, empty])
            option_gains = np.append(gains, [current_gain, 0.0])
            best_gain = option_gains.max()
            best = int(options[option_gains == best_gain].min())

            target = current
            if best_gain > current_gain + MIN_IMPROVEMENT:
                target = best
                moves += 1
            community[node] = target
            community_null[target] += null[node]
            sizes[target] += 1

        if moves == 0:
            break
        moved_any = True
    return community, moved_any


def louvain_partition(flow: sp.csr_matrix, null: np.ndarray, seed: int = 0) -> Partition:
    """Multi-level Louvain on (F, π); deterministic for a given seed."""
    rng = np.random.Generator(np.random.Philox(seed))
    flow = sp.csr_matrix(flow)
    null = np.asarray(null, dtype=np.float64)
    assignment = np.arange(flow.shape[0])

    while True:
        community, moved = _move_nodes(flow, null, rng)
        labels = _canonical_labels(community)
        assignment = labels[assignment]
        n_groups = int(labels.max()) + 1 if len(labels) else 0
        if not moved or n_groups == flow.shape[0]:
            break
        indicator = sp.csr_matrix((np.ones(len(labels)), (np.arange(len(labels)), labels)),
                                  shape=(len(labels), n_groups))
        flow = (indicator.T @ flow @ indicator).tocsr()
        flow.sort_indices()
        null = indicator.T.dot(null)
    return Partition.from_labels(assignment.tolist())


def louvain_optimize(system: MarkovOperator, pi: PiLike, t: float,
                     mode: Union[str, TimeMode] = TimeMode.CONTINUOUS, seed: int = 0,
                     quality: Optional[QualityMatrix] = None) -> StabilityScore:
    """One seeded Louvain run maximizing r(t, H); pass `quality` to reuse F across seeds."""
    if quality is None:
        quality = quality_matrix(system, pi, t, mode)
    partition = louvain_partition(quality.flow, quality.null, seed=seed)
    if quality.approximate:
        return stability_score(system, pi, partition, t, mode)
    return StabilityScore(markov_time=float(t), value=quality.score(partition), partition=partition)
