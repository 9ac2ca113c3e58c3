"""
Variation of information between partitions, normalized by log N.
"""

import itertools
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import DimensionError, ParameterError
from ..graph.partition import Partition

MAX_EXHAUSTIVE_RUNS = 50
SUBSAMPLED_PAIRS = 1000


def variation_of_information(p1: Partition, p2: Partition) -> float:
    """VI(p1, p2) = H(p1|p2) + H(p2|p1), divided by log N; lies in [0, 1]."""
    if p1.n_nodes != p2.n_nodes:
        raise DimensionError(f"partitions cover {p1.n_nodes} and {p2.n_nodes} nodes")
    n = p1.n_nodes
    if n < 2:
        raise ParameterError("variation of information needs N >= 2")

    pairs = p1.assignment * p2.n_communities + p2.assignment
    joint_keys, joint_counts = np.unique(pairs, return_counts=True)
    size1 = np.bincount(p1.assignment)[joint_keys // p2.n_communities]
    size2 = np.bincount(p2.assignment)[joint_keys % p2.n_communities]

    # every term n_ij·log(n_i/n_ij) is >= 0, so identical groupings give exactly 0
    vi = np.sum(joint_counts * (np.log(size1 / joint_counts) + np.log(size2 / joint_counts))) / n
    return float(min(1.0, max(0.0, vi / np.log(n))))


def ensemble_pairs(n_runs: int, seed: int = 0) -> List[Tuple[int, int]]:
    """All run pairs, or a fixed subsample of 1000 pairs above 50 runs."""
    all_pairs = list(itertools.combinations(range(n_runs), 2))
    if n_runs <= MAX_EXHAUSTIVE_RUNS or len(all_pairs) <= SUBSAMPLED_PAIRS:
        return all_pairs
    rng = np.random.Generator(np.random.Philox(seed))
    chosen = np.sort(rng.choice(len(all_pairs), size=SUBSAMPLED_PAIRS, replace=False))
    return [all_pairs[k] for k in chosen]


def mean_pairwise_vi(partitions: Sequence[Partition], seed: int = 0) -> float:
    """Mean normalized VI over the ensemble; 0 by convention for a single run."""
    pairs = ensemble_pairs(len(partitions), seed=seed)
    if not pairs or partitions[0].n_nodes < 2:
        return 0.0
    values = [variation_of_information(partitions[a], partitions[b]) for a, b in pairs]
    return float(np.mean(values))
