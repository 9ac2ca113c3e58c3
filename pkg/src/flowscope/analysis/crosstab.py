#!/usr/bin/env python3
"""
Partition Cross-Tabulation

Contingency table of two partitions over their common nodes, with a
chi-square test of each row against the column marginals.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from scipy.stats import chi2

from ..errors import DimensionError, ParameterError
from ..graph.partition import Partition

logger = logging.getLogger(__name__)

SIGNIFICANT_P = 0.001
MIN_EXPECTED = 1.0


@dataclass(frozen=True)
class RowTest:
    chi2: float
    dof: int
    p_value: float
    unreliable: bool

    @property
    def significant(self) -> bool:
        return self.p_value < SIGNIFICANT_P

    @property
    def marker(self) -> str:
        return "***" if self.significant else ""


@dataclass(frozen=True)
class CrossTab:
    """Rows: communities of A; columns: communities of B; counts over common nodes."""
    counts: np.ndarray
    expected: np.ndarray
    rows: List[RowTest]
    common_labels: List[str]

    @property
    def n_common(self) -> int:
        return int(self.counts.sum())

    def flags(self) -> np.ndarray:
        """'+', '-' or '=' per cell against its expected count."""
        flags = np.full(self.counts.shape, "=", dtype="<U1")
        flags[self.counts > self.expected] = "+"
        flags[self.counts < self.expected] = "-"
        return flags


def row_chi_square(observed: np.ndarray, column_share: np.ndarray) -> RowTest:
    """Σ (obs - exp)² / exp over columns with a nonzero marginal; exp = share x row total."""
    active = column_share > 0
    dof = int(active.sum()) - 1
    total = observed.sum()
    expected = column_share[active] * total
    if total == 0 or dof <= 0:
        return RowTest(chi2=0.0, dof=max(dof, 0), p_value=1.0, unreliable=True)
    statistic = float(np.sum((observed[active] - expected) ** 2 / expected))
    return RowTest(chi2=statistic, dof=dof, p_value=float(chi2.sf(statistic, dof)),
                   unreliable=bool(np.any(expected < MIN_EXPECTED)))


def cross_tabulate(partition_a: Partition, partition_b: Partition,
                   labels_a: Sequence[str], labels_b: Sequence[str]) -> CrossTab:
    """Cross-tab of A against B over the labels present in both, in A's label order."""
    if len(labels_a) != partition_a.n_nodes or len(labels_b) != partition_b.n_nodes:
        raise DimensionError("labels and partition differ in length")
    position_b = {label: i for i, label in enumerate(labels_b)}
    common = [(i, position_b[label]) for i, label in enumerate(labels_a) if label in position_b]
    if not common:
        raise ParameterError("the two partitions share no nodes")

    rows_a = partition_a.assignment[[i for i, _ in common]]
    columns_b = partition_b.assignment[[j for _, j in common]]
    counts = np.zeros((partition_a.n_communities, partition_b.n_communities), dtype=np.int64)
    np.add.at(counts, (rows_a, columns_b), 1)

    column_share = counts.sum(axis=0) / counts.sum()
    expected = np.outer(counts.sum(axis=1), column_share)
    tests = [row_chi_square(counts[row].astype(np.float64), column_share)
             for row in range(counts.shape[0])]
    logger.info(f"Cross-tab {counts.shape[0]}x{counts.shape[1]} over {len(common)} common nodes")
    return CrossTab(counts=counts, expected=expected, rows=tests,
                    common_labels=[labels_a[i] for i, _ in common])
