#!/usr/bin/env python3
"""
Random-Walk Operators

Teleportation-augmented directed random walk (PageRank dynamics) and the
undirected combinatorial walk, both exposed as implicit operators: only
products with blocks of vectors are ever needed, so the dense teleportation
term is kept as a rank-one correction.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np
import scipy.sparse as sp

from ..errors import ConvergenceError, ParameterError
from ..graph.directed_graph import DirectedGraph, degree_vectors
from .expm_action import expm_action

logger = logging.getLogger(__name__)

DEFAULT_TELEPORT_ALPHA = 0.85
DEFAULT_PAGERANK_TOL = 1e-12
DEFAULT_PAGERANK_MAX_ITER = 10_000
DEFAULT_MAX_DENSE_NODES = 20_000


class TimeMode(Enum):
    """How P(t) is generated from the one-step kernel M."""
    DISCRETE = "discrete"      # P(t) = M^t, t a nonnegative integer
    CONTINUOUS = "continuous"  # P(t) = exp(-t·rate·(I - M))

    @classmethod
    def parse(cls, value: Union[str, "TimeMode"]) -> "TimeMode":
        if isinstance(value, TimeMode):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ParameterError(f"mode must be 'discrete' or 'continuous', got {value!r}") from None


class MarkovOperator:
    """Common interface: a row-stochastic kernel M applied to blocks of vectors."""

    n_nodes: int
    rate: float = 1.0

    def apply(self, block: np.ndarray) -> np.ndarray:
        """M @ block."""
        raise NotImplementedError

    def apply_transpose(self, block: np.ndarray) -> np.ndarray:
        """Mᵀ @ block, i.e. the row action (blockᵀ M)ᵀ."""
        raise NotImplementedError

    def sample_next(self, node: int, rng: np.random.Generator) -> int:
        """Draw the next node of one jump of M from `node`."""
        raise NotImplementedError

    def materialize(self) -> np.ndarray:
        return self.apply(np.eye(self.n_nodes))


class TransitionSystem(MarkovOperator):
    """M(α) = α·D_out⁻¹A + [(1-α)I + α·diag(a)]·11ᵀ/N, stored as sparse part + w·1ᵀ/N."""

    def __init__(self, graph: DirectedGraph, teleport_alpha: float):
        n = graph.n_nodes
        degrees = degree_vectors(graph)
        dangling = (degrees.out_degree == 0).astype(np.float64)
        inverse_out = np.zeros(n)
        active = degrees.out_degree > 0
        inverse_out[active] = teleport_alpha / degrees.out_degree[active]

        self.graph = graph
        self.n_nodes = n
        self.teleport_alpha = float(teleport_alpha)
        self.dangling = dangling
        self.sparse_part: sp.csr_matrix = sp.diags(inverse_out).dot(graph.adjacency).tocsr()
        self.rank_one_weights = (1.0 - teleport_alpha) + teleport_alpha * dangling
        self.rate = 1.0
        self._sparse_part_t = self.sparse_part.T.tocsr()

    def apply(self, block: np.ndarray) -> np.ndarray:
        block = np.asarray(block, dtype=np.float64)
        column_sums = block.sum(axis=0)
        return self.sparse_part.dot(block) + np.multiply.outer(self.rank_one_weights, column_sums) / self.n_nodes

    def apply_transpose(self, block: np.ndarray) -> np.ndarray:
        block = np.asarray(block, dtype=np.float64)
        teleported = self.rank_one_weights.dot(block) / self.n_nodes
        return self._sparse_part_t.dot(block) + np.multiply.outer(np.ones(self.n_nodes), teleported)

    def sample_next(self, node: int, rng: np.random.Generator) -> int:
        if rng.random() < self.rank_one_weights[node]:
            return int(rng.integers(self.n_nodes))
        start, end = self.graph.adjacency.indptr[node], self.graph.adjacency.indptr[node + 1]
        neighbors = self.graph.adjacency.indices[start:end]
        weights = self.graph.adjacency.data[start:end]
        return int(neighbors[rng.choice(len(neighbors), p=weights / weights.sum())])

    def __repr__(self) -> str:
        return (f"TransitionSystem(N={self.n_nodes}, alpha={self.teleport_alpha}, "
                f"dangling={int(self.dangling.sum())})")


class CombinatorialWalk(MarkovOperator):
    """Undirected continuous-time walk with generator L = D - A and uniform stationary distribution.

    Uniformized at rate λ = max degree: exp(-tL) = exp(-tλ(I - M̃)) with the lazy
    kernel M̃ = I - L/λ. Discrete mode iterates M̃.
    """

    def __init__(self, graph: DirectedGraph):
        adjacency = graph.adjacency
        if (abs(adjacency - adjacency.T) > 1e-12).nnz:
            raise ParameterError("combinatorial walk needs a symmetric adjacency")
        self.graph = graph
        self.n_nodes = graph.n_nodes
        self.degree = np.asarray(adjacency.sum(axis=1)).ravel()
        max_degree = float(self.degree.max()) if self.n_nodes else 0.0
        self.rate = max_degree if max_degree > 0 else 1.0
        self._adjacency = adjacency
        self._stay = 1.0 - self.degree / self.rate

    def apply(self, block: np.ndarray) -> np.ndarray:
        block = np.asarray(block, dtype=np.float64)
        stay = self._stay if block.ndim == 1 else self._stay[:, None]
        return stay * block + self._adjacency.dot(block) / self.rate

    apply_transpose = apply

    def sample_next(self, node: int, rng: np.random.Generator) -> int:
        if rng.random() < self._stay[node]:
            return node
        start, end = self._adjacency.indptr[node], self._adjacency.indptr[node + 1]
        neighbors = self._adjacency.indices[start:end]
        weights = self._adjacency.data[start:end]
        return int(neighbors[rng.choice(len(neighbors), p=weights / weights.sum())])

    def __repr__(self) -> str:
        return f"CombinatorialWalk(N={self.n_nodes}, rate={self.rate})"


@dataclass(frozen=True)
class StationaryDistribution:
    """π with π = πM; for the teleportation walk the entries are the PageRank."""
    pi: np.ndarray
    residual: float
    iterations: int


def build_transition(g: DirectedGraph, teleport_alpha: float = DEFAULT_TELEPORT_ALPHA) -> TransitionSystem:
    if not 0.0 < teleport_alpha < 1.0:
        raise ParameterError(f"teleport_alpha must lie in (0, 1), got {teleport_alpha}")
    if g.n_nodes < 1:
        raise ParameterError("transition system needs at least one node")
    system = TransitionSystem(g, teleport_alpha)
    logger.debug(f"Built {system}")
    return system


def stationary_distribution(system: MarkovOperator, tol: float = DEFAULT_PAGERANK_TOL,
                            max_iter: int = DEFAULT_PAGERANK_MAX_ITER) -> StationaryDistribution:
    """Power iteration from the uniform vector until ‖π - πM‖₁ <= tol."""
    if tol <= 0:
        raise ParameterError(f"tol must be > 0, got {tol}")
    n = system.n_nodes
    pi = np.full(n, 1.0 / n)
    residual = math.inf
    for iteration in range(max_iter + 1):
        stepped = system.apply_transpose(pi)
        residual = float(np.abs(stepped - pi).sum())
        if residual <= tol:
            logger.debug(f"Stationary distribution converged after {iteration} iterations "
                         f"(residual={residual:.2e})")
            return StationaryDistribution(pi=pi, residual=residual, iterations=iteration)
        pi = stepped / stepped.sum()
    raise ConvergenceError("power iteration did not converge", residual=residual, iterations=max_iter)


def _check_time(t: float, mode: TimeMode) -> None:
    if t < 0:
        raise ParameterError(f"Markov time must be >= 0, got {t}")
    if mode is TimeMode.DISCRETE and not float(t).is_integer():
        raise ParameterError(f"discrete mode needs an integer Markov time, got {t}")


def propagate(system: MarkovOperator, block: np.ndarray, t: float,
              mode: Union[str, TimeMode] = TimeMode.CONTINUOUS) -> np.ndarray:
    """P(t) @ block without forming P(t)."""
    mode = TimeMode.parse(mode)
    _check_time(t, mode)
    if mode is TimeMode.DISCRETE:
        result = np.array(block, dtype=np.float64, copy=True)
        for _ in range(int(t)):
            result = system.apply(result)
        return result
    return expm_action(system.apply, block, t, rate=system.rate)


def transition_at_time(system: MarkovOperator, t: float,
                       mode: Union[str, TimeMode] = TimeMode.CONTINUOUS,
                       max_dense_nodes: int = DEFAULT_MAX_DENSE_NODES,
                       workers: int = 1, block_size: int = 512) -> np.ndarray:
    """Dense row-stochastic P(t), evaluated on column blocks of the identity."""
    mode = TimeMode.parse(mode)
    _check_time(t, mode)
    n = system.n_nodes
    if n > max_dense_nodes:
        raise ParameterError(f"dense P(t) requested for N={n} > max_dense_nodes={max_dense_nodes}")

    starts = list(range(0, n, block_size))

    def column_block(start: int) -> np.ndarray:
        end = min(start + block_size, n)
        identity_block = np.zeros((n, end - start))
        identity_block[np.arange(start, end), np.arange(end - start)] = 1.0
        return propagate(system, identity_block, t, mode)

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(column_block, starts))
    else:
        blocks = [column_block(start) for start in starts]
    matrix = np.hstack(blocks) if blocks else np.zeros((0, 0))
    # round-off only; entries of P(t) are nonnegative
    np.clip(matrix, 0.0, None, out=matrix)
    return matrix
