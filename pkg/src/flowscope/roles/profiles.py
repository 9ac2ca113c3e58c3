#!/usr/bin/env python3
"""
Role-Based Similarity

Profile vectors of damped in- and out-path counts of every length, and the
cosine similarity between them.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.sparse as sp

from ..errors import ParameterError
from ..graph.directed_graph import DirectedGraph

logger = logging.getLogger(__name__)

DEFAULT_RBS_ALPHA = 0.9
AUTO_K_MAX_RATIO = 1e-6
AUTO_K_MAX_LIMIT = 200
EIGEN_TOL = 1e-10
EIGEN_MAX_ITER = 5000
NILPOTENT_NORM = 1e-12


@dataclass(frozen=True)
class ProfileMatrix:
    """X = [ ((α/λ₁)Aᵀ)^k·1 for k=1..K_max | ((α/λ₁)A)^k·1 for k=1..K_max ]."""
    X: np.ndarray
    rbs_alpha: float
    lambda1: float
    k_max: int
    lambda_fallback: bool = False

    @property
    def incoming(self) -> np.ndarray:
        return self.X[:, :self.k_max]

    @property
    def outgoing(self) -> np.ndarray:
        return self.X[:, self.k_max:]


@dataclass(frozen=True)
class SimilarityMatrix:
    """Cosine similarity of profile rows; Y[i, i] = 1."""
    Y: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.Y.shape[0]

    def distances(self) -> np.ndarray:
        """Cosine distance 1 - Y, zero on the diagonal."""
        distance = np.clip(1.0 - self.Y, 0.0, None)
        np.fill_diagonal(distance, 0.0)
        return distance


def leading_eigenvalue(adjacency: sp.spmatrix, tol: float = EIGEN_TOL,
                       max_iter: int = EIGEN_MAX_ITER) -> Tuple[float, bool]:
    """|λ₁| of A by power iteration from the all-ones vector; (1.0, True) when A is nilpotent."""
    n = adjacency.shape[0]
    vector = np.ones(n) / np.sqrt(n)
    estimate = 0.0
    for iteration in range(max_iter):
        image = adjacency.dot(vector)
        norm = float(np.linalg.norm(image))
        if norm < NILPOTENT_NORM:
            logger.warning("Adjacency matrix is nilpotent (no cycles); using lambda1 = 1")
            return 1.0, True
        if abs(norm - estimate) <= tol * max(1.0, norm):
            return norm, False
        estimate = norm
        vector = image / norm
    logger.warning(f"lambda1 power iteration stopped after {max_iter} iterations at {estimate:.6g}")
    return estimate, False


def profile_matrix(g: DirectedGraph, rbs_alpha: float = DEFAULT_RBS_ALPHA,
                   k_max: Optional[int] = None) -> ProfileMatrix:
    """Profile vectors; `k_max=None` grows K until both halves decay below 1e-6 of their first column."""
    if not 0.0 < rbs_alpha < 1.0:
        raise ParameterError(f"rbs_alpha must lie in (0, 1), got {rbs_alpha}")
    if g.n_edges == 0:
        raise ParameterError("profile vectors need a graph with at least one edge")
    if k_max is not None and k_max < 1:
        raise ParameterError(f"k_max must be >= 1, got {k_max}")

    lambda1, fallback = leading_eigenvalue(g.adjacency)
    scale = rbs_alpha / lambda1
    forward = g.adjacency
    backward = g.in_adjacency

    incoming = []
    outgoing = []
    v_in = np.ones(g.n_nodes)
    v_out = np.ones(g.n_nodes)
    limit = k_max if k_max is not None else AUTO_K_MAX_LIMIT
    for k in range(1, limit + 1):
        v_in = scale * backward.dot(v_in)
        v_out = scale * forward.dot(v_out)
        incoming.append(v_in)
        outgoing.append(v_out)
        if k_max is None:
            ratio_in = np.abs(v_in).sum() / np.abs(incoming[0]).sum()
            ratio_out = np.abs(v_out).sum() / np.abs(outgoing[0]).sum()
            if max(ratio_in, ratio_out) < AUTO_K_MAX_RATIO:
                break

    X = np.column_stack(incoming + outgoing)
    used_k = len(incoming)
    logger.info(f"Profile matrix: N={g.n_nodes}, K_max={used_k}, lambda1={lambda1:.6g}, "
                f"alpha={rbs_alpha}")
    return ProfileMatrix(X=X, rbs_alpha=rbs_alpha, lambda1=lambda1, k_max=used_k,
                         lambda_fallback=fallback)


def rbs_similarity(profiles: ProfileMatrix) -> SimilarityMatrix:
    """Y_ij = x_i·x_j / (‖x_i‖‖x_j‖); zero rows are similar only to themselves."""
    X = profiles.X if isinstance(profiles, ProfileMatrix) else np.asarray(profiles, dtype=np.float64)
    norms = np.linalg.norm(X, axis=1)
    nonzero = norms > 0
    unit = np.zeros_like(X)
    unit[nonzero] = X[nonzero] / norms[nonzero, None]
    Y = unit.dot(unit.T)
    Y = 0.5 * (Y + Y.T)
    np.clip(Y, 0.0 if np.all(X >= 0) else -1.0, 1.0, out=Y)
    np.fill_diagonal(Y, 1.0)
    return SimilarityMatrix(Y=Y)
