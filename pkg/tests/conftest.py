import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from flowscope.graph import DirectedGraph  # noqa: E402

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "data", "fixtures")


def two_cliques(size: int = 3) -> DirectedGraph:
    """Two complete digraphs a*, b* joined by the single edge b1 -> a1."""
    a = [f"a{i}" for i in range(1, size + 1)]
    b = [f"b{i}" for i in range(1, size + 1)]
    labels = a + b
    edges = []
    for block in (range(size), range(size, 2 * size)):
        edges += [(i, j, 1.0) for i in block for j in block if i != j]
    edges.append((size, 0, 1.0))
    return DirectedGraph.from_edges(labels, edges)


def random_digraph(n: int, p: float, seed: int, weighted: bool = False) -> DirectedGraph:
    rng = np.random.default_rng(seed)
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    weights = rng.uniform(0.5, 2.0, size=(n, n)) if weighted else np.ones((n, n))
    return DirectedGraph.from_dense(np.where(mask, weights, 0.0))


@pytest.fixture
def two_clique_graph():
    return two_cliques()


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def small_digraphs():
    """Random digraphs with dangling nodes and isolated vertices among them."""
    return [random_digraph(n, p, seed) for seed, (n, p) in
            enumerate([(5, 0.3), (8, 0.2), (12, 0.15), (20, 0.1), (30, 0.08)])]
