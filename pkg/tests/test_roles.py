import networkx as nx
import numpy as np
import pytest
from scipy.sparse.csgraph import minimum_spanning_tree as scipy_mst

from conftest import random_digraph
from flowscope.errors import DimensionError, ParameterError
from flowscope.graph import DirectedGraph, Partition
from flowscope.roles import (
    SimilarityMatrix,
    extract_roles,
    leading_eigenvalue,
    minimum_spanning_tree,
    profile_matrix,
    rbs_similarity,
    rmst,
    role_summaries,
)
from flowscope.roles.rmst import path_maximum
from flowscope.stability import time_grid, variation_of_information
from flowscope.synthetic import layered_flow_graph


def directed_cycle(n: int) -> DirectedGraph:
    return DirectedGraph.from_edges([f"c{i}" for i in range(n)], [(i, (i + 1) % n, 1.0) for i in range(n)])


def chain(n: int) -> DirectedGraph:
    return DirectedGraph.from_edges([f"p{i}" for i in range(n)], [(i, i + 1, 1.0) for i in range(n - 1)])


def sources_to_sinks(n: int) -> DirectedGraph:
    """n pure sources, each following all n pure sinks."""
    labels = [f"src{i}" for i in range(n)] + [f"snk{i}" for i in range(n)]
    return DirectedGraph.from_edges(labels, [(i, n + j, 1.0) for i in range(n) for j in range(n)])


def similarity_from_distances(distance) -> SimilarityMatrix:
    return SimilarityMatrix(Y=1.0 - np.asarray(distance, dtype=float))


def brute_force_rmst(distance: np.ndarray, tree, gamma: float, k: int):
    """Relaxed edge set with mlink found by walking the tree path of every pair."""
    tree_graph = nx.Graph()
    tree_graph.add_nodes_from(range(len(distance)))
    tree_graph.add_edges_from(tree)
    knn = np.sort(distance + np.diag(np.full(len(distance), np.inf)), axis=1)[:, k - 1]
    edges = set(tree)
    for i in range(len(distance)):
        for j in range(i + 1, len(distance)):
            path = nx.shortest_path(tree_graph, i, j)
            mlink = max(distance[a, b] for a, b in zip(path, path[1:]))
            if distance[i, j] < mlink + gamma * (knn[i] + knn[j]):
                edges.add((i, j))
    return sorted(edges)


class TestProfileMatrix:
    def test_cycle_rows_identical(self):
        profiles = profile_matrix(directed_cycle(6), k_max=4)
        assert np.allclose(profiles.X, profiles.X[0], atol=1e-15)
        assert profiles.lambda1 == pytest.approx(1.0)
        assert not profiles.lambda_fallback

    def test_two_node_chain(self):
        profiles = profile_matrix(chain(2), rbs_alpha=0.9, k_max=2)
        assert profiles.lambda_fallback
        assert profiles.lambda1 == 1.0
        assert profiles.outgoing[0].tolist() == [0.9, 0.0]
        assert profiles.incoming[0].tolist() == [0.0, 0.0]
        assert profiles.incoming[1].tolist() == [0.9, 0.0]

    def test_matches_dense_matrix_powers(self):
        g = random_digraph(8, 0.35, seed=14)
        profiles = profile_matrix(g, rbs_alpha=0.7, k_max=5)
        a = g.to_dense()
        scale = 0.7 / profiles.lambda1
        for k in range(1, 6):
            power = np.linalg.matrix_power(scale * a, k)
            assert np.allclose(profiles.outgoing[:, k - 1], power @ np.ones(8), atol=1e-10)
            assert np.allclose(profiles.incoming[:, k - 1], power.T @ np.ones(8), atol=1e-10)
        assert profiles.X.min() >= 0.0
        assert np.all(np.isfinite(profiles.X))

    def test_leading_eigenvalue(self):
        dense = np.random.default_rng(3).uniform(0.5, 2.0, size=(6, 6))
        g = DirectedGraph.from_dense(dense)
        lam, fallback = leading_eigenvalue(g.adjacency)
        assert not fallback
        assert lam == pytest.approx(max(abs(np.linalg.eigvals(dense))), rel=1e-8)

    def test_dag_falls_back_to_one(self):
        lam, fallback = leading_eigenvalue(chain(4).adjacency)
        assert (lam, fallback) == (1.0, True)

    def test_auto_k_max(self):
        assert profile_matrix(directed_cycle(5), rbs_alpha=0.9).k_max == 133
        # paths die out after two steps
        assert profile_matrix(chain(3)).k_max == 3

    @pytest.mark.parametrize("kwargs", [{"rbs_alpha": 0.0}, {"rbs_alpha": 1.0}, {"k_max": 0}])
    def test_arguments(self, kwargs):
        with pytest.raises(ParameterError):
            profile_matrix(directed_cycle(3), **kwargs)

    def test_graph_without_edges(self):
        with pytest.raises(ParameterError):
            profile_matrix(DirectedGraph(["a", "b"]))

    def test_permutation_equivariance(self):
        g = random_digraph(12, 0.3, seed=15, weighted=True)
        order = np.random.default_rng(2).permutation(12)
        permuted = DirectedGraph.from_dense(g.to_dense()[np.ix_(order, order)])
        original = profile_matrix(g, k_max=6)
        relabelled = profile_matrix(permuted, k_max=6)
        assert np.allclose(relabelled.X, original.X[order], rtol=1e-9, atol=1e-12)
        y, y_perm = rbs_similarity(original).Y, rbs_similarity(relabelled).Y
        assert np.allclose(y_perm, y[np.ix_(order, order)], atol=1e-12)
        edges = {tuple(sorted((int(order[i]), int(order[j])))) for i, j in rmst(rbs_similarity(relabelled)).edges}
        assert edges == set(rmst(rbs_similarity(original)).edges)


class TestRbsSimilarity:
    def test_identical_rows(self):
        y = rbs_similarity(np.array([[1.0, 2.0], [2.0, 4.0], [0.5, 1.0]])).Y
        assert np.allclose(y, 1.0, atol=1e-12)

    def test_source_and_sink_are_orthogonal(self):
        y = rbs_similarity(profile_matrix(chain(2), k_max=2)).Y
        assert y[0, 1] == 0.0

    def test_matches_normalized_dot_products(self):
        x = np.random.default_rng(8).uniform(0.0, 1.0, size=(6, 8))
        expected = np.array([[xi @ xj / np.linalg.norm(xi) / np.linalg.norm(xj) for xj in x] for xi in x])
        y = rbs_similarity(x).Y
        assert np.allclose(y, expected, atol=1e-12)
        assert np.array_equal(y, y.T)
        assert y.min() >= 0.0 and y.max() <= 1.0

    def test_zero_row(self):
        y = rbs_similarity(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]])).Y
        assert y[0].tolist() == [1.0, 0.0, 0.0]

    def test_small_alpha_depends_on_degree_pairs(self, two_clique_graph):
        # a2, a3, b2, b3 all have in/out degree (2, 2)
        y = rbs_similarity(profile_matrix(two_clique_graph, rbs_alpha=0.01, k_max=1)).Y
        for i in (1, 2, 4, 5):
            for j in (1, 2, 4, 5):
                assert y[i, j] == pytest.approx(1.0, abs=1e-12)
        assert y[0, 3] < 1.0


class TestRmst:
    def test_two_nodes(self):
        graph = rmst(similarity_from_distances([[0, 0.4], [0.4, 0]]))
        assert graph.edges == [(0, 1)]
        assert graph.mst_edges == [(0, 1)]

    def test_three_point_rule(self):
        distance = [[0, 0.1, 0.9], [0.1, 0, 0.1], [0.9, 0.1, 0]]
        graph = rmst(similarity_from_distances(distance), gamma=0.5, k_neighbor=1)
        assert graph.mst_edges == [(0, 1), (1, 2)]
        assert graph.edges == [(0, 1), (1, 2)]
        # a large enough gamma admits the long edge
        assert (0, 2) in rmst(similarity_from_distances(distance), gamma=5.0).edges

    @pytest.mark.parametrize("seed, gamma, k", [(5, 0.5, 1), (21, 0.1, 2), (33, 1.0, 3), (47, 0.25, 5)])
    def test_matches_path_scan_reference(self, seed, gamma, k):
        x = np.random.default_rng(seed).uniform(0.0, 1.0, size=(30, 6))
        similarity = rbs_similarity(x)
        distance = similarity.distances()
        tree = sorted(tuple(sorted((int(i), int(j)))) for i, j in zip(*scipy_mst(distance).nonzero()))
        graph = rmst(similarity, gamma=gamma, k_neighbor=k)
        assert graph.mst_edges == tree
        assert graph.edges == brute_force_rmst(distance, tree, gamma, k)

    def test_path_maximum(self):
        distance = np.array([[0, 1, 5, 5], [1, 0, 3, 5], [5, 3, 0, 2], [5, 5, 2, 0]], dtype=float)
        mlink = path_maximum(distance, [(0, 1), (1, 2), (2, 3)])
        assert mlink[0, 3] == 3.0
        assert mlink[2, 3] == 2.0
        assert mlink[1, 0] == 1.0

    def test_ties_broken_lexicographically(self):
        distance = np.full((4, 4), 0.5)
        np.fill_diagonal(distance, 0.0)
        assert minimum_spanning_tree(distance) == [(0, 1), (0, 2), (0, 3)]

    def test_connected_superset_of_mst(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            n = int(rng.integers(2, 41))
            similarity = rbs_similarity(rng.uniform(0.0, 1.0, size=(n, 4)))
            graph = rmst(similarity, gamma=rng.uniform(0.05, 1.0), k_neighbor=int(rng.integers(1, n)))
            distance = similarity.distances()
            total = sum(distance[i, j] for i, j in graph.mst_edges)
            assert total == pytest.approx(scipy_mst(distance).sum(), abs=1e-12)
            assert set(graph.mst_edges) <= set(graph.edges)
            assert graph.n_edges >= n - 1
            undirected = nx.Graph(graph.edges)
            undirected.add_nodes_from(range(n))
            assert nx.is_connected(undirected)

    def test_to_graph_is_symmetric(self):
        graph = rmst(similarity_from_distances([[0, 0.1, 0.9], [0.1, 0, 0.1], [0.9, 0.1, 0]]))
        dense = graph.to_graph(["a", "b", "c"]).to_dense()
        assert np.array_equal(dense, dense.T)
        assert dense.sum() == 4
        with pytest.raises(DimensionError):
            graph.to_graph(["a"])

    def test_arguments(self):
        good = similarity_from_distances([[0, 0.2, 0.3], [0.2, 0, 0.4], [0.3, 0.4, 0]])
        with pytest.raises(ParameterError):
            rmst(good, gamma=-0.1)
        with pytest.raises(ParameterError):
            rmst(good, gamma=0.0)
        with pytest.raises(ParameterError):
            rmst(good, k_neighbor=3)
        with pytest.raises(ParameterError):
            rmst(SimilarityMatrix(Y=np.array([[1.0, 0.2], [0.5, 1.0]])))
        with pytest.raises(ParameterError):
            rmst(SimilarityMatrix(Y=np.ones((1, 1))))
        with pytest.raises(DimensionError):
            rmst(SimilarityMatrix(Y=np.ones((2, 3))))


class TestExtractRoles:
    def test_directed_cycle_is_one_role(self):
        g = directed_cycle(7)
        report = extract_roles(g, rmst(rbs_similarity(profile_matrix(g))))
        assert report.n_roles == 1
        assert report.window is None
        assert report.sweep == []
        assert report.flow_matrix.tolist() == [[7.0]]
        assert report.roles[0].mean_in_degree == report.roles[0].mean_out_degree == 1.0

    def test_node_sets_must_match(self):
        g = directed_cycle(4)
        with pytest.raises(DimensionError):
            extract_roles(g, rmst(rbs_similarity(profile_matrix(directed_cycle(5)))))

    def test_role_summaries(self):
        g = sources_to_sinks(3)
        summaries = role_summaries(g, Partition([0, 0, 0, 1, 1, 1]))
        assert [(s.n_members, s.mean_in_degree, s.mean_out_degree) for s in summaries] == [
            (3, 0.0, 3.0), (3, 3.0, 0.0)]

    @pytest.mark.slow
    def test_sources_and_sinks(self):
        g = sources_to_sinks(30)
        report = extract_roles(g, rmst(rbs_similarity(profile_matrix(g))),
                               times=time_grid(0.1, 100, 25), n_runs=20, workers=2)
        planted = Partition([0] * 30 + [1] * 30)
        assert report.n_roles == 2
        assert variation_of_information(report.partition, planted) == 0.0
        by_out = sorted(report.roles, key=lambda role: role.mean_out_degree)
        assert by_out[0].mean_in_degree > by_out[0].mean_out_degree
        assert by_out[1].mean_out_degree > by_out[1].mean_in_degree
        assert report.summary()["n_roles"] == 2

    @pytest.mark.slow
    def test_three_layers(self):
        planted = layered_flow_graph([20, 20, 20], 0.5, seed=7)
        g = planted.graph
        report = extract_roles(g, rmst(rbs_similarity(profile_matrix(g))),
                               times=time_grid(0.1, 100, 25), n_runs=20, workers=2)
        assert report.n_roles == 3
        assert report.partition == planted.planted
        mediator = report.partition.assignment[25]
        stats = report.roles[mediator]
        assert abs(stats.mean_in_degree - stats.mean_out_degree) < 0.25 * stats.mean_out_degree
