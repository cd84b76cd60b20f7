import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from structured_iep import (
    Graph,
    GraphFormatError,
    graph_of_matrix,
    matrix_of_graph,
    parse_graph,
)

from conftest import G_EDGES, H_EDGES, PATH_EDGES, linked_system


class TestParseGraph:
    def test_path_on_four(self):
        g = parse_graph("n 4\n1 2\n2 3\n3 4\n")
        assert g.n == 4
        assert g.edges == PATH_EDGES

    def test_empty_graph(self):
        g = parse_graph("n 4\n")
        assert g.edges == ()

    def test_two_edge_graph(self):
        g = parse_graph("n 4\n1 3\n3 4\n")
        assert g.edges == H_EDGES

    def test_comments_and_blank_lines(self):
        g = parse_graph("# damping pattern\nn 4\n\n3 4\n# chord\n1 3\n")
        assert g.edges == H_EDGES

    def test_reversed_pairs_canonicalized(self):
        g = parse_graph("n 4\n2 1\n4 3\n")
        assert g.edges == ((1, 2), (3, 4))

    @pytest.mark.parametrize("text", [
        "n 4\n2 2\n",          # self-loop
        "n 4\n1 5\n",          # out of range
        "n 4\n0 1\n",          # out of range
        "n 4\n1 2\n2 1\n",     # duplicate
        "1 2\n",               # missing header
        "n four\n",            # bad count
    ])
    def test_rejects(self, text):
        with pytest.raises(GraphFormatError):
            parse_graph(text)


class TestMatrixOfGraph:
    def test_two_edge_pattern(self):
        g = Graph(4, H_EDGES)
        A = matrix_of_graph(g, [1.0, 2.0, 3.0, 4.0], [10.0, 20.0])
        expected = np.array([
            [1.0, 0.0, 10.0, 0.0],
            [0.0, 2.0, 0.0, 0.0],
            [10.0, 0.0, 3.0, 20.0],
            [0.0, 0.0, 20.0, 4.0],
        ])
        assert np.array_equal(A, expected)

    def test_empty_graph_gives_diagonal(self):
        d = np.array([3.0, -1.0, 7.0])
        A = matrix_of_graph(Graph(3), d, [])
        assert np.array_equal(A, np.diag(d))

    def test_tridiagonal_half_offdiagonals(self):
        A = matrix_of_graph(Graph(4, PATH_EDGES), [6.0, 14.0, 22.0, 30.0], [0.5] * 3)
        assert np.array_equal(np.diag(A), [6, 14, 22, 30])
        assert np.array_equal(np.diag(A, 1), [0.5, 0.5, 0.5])
        assert A[0, 2] == 0.0 and A[0, 3] == 0.0 and A[1, 3] == 0.0

    def test_length_mismatch_rejected(self):
        g = Graph(4, PATH_EDGES)
        with pytest.raises(ValueError):
            matrix_of_graph(g, [1.0, 2.0, 3.0], [0.5] * 3)
        with pytest.raises(ValueError):
            matrix_of_graph(g, [1.0, 2.0, 3.0, 4.0], [0.5] * 2)


class TestGraphOfMatrix:
    def test_linked_stiffness_pattern(self):
        _, D, K = linked_system([1, 1, 1, 1], [1.0, 2.0, 3.0], [1.0, 2.0, 3.0, 4.0, 5.0])
        assert graph_of_matrix(K).edges == G_EDGES
        assert graph_of_matrix(D).edges == H_EDGES

    def test_diagonal_matrix_is_empty(self):
        assert graph_of_matrix(np.diag([1.0, 2.0, 3.0])).edges == ()

    def test_asymmetry_rejected(self):
        A = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(ValueError):
            graph_of_matrix(A)

    def test_zero_tol_filters_small_entries(self):
        A = np.array([[1.0, 1e-12], [1e-12, 2.0]])
        assert graph_of_matrix(A, zero_tol=1e-10).edges == ()
        assert graph_of_matrix(A, zero_tol=0.0).edges == ((1, 2),)


@st.composite
def graphs(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    all_edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(all_edges), unique=True, max_size=len(all_edges))
                  if all_edges else st.just([]))
    return Graph(n=n, edges=tuple(chosen))


@settings(max_examples=100, deadline=None)
@given(graphs(), st.data())
def test_round_trip_with_nonzero_offdiagonals(g, data):
    diag = np.array(data.draw(st.lists(
        st.floats(-100, 100, allow_nan=False), min_size=g.n, max_size=g.n)))
    nonzero = st.one_of(st.floats(0.01, 100), st.floats(-100, -0.01))
    offdiag = np.array(data.draw(st.lists(
        nonzero, min_size=g.num_edges, max_size=g.num_edges)))
    A = matrix_of_graph(g, diag, offdiag)
    assert graph_of_matrix(A, 0.0) == g


@settings(max_examples=50, deadline=None)
@given(graphs())
def test_output_bitwise_symmetric_with_exact_zeros(g):
    rng = np.random.default_rng(g.n * 1000 + g.num_edges)
    A = matrix_of_graph(g, rng.normal(size=g.n), rng.normal(size=g.num_edges))
    assert np.array_equal(A, A.T)
    edge_set = set(g.edges)
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if (i + 1, j + 1) not in edge_set:
                assert A[i, j] == 0.0 and A[j, i] == 0.0
