import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaoa_pf.errors import CapacityError, DegenerateInstanceError, GenerationError, ParameterError
from qaoa_pf.graphs import (
    Graph,
    complete_graph,
    cut_value,
    cut_values_of_indices,
    cycle_graph,
    generate_erdos_renyi,
    generate_regular,
    iter_simple_graphs,
    max_cut_bruteforce,
    read_graph,
    write_graph,
)


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True))
    return Graph(n, tuple(chosen))


def full_enumeration(graph):
    """Max cut over all 2^n assignments, no symmetry shortcut."""
    return max(cut_value(graph, bits) for bits in itertools.product((0, 1), repeat=graph.n))


class TestGraph:
    def test_normalises_edge_order(self):
        g = Graph(3, ((2, 0), (1, 0)))
        assert g.edges == ((0, 1), (0, 2))
        assert g == Graph(3, ((0, 1), (0, 2)))

    @pytest.mark.parametrize(
        "n, edges",
        [(3, ((0, 0),)), (3, ((0, 3),)), (3, ((0, 1), (1, 0))), (0, ()), (3, ((-1, 1),))],
    )
    def test_rejects_invalid(self, n, edges):
        with pytest.raises(ParameterError):
            Graph(n, edges)

    def test_text_round_trip(self, tmp_path):
        g = generate_regular(8, 3, seed=4)
        path = tmp_path / "g.txt"
        write_graph(g, path)
        assert path.read_text().splitlines()[0] == "8 12"
        assert read_graph(path) == g

    def test_text_header_mismatch(self):
        with pytest.raises(ParameterError):
            Graph.from_text("3 2\n0 1\n")


class TestRegular:
    def test_k4_is_the_only_cubic_graph_on_four_vertices(self):
        for seed in range(5):
            assert generate_regular(4, 3, seed) == complete_graph(4)

    def test_deterministic(self):
        assert generate_regular(6, 3, 7).edges == generate_regular(6, 3, 7).edges

    def test_degree_census_n8(self):
        g = generate_regular(8, 3, seed=1)
        assert np.bincount(g.edge_array().ravel(), minlength=8).tolist() == [3] * 8

    def test_degree_census_200_draws(self):
        for seed in range(200):
            n = (6, 8, 10, 12)[seed % 4]
            g = generate_regular(n, 3, seed)
            assert g.num_edges == 3 * n // 2
            assert (g.degrees() == 3).all()

    @pytest.mark.parametrize("n, d", [(5, 3), (4, 4), (3, 5), (1, 0)])
    def test_infeasible(self, n, d):
        with pytest.raises(ParameterError):
            generate_regular(n, d, 0)

    def test_retry_budget(self, monkeypatch):
        import qaoa_pf.graphs as graphs_mod

        monkeypatch.setattr(graphs_mod, "REGULAR_RETRY_BUDGET", 0)
        with pytest.raises(GenerationError):
            generate_regular(8, 3, 0)


class TestErdosRenyi:
    def test_prob_one_is_complete(self):
        g = generate_erdos_renyi(5, 1.0, seed=3)
        assert g == complete_graph(5)
        assert g.num_edges == 10

    def test_prob_zero_is_empty(self):
        assert generate_erdos_renyi(5, 0.0, seed=3).num_edges == 0

    def test_edge_count_within_four_sigma(self):
        # Binomial(45, 1/2): mean 22.5, sd 3.35
        m = generate_erdos_renyi(10, 0.5, seed=42).num_edges
        assert 10 <= m <= 35

    def test_deterministic(self):
        assert generate_erdos_renyi(9, 0.5, 11) == generate_erdos_renyi(9, 0.5, 11)

    @pytest.mark.parametrize("n, prob", [(1, 0.5), (5, -0.1), (5, 1.5)])
    def test_invalid(self, n, prob):
        with pytest.raises(ParameterError):
            generate_erdos_renyi(n, prob)


class TestCutValue:
    def test_single_edge(self):
        assert cut_value(complete_graph(2), "01") == 1

    def test_c4_alternating(self):
        assert cut_value(cycle_graph(4), "0101") == 4

    def test_triangle(self):
        assert cut_value(complete_graph(3), "011") == 2

    def test_sequence_input(self):
        assert cut_value(complete_graph(3), [0, 1, 1]) == 2

    def test_length_mismatch(self):
        with pytest.raises(ParameterError):
            cut_value(complete_graph(3), "01")

    def test_index_vectorization_matches_strings(self):
        g = generate_erdos_renyi(6, 0.5, 5)
        idx = np.arange(64)
        vals = cut_values_of_indices(g, idx)
        for i in idx:
            bits = [(int(i) >> j) & 1 for j in range(6)]
            assert vals[i] == cut_value(g, bits)

    @given(graphs(), st.data())
    def test_complement_symmetry(self, g, data):
        bits = data.draw(st.lists(st.integers(0, 1), min_size=g.n, max_size=g.n))
        assert cut_value(g, bits) == cut_value(g, [1 - b for b in bits])


class TestMaxCut:
    def test_c6(self):
        assert max_cut_bruteforce(cycle_graph(6)).c_max == 6

    def test_k4(self):
        assert max_cut_bruteforce(complete_graph(4)).c_max == 4

    def test_regular_matches_full_enumeration(self):
        g = generate_regular(8, 3, seed=1)
        sol = max_cut_bruteforce(g)
        assert sol.c_max == full_enumeration(g) == 10
        assert cut_value(g, sol.witness) == sol.c_max

    def test_empty_graph_is_degenerate(self):
        with pytest.raises(DegenerateInstanceError):
            max_cut_bruteforce(Graph(4))

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            max_cut_bruteforce(Graph(25, ((0, 1),)))

    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_properties(self, g):
        if g.num_edges == 0:
            return
        sol = max_cut_bruteforce(g)
        assert cut_value(g, sol.witness) == sol.c_max
        assert sol.c_max == full_enumeration(g)
        assert -(-g.num_edges // 2) <= sol.c_max <= g.num_edges

    @pytest.mark.parametrize("g", [cycle_graph(8), Graph(5, ((0, 3), (0, 4), (1, 3), (2, 4))), Graph(7, tuple((0, k) for k in range(1, 7)))])
    def test_bipartite_cuts_everything(self, g):
        assert max_cut_bruteforce(g).c_max == g.num_edges

    def test_simple_graph_enumeration_counts(self):
        assert sum(1 for _ in iter_simple_graphs(4)) == 64
