import math

import numpy as np
import pytest

from qaoa_pf.errors import CapacityError, ParameterError
from qaoa_pf.graphs import Graph, complete_graph, generate_regular, max_cut_bruteforce
from qaoa_pf.landscape import landscape_grid, parse_prefix, read_landscape_csv
from qaoa_pf.simulator import ParameterVector, fp


def test_single_edge_closed_form_lattice():
    grid = landscape_grid(complete_graph(2), (), 4)
    assert grid.values.shape == (4, 4)
    assert grid.depth == 1
    for a, g in enumerate(grid.gammas):
        for b, beta in enumerate(grid.betas):
            assert abs(grid.values[a, b] - 0.5 * (1 + math.sin(g) * math.sin(4 * beta))) < 1e-9


def test_lattice_coordinates():
    grid = landscape_grid(complete_graph(3), (), 6)
    np.testing.assert_allclose(grid.gammas, 2 * math.pi * np.arange(6) / 6)
    np.testing.assert_allclose(grid.betas, math.pi * np.arange(6) / 6)


def test_values_match_direct_evaluation_with_prefix():
    g = generate_regular(6, 3, 1)
    prefix = ParameterVector((0.4, 1.7), (0.9, 0.2))
    grid = landscape_grid(g, prefix, 5)
    assert grid.depth == 3
    for a, gamma in enumerate(grid.gammas):
        for b, beta in enumerate(grid.betas):
            assert abs(grid.values[a, b] - fp(g, prefix.extend(gamma, beta))) < 1e-12


def test_flat_prefix_is_gammas_then_betas():
    g = generate_regular(6, 3, 1)
    a = landscape_grid(g, [0.4, 0.9], 3)
    b = landscape_grid(g, ParameterVector((0.4,), (0.9,)), 3)
    assert np.array_equal(a.values, b.values)


def test_values_bounded():
    g = generate_regular(8, 3, 5)
    grid = landscape_grid(g, [0.3, 0.6], 8)
    assert grid.values.min() >= 0.0
    assert grid.values.max() <= max_cut_bruteforce(g).c_max


def test_gamma_wraps_around():
    g = generate_regular(8, 3, 5)
    prefix = ParameterVector((0.3,), (0.6,))
    grid = landscape_grid(g, prefix, 8)
    for b, beta in enumerate(grid.betas):
        assert abs(fp(g, prefix.extend(2 * math.pi, beta)) - grid.values[0, b]) < 1e-9


def test_depth_one_grid_is_stateless():
    g = generate_regular(8, 3, 5)
    first = landscape_grid(g, (), 6).values
    landscape_grid(g, [1.0, 1.0], 6)
    assert np.array_equal(landscape_grid(g, (), 6).values, first)


def test_csv_round_trip(tmp_path):
    grid = landscape_grid(generate_regular(6, 3, 0), [0.2, 0.3], 4)
    path = tmp_path / "grid.csv"
    grid.write_csv(path)
    header = path.read_text().splitlines()[0].split(",")
    assert header[0] == "gamma\\beta" and len(header) == 5
    gammas, betas, values = read_landscape_csv(path)
    assert np.array_equal(gammas, grid.gammas)
    assert np.array_equal(betas, grid.betas)
    assert np.array_equal(values, grid.values)


@pytest.mark.parametrize("r", [0, 1])
def test_resolution_guard(r):
    with pytest.raises(ParameterError):
        landscape_grid(complete_graph(2), (), r)


def test_odd_prefix_rejected():
    with pytest.raises(ParameterError):
        landscape_grid(complete_graph(2), [0.1, 0.2, 0.3], 4)


def test_capacity():
    with pytest.raises(CapacityError):
        landscape_grid(Graph(25, ((0, 1),)), (), 2)


def test_parse_prefix():
    assert parse_prefix("") == ParameterVector()
    assert parse_prefix("0.1, 0.2,0.3,0.4") == ParameterVector((0.1, 0.2), (0.3, 0.4))
    with pytest.raises(ParameterError):
        parse_prefix("0.1,0.2,0.3")
