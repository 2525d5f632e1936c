import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from center import solver
from center.oracle import brute_force_center, brute_force_mdst
from center.solver import (
    absolute_center, boundary_eval, candidate_pairs, edge_center, edge_skip_bound, gamma_star, mdst,
    pairs_lower_bound, prune_and_sort, upper_boundary_breakpoints,
)
from core.errors import EnumerationLimitError
from graph.generators import all_connected_graphs, path_graph, random_connected, star_graph
from graph.model import EdgePoint, Vertex
from graph.paths import all_pairs_distances, diameter_radius, separation, tree_diameter


def pairs_of(g, e):
    return {(p.a, p.b) for p in candidate_pairs(g, all_pairs_distances(g), e)}


def test_candidate_pairs(path3, single_edge, triangle):
    assert pairs_of(path3, (1, 2)) == {(1, 3), (0, 2), (2, 0)}
    assert pairs_of(single_edge, (0, 1)) == {(0, 4), (4, 0)}
    assert pairs_of(triangle, (0, 1)) == {(0, 1), (1, 0), (1, 1)}


@pytest.mark.parametrize("pairs, expected", [
    ([(1, 3), (0, 2), (2, 0)], ((2, 0), (1, 3))),
    ([(0, 4), (4, 0)], ((4, 0), (0, 4))),
    ([(1, 1), (1, 1), (0, 1)], ((1, 1),)),
])
def test_prune_and_sort(pairs, expected):
    assert prune_and_sort(pairs).pairs == expected


@pytest.mark.parametrize("pairs, omega, expected", [
    (((4, 0), (0, 4)), 4, (2, 2)),
    (((2, 0), (1, 3)), 2, (0.5, 1.5)),
    (((1, 1),), 1, (0, 1)),
])
def test_gamma_star(pairs, omega, expected):
    alpha, value = gamma_star(prune_and_sort(pairs), omega)
    assert alpha == pytest.approx(expected[0])
    assert value == pytest.approx(expected[1])


def test_gamma_star_agrees_with_dense_sampling():
    boundary = prune_and_sort([(2, 0), (1, 3)])
    sampled = min(boundary_eval(boundary, 2, k * 1e-4) for k in range(20001))
    assert gamma_star(boundary, 2)[1] == pytest.approx(sampled, abs=1e-4)


@pytest.mark.parametrize("alpha, expected", [(0, 4), (2, 2)])
def test_boundary_eval_single_edge(alpha, expected):
    assert boundary_eval([(0, 4), (4, 0)], 4, alpha) == expected


def test_boundary_eval_matches_separation(path3):
    dt = all_pairs_distances(path3)
    value = boundary_eval(pairs_of(path3, (1, 2)), 2, 1.0)
    assert value == 2.0
    assert value == separation(path3, dt, EdgePoint(1, 2, 1.0))


def test_breakpoints_span_the_edge():
    points = upper_boundary_breakpoints(prune_and_sort([(2, 0), (1, 3)]), 2)
    assert points[0] == (0.0, 2)
    assert points[-1] == (2, 3)
    assert (0.5, 1.5) in points


@pytest.mark.parametrize("fixture, location, sep", [
    ("single_edge", EdgePoint(0, 1, 2.0), 2),
    ("path3", EdgePoint(1, 2, 0.5), 1.5),
    ("triangle", Vertex(0), 1),
    ("square", EdgePoint(0, 1, 0.5), 1.5),
])
def test_absolute_center(request, fixture, location, sep):
    g = request.getfixturevalue(fixture)
    result = absolute_center(g)
    assert result.location == location
    assert result.separation == pytest.approx(sep)


def test_edge_center_of_the_path(path3):
    result = edge_center(path3, all_pairs_distances(path3), (1, 2))
    assert result.location == EdgePoint(1, 2, 0.5)
    assert result.separation == 1.5


def test_single_vertex_center():
    g = path_graph(1, [])
    assert absolute_center(g).separation == 0.0
    tree, diameter = mdst(g)
    assert tree.edge_list() == []
    assert diameter == 0.0


@pytest.mark.parametrize("fixture, edges, diameter", [
    ("triangle", [(0, 1), (0, 2)], 2),
    ("square", [(0, 1), (0, 3), (1, 2)], 3),
    ("path3", [(0, 1), (1, 2)], 3),
])
def test_mdst(request, fixture, edges, diameter):
    g = request.getfixturevalue(fixture)
    tree, value = mdst(g)
    assert tree.edge_list() == edges
    assert value == diameter


def test_skip_bound_examples(path3):
    dt = all_pairs_distances(path3)
    assert pairs_lower_bound(zip(dt.d[0], dt.d[1])) == 2
    assert edge_skip_bound(dt, (0, 1), 1.5)
    assert not edge_skip_bound(dt, (0, 1), math.inf)


def test_scan_stops_once_the_best_reaches_half_the_diameter(monkeypatch):
    g = star_graph(4)
    calls = []
    original = solver.edge_skip_bound
    monkeypatch.setattr(solver, "edge_skip_bound", lambda *args: calls.append(args) or original(*args))
    result = absolute_center(g, use_skip_bound=True)
    assert result.location == Vertex(0)
    assert result.separation == 1.0
    assert result.edges_skipped == 2
    assert calls == []
    assert absolute_center(g).edges_skipped == 0


def test_skip_bound_reports_skipped_edges():
    g = random_connected(9, 16, 4, seed=3)
    plain = absolute_center(g)
    pruned = absolute_center(g, use_skip_bound=True)
    assert pruned.separation == pytest.approx(plain.separation)
    assert plain.edges_skipped == 0
    assert 0 <= pruned.edges_skipped <= g.m


def test_brute_force_center_examples(single_edge, path3, triangle):
    assert brute_force_center(single_edge, all_pairs_distances(single_edge), 0.1).separation == pytest.approx(2.0)
    assert brute_force_center(path3, all_pairs_distances(path3), 1e-3).separation == pytest.approx(1.5, abs=1e-3)
    assert brute_force_center(triangle, all_pairs_distances(triangle), 0.25).separation == 1.0
    with pytest.raises(ValueError):
        brute_force_center(triangle, all_pairs_distances(triangle), 0)


def test_brute_force_mdst_examples(triangle, square, k4):
    assert brute_force_mdst(triangle) == 2
    assert brute_force_mdst(square) == 3
    assert brute_force_mdst(k4) == 2


def test_brute_force_mdst_guard():
    with pytest.raises(EnumerationLimitError):
        brute_force_mdst(random_connected(10, 12, 1, seed=0))


@st.composite
def small_graphs(draw, max_n=7, max_m=12):
    n = draw(st.integers(min_value=2, max_value=max_n))
    m = draw(st.integers(min_value=n - 1, max_value=min(n * (n - 1) // 2, max_m)))
    wmax = draw(st.integers(min_value=1, max_value=5))
    seed = draw(st.integers(min_value=0, max_value=100_000))
    return random_connected(n, m, wmax, seed)


@settings(max_examples=60, deadline=None)
@given(g=small_graphs())
def test_center_matches_half_step_grid(g):
    # with integer weights every boundary crossing sits on a multiple of 1/2
    dt = all_pairs_distances(g)
    exact = absolute_center(g, dt)
    assert exact.separation == pytest.approx(brute_force_center(g, dt, 0.5).separation, abs=1e-9)
    assert separation(g, dt, exact.location) == pytest.approx(exact.separation, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(g=small_graphs())
def test_skip_bound_never_changes_the_optimum(g):
    assert absolute_center(g, use_skip_bound=True).separation == pytest.approx(absolute_center(g).separation)


@settings(max_examples=40, deadline=None)
@given(g=small_graphs(max_n=6, max_m=9))
def test_mdst_matches_exhaustive_search(g):
    tree, diameter = mdst(g)
    assert len(tree.edges) == g.n - 1
    assert tree_diameter(g, tree) == pytest.approx(diameter)
    assert diameter == pytest.approx(brute_force_mdst(g), abs=1e-9)
    assert diameter == pytest.approx(2 * absolute_center(g).separation, abs=1e-9)


@pytest.mark.slow
@pytest.mark.parametrize("n, weights", [(3, (1, 2, 3)), (4, (1, 2)), (5, (1,))])
def test_mdst_on_every_small_graph(n, weights):
    for g in all_connected_graphs(n, weights):
        dt = all_pairs_distances(g)
        center = absolute_center(g, dt)
        _, diameter = mdst(g)
        d_graph, _, _ = diameter_radius(g, dt)
        assert diameter == pytest.approx(brute_force_mdst(g), abs=1e-9)
        assert d_graph / 2 <= center.separation + 1e-9
        assert d_graph <= diameter + 1e-9 <= 2 * center.separation + 2e-9


def seeded_graphs(count, max_n=12, wmax=6):
    for seed in range(count):
        rng = random.Random(seed)
        n = rng.randint(2, max_n)
        m = rng.randint(n - 1, min(n * (n - 1) // 2, 3 * n))
        yield random_connected(n, m, wmax, seed=seed)


@pytest.mark.slow
def test_gamma_star_is_the_grid_minimum_on_every_edge():
    # integer weights put every breakpoint on the half-integer grid
    for g in seeded_graphs(200):
        dt = all_pairs_distances(g)
        for e in g.edges():
            omega = g.weight(*e)
            boundary = prune_and_sort(candidate_pairs(g, dt, e))
            alpha, value = gamma_star(boundary, omega)
            grid = [k / 2 for k in range(int(2 * omega) + 1)]
            assert 0 <= alpha <= omega
            assert value == pytest.approx(boundary_eval(boundary, omega, alpha), abs=1e-9)
            assert value == pytest.approx(min(boundary_eval(boundary, omega, x) for x in grid), abs=1e-9)
