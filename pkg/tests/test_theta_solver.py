import random

import pytest

from coloring_model import (
    FoldColoring,
    InputError,
    build_theta,
    cycle_graph,
    lists_from_json,
    load_json,
    make_graph,
    theta_from_json,
    verify_coloring,
)
from theta_solver import (
    ORACLE,
    THEOREM_GUIDED,
    SplitInvariantError,
    pull_back_coloring,
    solve,
    solve_even_theta,
    split_odd_theta,
    theorem_family,
)


def random_lists(rng, theta, size, palette):
    return {v: frozenset(rng.sample(range(palette), size)) for v in theta.vertices}


@pytest.mark.parametrize("lengths,family", [
    ((4, 4, 4), "even"),
    ((4, 6, 8), "even"),
    ((3, 3, 5), "odd"),
    ((2, 2, 2, 2), "theta4"),
    ((2, 2, 2, 6), "theta4"),
    ((2, 4, 4), None),
    ((2, 3, 3), None),
    ((2, 2, 2, 3), None),
    ((2, 2, 4, 4), None),
])
def test_theorem_family(lengths, family):
    assert theorem_family(build_theta(lengths)) == family


def test_solves_fixture_even_theta(fixture_path):
    theta = theta_from_json(load_json(fixture_path("theta_444.json")))
    lists = lists_from_json(load_json(fixture_path("lists_theta_444_m1.json")))
    phi = solve(theta, lists, 1)
    assert phi.certificate == THEOREM_GUIDED
    assert verify_coloring(theta.graph, lists, 1, phi) == []


def test_solves_fixture_theta4(fixture_path):
    theta = theta_from_json(load_json(fixture_path("theta_2224.json")))
    lists = lists_from_json(load_json(fixture_path("lists_theta_2224_m2.json")))
    phi = solve(theta, lists, 2)
    assert phi.certificate == THEOREM_GUIDED
    assert verify_coloring(theta.graph, lists, 2, phi) == []


@pytest.mark.parametrize("lengths,m", [
    ((4, 4, 4), 1),
    ((4, 4, 6), 2),
    ((3, 3, 3), 1),
    ((5, 3, 3), 2),
    ((2, 2, 2, 2), 1),
    ((2, 2, 2, 4), 2),
])
def test_random_lists_take_the_constructive_route(lengths, m):
    rng = random.Random(sum(lengths) * 10 + m)
    theta = build_theta(lengths)
    for _ in range(15):
        lists = random_lists(rng, theta, 2 * m + 1, 2 * m + 4)
        phi = solve(theta, lists, m)
        assert phi.certificate == THEOREM_GUIDED
        assert verify_coloring(theta.graph, lists, m, phi) == []


def test_other_thetas_fall_back_to_oracle():
    rng = random.Random(4)
    theta = build_theta((2, 3, 3))
    lists = random_lists(rng, theta, 3, 5)
    phi = solve(theta, lists, 1)
    assert phi.certificate == ORACLE
    assert verify_coloring(theta.graph, lists, 1, phi) == []


def test_plain_graph_input_keeps_caller_names():
    theta = build_theta((4, 4, 4))
    names = {v: f"w{i}" for i, v in enumerate(theta.vertices)}
    g = make_graph(names.values(), [(names[a], names[b]) for a, b in theta.graph.edges])
    rng = random.Random(8)
    lists = {names[v]: frozenset(rng.sample(range(6), 3)) for v in theta.vertices}

    phi = solve(g, lists, 1)
    assert set(phi.assignment) == set(names.values())
    assert verify_coloring(g, lists, 1, phi) == []


def test_solve_rejects_bad_input():
    with pytest.raises(InputError):
        solve(cycle_graph(5), {f"v{j}": frozenset({0, 1, 2}) for j in range(5)}, 1)
    theta = build_theta((4, 4, 4))
    with pytest.raises(InputError):
        solve(theta, {"u": frozenset({0, 1})}, 1)
    with pytest.raises(InputError):
        solve(theta, {v: frozenset({0, 1, 2}) for v in theta.vertices}, 0)


def test_even_solver_checks_list_sizes():
    theta = build_theta((4, 4, 4))
    lists = {v: frozenset({0, 1}) for v in theta.vertices}
    with pytest.raises(InputError):
        solve_even_theta(theta, lists, 1)
    with pytest.raises(InputError):
        solve_even_theta(build_theta((3, 3, 3)), {v: frozenset({0, 1, 2}) for v in build_theta((3, 3, 3)).vertices}, 1)


def test_short_lists_go_to_oracle_and_may_fail():
    theta = build_theta((4, 4, 4))
    lists = {v: frozenset({0}) for v in theta.vertices}
    assert solve(theta, lists, 1) is None


# ----- vertex splitting -----

def test_split_odd_theta_layout():
    theta = build_theta((3, 3, 5))
    lists = {v: frozenset({0, 1, 2}) for v in theta.vertices}
    lists["u"] = frozenset({0, 1})
    split, split_lists, smap = split_odd_theta(theta, lists, 1)
    assert split.lengths == (4, 4, 6)
    assert smap.split_vertices == ("p0_1", "p1_1", "p2_1")
    assert smap.vertex_map["p2_4"] == "p2_5"
    assert smap.vertex_map["v"] == "v"
    assert split_lists["p1_1"] == split_lists["u"] == frozenset({0, 1})
    assert smap.to_json()["lengths_after"] == [4, 4, 6]


@pytest.mark.parametrize("lengths", [(4, 4, 4), (1, 3, 3), (3, 3, 3, 3)])
def test_split_rejects_wrong_shapes(lengths):
    theta = build_theta(lengths)
    lists = {v: frozenset({0, 1}) for v in theta.vertices}
    with pytest.raises(InputError):
        split_odd_theta(theta, lists, 1)


def test_split_needs_trimmed_hub():
    theta = build_theta((3, 3, 3))
    lists = {v: frozenset({0, 1, 2}) for v in theta.vertices}
    with pytest.raises(InputError):
        split_odd_theta(theta, lists, 1)


def test_pull_back_checks_forced_colours():
    theta = build_theta((3, 3, 3))
    lists = {v: frozenset({0, 1, 2}) for v in theta.vertices}
    lists["u"] = frozenset({0, 1})
    split, _, smap = split_odd_theta(theta, lists, 1)
    bad = {v: frozenset({0}) for v in split.vertices}
    with pytest.raises(SplitInvariantError):
        pull_back_coloring(FoldColoring(1, bad), smap)


def test_pull_back_maps_names():
    theta = build_theta((3, 3, 3))
    lists = {v: frozenset({0, 1, 2}) for v in theta.vertices}
    lists["u"] = frozenset({0, 1})
    split, _, smap = split_odd_theta(theta, lists, 1)
    assignment = {v: frozenset({2}) for v in split.vertices}
    assignment["u"] = frozenset({0})
    for x in smap.split_vertices:
        assignment[x] = frozenset({1})
    phi = pull_back_coloring(FoldColoring(1, assignment), smap)
    assert phi.assignment["u"] == frozenset({1})
    assert set(phi.assignment) == set(theta.vertices)
