import random
from itertools import combinations, product

import pytest

from coloring_model import (
    InputError,
    SearchBudgetExceeded,
    build_theta,
    cycle_graph,
    lists_key,
    make_graph,
    make_lists,
    path_graph,
    verify_coloring,
)
from oracle_search import (
    SamplerConfig,
    check_choosable,
    find_lb_coloring,
    find_witness,
    iter_canonical_assignments,
)


def brute_force_colorable(graph, lists, b):
    """Independent scan of the whole product space."""
    vertices = list(graph.nodes)
    choices = [list(combinations(sorted(lists[v]), b)) for v in vertices]
    for pick in product(*choices):
        phi = dict(zip(vertices, map(set, pick)))
        if all(not (phi[a] & phi[c]) for a, c in graph.edges):
            return True
    return False


def test_single_shared_colour_on_an_edge():
    g = make_graph(["a", "b"], [["a", "b"]])
    assert find_lb_coloring(g, make_lists({"a": [1], "b": [1]}), 1) is None


def test_even_cycle_alternates():
    g = cycle_graph(4)
    lists = {v: frozenset({1, 2}) for v in g.nodes}
    phi = find_lb_coloring(g, lists, 1)
    assert phi is not None and phi.certificate == "oracle"
    assert verify_coloring(g, lists, 1, phi) == []


def test_bipartite_theta_with_three_colours():
    theta = build_theta((3, 3, 3))
    lists = {v: frozenset({1, 2, 3}) for v in theta.vertices}
    phi = find_lb_coloring(theta.graph, lists, 1)
    assert verify_coloring(theta.graph, lists, 1, phi) == []


def test_short_lists_give_none_without_search():
    g = path_graph(2)
    assert find_lb_coloring(g, {"v1": frozenset({1}), "v2": frozenset({1, 2})}, 2) is None


def test_agrees_with_product_space_scan():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(2, 6)
        names = [f"x{i}" for i in range(n)]
        edges = [e for e in combinations(names, 2) if rng.random() < 0.5]
        g = make_graph(names, edges)
        b = rng.randint(1, 2)
        lists = {v: frozenset(rng.sample(range(5), rng.randint(b, b + 2))) for v in names}
        phi = find_lb_coloring(g, lists, b)
        assert (phi is not None) == brute_force_colorable(g, lists, b)
        if phi is not None:
            assert verify_coloring(g, lists, b, phi) == []


def test_node_budget_is_a_distinct_failure():
    g = path_graph(3)
    lists = {v: frozenset({0, 1}) for v in g.nodes}
    with pytest.raises(SearchBudgetExceeded):
        find_lb_coloring(g, lists, 1, node_budget=1)


def test_rejects_non_positive_fold():
    with pytest.raises(InputError):
        find_lb_coloring(path_graph(1), {"v1": frozenset({0})}, 0)


# ----- assignment streams -----

@pytest.mark.parametrize("n,classes", [(2, 2), (3, 5), (4, 15)])
def test_singleton_lists_are_counted_up_to_renaming(n, classes):
    # 1-lists up to renaming are the set partitions of the vertices (Bell numbers)
    g = path_graph(n)
    assert len(list(iter_canonical_assignments(g, 1, n))) == classes


def test_stream_has_no_duplicates_and_respects_sizes():
    g = path_graph(3)
    sizes = {"v1": 1, "v2": 2, "v3": 1}
    seen = set()
    for lists in iter_canonical_assignments(g, sizes, 4):
        key = tuple(tuple(sorted(lists[v])) for v in g.nodes)
        assert key not in seen
        seen.add(key)
        assert {v: len(cs) for v, cs in lists.items()} == sizes
        assert max(max(cs) for cs in lists.values()) < 4


# ----- choosability -----

def test_path_is_2_choosable_over_palette():
    report = check_choosable(path_graph(3), 2, 1, SamplerConfig(palette_size=6))
    assert report["verdict"] == "choosable_over_palette"
    assert report["witness"] is None
    assert report["checked"] > 0
    assert "palette" in report["caveat"]


def test_theta_2222_has_a_witness():
    theta = build_theta((2, 2, 2, 2))
    report = check_choosable(theta.graph, 2, 1, SamplerConfig(palette_size=4))
    assert report["verdict"] == "witness"
    witness = make_lists(report["witness"])
    assert find_lb_coloring(theta.graph, witness, 1) is None


def test_exhaustive_witness_is_the_least_bad_assignment():
    g = build_theta((2, 2, 2, 2)).graph
    report = check_choosable(g, 2, 1, SamplerConfig(palette_size=4))
    bad = [
        lists_key(g, lists)
        for lists in iter_canonical_assignments(g, 2, 4)
        if find_lb_coloring(g, lists, 1) is None
    ]
    assert len(bad) >= 2
    assert lists_key(g, make_lists(report["witness"])) == min(bad)
    assert report["checked"] == len(list(iter_canonical_assignments(g, 2, 4)))


def test_random_mode_records_seed():
    report = check_choosable(cycle_graph(3), 3, 1, SamplerConfig(mode="random", sample_count=200, seed=5))
    assert report["verdict"] == "no_counterexample"
    assert report["seed"] == 5
    assert report["checked"] == 200


def test_random_mode_is_reproducible():
    cfg = SamplerConfig(mode="random", sample_count=40, seed=3, palette_size=4)
    g = build_theta((2, 2, 2, 2)).graph
    assert check_choosable(g, 2, 1, cfg) == check_choosable(g, 2, 1, cfg)


def test_exhaustive_caps():
    with pytest.raises(SearchBudgetExceeded):
        check_choosable(path_graph(3), 2, 1, SamplerConfig(palette_size=13))
    with pytest.raises(SearchBudgetExceeded):
        check_choosable(path_graph(16), 2, 1, SamplerConfig(palette_size=4))
    with pytest.raises(InputError):
        check_choosable(path_graph(3), 3, 1, SamplerConfig(palette_size=2))
    with pytest.raises(InputError):
        check_choosable(path_graph(3), 2, 1, SamplerConfig(mode="sat"))


def test_find_witness_on_triangle():
    g = cycle_graph(3)
    lists = find_witness(g, 2, 1, max_palette=3)
    assert lists is not None
    assert find_lb_coloring(g, lists, 1) is None
    assert find_witness(cycle_graph(4), 2, 1, max_palette=4) is None
