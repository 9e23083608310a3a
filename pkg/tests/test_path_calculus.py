import random
from itertools import combinations, product

import pytest

from coloring_model import InputError
from path_calculus import (
    CriterionNotApplicable,
    as_seq,
    color_path,
    damage,
    damage_closed_form,
    hat_sets,
    path_colorable,
    reduce_lists,
    reduced_slp_identity,
    residual_sequence,
    slp_identity_check,
)


def random_path(rng, n, sizes, palette=6):
    return as_seq(rng.sample(range(palette), size) for size in sizes(n))


def exhaustive_colorable(seq, m):
    choices = [list(combinations(sorted(L), m)) for L in seq]
    for pick in product(*choices):
        if all(not set(pick[i]) & set(pick[i + 1]) for i in range(len(pick) - 1)):
            return True
    return False


# ----- residues -----

def test_residual_sequence():
    p = residual_sequence(as_seq([{1, 2, 5}, {2, 3, 4}, {2, 3, 5}]))
    assert p.X == (frozenset({1, 2, 5}), frozenset({3, 4}), frozenset({2, 5}))
    assert p.slp == 7


def test_residual_sequence_rejects_empty_path():
    with pytest.raises(InputError):
        residual_sequence(())


def test_hat_sets_example():
    p = hat_sets(as_seq([{1, 2, 5}, {2, 3, 4}, {2, 3, 5}]))
    assert p.lam == {2}
    assert p.hat1 == {1, 5}
    assert p.hatn == {5}
    assert p.to_json()["lambda"] == [2]


def test_hat_sets_single_vertex():
    p = hat_sets(as_seq([{4, 7}]))
    assert p.lam == {4, 7}
    assert p.hat1 == p.hatn == frozenset()


def test_hat_sets_rejects_even_paths():
    with pytest.raises(InputError):
        hat_sets(as_seq([{1}, {2}]))


def test_reduce_lists():
    seq = as_seq([{1, 2}, {2, 3}, {3, 4}])
    assert reduce_lists(seq, {1}, {4}) == (frozenset({2}), frozenset({2, 3}), frozenset({3}))
    assert reduce_lists(as_seq([{1, 2, 3}]), {1}, {3}) == (frozenset({2}),)


# ----- damage -----

def test_damage_small_example():
    seq = as_seq([{1}, {2}, {1}])
    assert damage(seq, {1}, {1}) == 2
    assert damage(seq, set(), set()) == 0


def test_damage_definition_matches_closed_form():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.choice([1, 3, 5, 7])
        seq = random_path(rng, n, lambda n: [rng.randint(1, 4) for _ in range(n)])
        S = set(rng.sample(range(6), rng.randint(0, 3)))
        T = set(rng.sample(range(6), rng.randint(0, 3)))
        value = damage(seq, S, T)
        assert value == damage_closed_form(hat_sets(seq), S, T)
        lhs, rhs = reduced_slp_identity(seq, S, T)
        assert lhs == rhs


def test_damage_is_additive_over_disjoint_pairs():
    rng = random.Random(19)
    palette = range(8)
    for _ in range(300):
        n = rng.choice([1, 3, 5, 7])
        seq = random_path(rng, n, lambda n: [rng.randint(1, 5) for _ in range(n)], palette=8)
        S1 = set(rng.sample(palette, rng.randint(0, 3)))
        T1 = set(rng.sample(palette, rng.randint(0, 3)))
        free = [c for c in palette if c not in S1 | T1]
        S2 = set(rng.sample(free, rng.randint(0, min(2, len(free)))))
        T2 = set(rng.sample(free, rng.randint(0, min(2, len(free)))))
        assert damage(seq, S1 | S2, T1 | T2) == damage(seq, S1, T1) + damage(seq, S2, T2)


def test_single_couple_damage_is_zero_one_or_two():
    rng = random.Random(29)
    for _ in range(300):
        n = rng.choice([1, 3, 5])
        seq = random_path(rng, n, lambda n: [rng.randint(1, 4) for _ in range(n)])
        c, c2 = rng.randrange(6), rng.randrange(6)
        value = damage(seq, {c}, {c2})
        assert value in (0, 1, 2)
        if n == 1:
            assert (value == 2) == (c != c2 and {c, c2} <= seq[0])


def test_closed_form_needs_hat_profile():
    with pytest.raises(InputError):
        damage_closed_form(residual_sequence(as_seq([{1}])), {1}, set())


# ----- slp identities -----

def test_slp_identities_hold_on_uniform_interior():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.choice([3, 5, 7])
        l1, l2 = rng.randint(1, 4), rng.randint(1, 4)
        seq = random_path(rng, n, lambda n: [l1] + [l2] * (n - 1), palette=7)
        report = slp_identity_check(seq)
        assert report["hypotheses_ok"]
        assert report["ok"], report["checks"]
        printed_eq, printed_bound = report["adjudication"]
        assert printed_eq["ok"] == printed_eq["expected"]
        if printed_bound["expected"]:
            assert printed_bound["ok"]


@pytest.mark.parametrize("lists", [
    [{1}, {2}],
    [{1, 2}],
    [{1}, {1, 2}, {3}],
])
def test_slp_identity_check_reports_hypotheses(lists):
    report = slp_identity_check(as_seq(lists))
    assert not report["hypotheses_ok"]
    assert report["hypothesis_issues"]
    assert report["checks"] == []


# ----- colourability -----

def test_color_path_alternates():
    assert color_path(as_seq([{1, 2}] * 3), 1) == (frozenset({1}), frozenset({2}), frozenset({1}))


def test_color_path_single_vertex():
    assert color_path(as_seq([{1, 2, 3}]), 2) == (frozenset({1, 2}),)


def test_color_path_detects_failure():
    seq = as_seq([{1}, {1, 2}, {2}])
    assert not path_colorable(seq, 1)
    assert color_path(seq, 1) is None


def test_criterion_hypotheses():
    with pytest.raises(CriterionNotApplicable):
        path_colorable(as_seq([{1}, {2}, {3}]), 1)
    with pytest.raises(InputError):
        path_colorable(as_seq([{1}]), 0)


def test_criterion_agrees_with_exhaustive_search():
    rng = random.Random(9)
    for _ in range(300):
        m = rng.randint(1, 2)
        n = rng.choice([1, 2, 3, 4, 5])
        sizes = lambda n: [m if i in (0, n - 1) else 2 * m for i in range(n)]
        seq = random_path(rng, n, sizes, palette=5)
        expected = exhaustive_colorable(seq, m)
        assert path_colorable(seq, m) == expected
        result = color_path(seq, m)
        assert (result is not None) == expected
