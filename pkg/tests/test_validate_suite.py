import json
import random

import pytest

from coloring_model import InputError, build_theta
from graph_classifier import Family
from validate_suite import (
    DEFAULT_TARGETS,
    RunConfig,
    Tally,
    adversarial_lists,
    criterion_odd_cycles,
    criterion_pair_counts,
    criterion_pair_search,
    criterion_path_criterion,
    criterion_split,
    criterion_theta_solver,
    criterion_two_choosability,
    main,
    parse_only,
    run_suite,
    tau_instance,
)

SMALL_TARGETS = {
    "theorem_shapes": [
        {"lengths": [4, 4, 4], "label": "theta_4_4_4"},
        {"lengths": [3, 3, 3], "label": "theta_3_3_3"},
        {"lengths": [2, 2, 2, 2], "label": "theta_2_2_2_2"},
    ],
    "split_shapes": [{"lengths": [3, 3, 3], "label": "theta_3_3_3"}],
    "tau_shapes": [
        {"lengths": [4, 4, 4], "label": "theta_4_4_4"},
        {"lengths": [2, 2, 2, 2], "label": "theta_2_2_2_2"},
    ],
    "m_values": [1],
}

SMALL_PROFILE = {
    "path_palette": 3, "path_random": 10, "cycle_samples": 10, "theta_random": 3,
    "tau_instances": 3, "split_instances": 3, "corpus_max_vertices": 4, "corpus_sample": 10,
    "ert_palette": 4, "witness_palette": 4, "family_max_vertices": 5, "family_classify_vertices": 9,
    "edge_palette": 3, "edge_samples": 10, "count_samples": 20, "lemma_lmax": 5,
}


@pytest.fixture
def cfg():
    return RunConfig(seed=7, quick=True, workers=1, targets=SMALL_TARGETS)


def test_run_config_rejects_unknown_criteria():
    with pytest.raises(InputError):
        RunConfig(only=(0, 12), targets=SMALL_TARGETS)


def test_run_config_profile(tmp_path):
    cfg = RunConfig(quick=True, lemma_lmax=6, targets_path=str(tmp_path / "missing.json"))
    prof = cfg.profile()
    assert cfg.targets["m_values"] == DEFAULT_TARGETS["m_values"]
    assert prof["lemma_lmax"] == 6
    assert prof["family_max_vertices"] == 6
    assert RunConfig(targets=SMALL_TARGETS).profile_name == "full"


def test_targets_file_overrides_profile(tmp_path):
    path = tmp_path / "targets.json"
    path.write_text(json.dumps({"profiles": {"quick": {"cycle_samples": 3}}}), encoding="utf-8")
    cfg = RunConfig(quick=True, targets_path=str(path))
    assert cfg.profile()["cycle_samples"] == 3
    assert cfg.targets["theorem_shapes"] == DEFAULT_TARGETS["theorem_shapes"]


def test_rng_streams_are_per_criterion(cfg):
    assert cfg.rng(3).random() == cfg.rng(3).random()
    assert cfg.rng(3).random() != cfg.rng(4).random()


def test_parse_only():
    assert parse_only("4, 5,11") == (4, 5, 11)
    assert parse_only(None) == ()
    with pytest.raises(InputError):
        parse_only("4,x")


def test_tally_truncates_examples():
    tally = Tally(1, "demo", checked=9)
    for i in range(8):
        tally.fail(case=i)
    out = tally.to_json()
    assert out["failures"] == 8
    assert len(out["examples"]) == 5
    assert out["ok"] is False


@pytest.mark.parametrize("lengths,m", [((4, 4, 4), 1), ((2, 2, 2, 4), 2)])
def test_adversarial_lists_have_theorem_sizes(lengths, m):
    theta = build_theta(lengths)
    kinds = []
    for kind, lists in adversarial_lists(theta, m):
        kinds.append(kind)
        assert set(lists) == set(theta.vertices)
        assert all(len(cs) == 2 * m + 1 for cs in lists.values())
    assert kinds == ["all_equal", "disjoint", "near_equal", "hub_split"]


def test_tau_instances():
    rng = random.Random(1)
    theta4 = build_theta((2, 2, 2, 2))
    for _ in range(20):
        m, tau, lists, report = tau_instance(rng, theta4)
        assert 1 <= tau <= m
        assert report["family"] == "T"
        assert len(lists["u"]) == len(lists["v"]) == report["ell"]
    even = build_theta((4, 4, 4))
    m, tau, lists, report = tau_instance(rng, even)
    assert tau == 2 and report["family"] == "C"
    assert report["ell"] % 2 == 0
    with pytest.raises(InputError):
        tau_instance(rng, build_theta((3, 3, 3)))


# ----- criteria on small settings -----

@pytest.mark.parametrize("criterion", [
    criterion_path_criterion,
    criterion_odd_cycles,
    criterion_theta_solver,
    criterion_pair_search,
    criterion_split,
    criterion_pair_counts,
])
def test_criteria_pass_on_small_settings(cfg, criterion):
    tally = criterion(cfg, SMALL_PROFILE)
    assert tally.checked > 0
    assert tally.ok, tally.failures[:3]


def test_odd_cycle_criterion_fills_every_cell(cfg):
    tally = criterion_odd_cycles(cfg, SMALL_PROFILE)
    cells = tally.notes["cases_per_cell"]
    assert sorted(cells) == [f"k={k},b={b}" for k in (1, 2, 3) for b in (1, 2, 3)]
    assert set(cells.values()) == {SMALL_PROFILE["cycle_samples"]}
    assert tally.checked == 9 * SMALL_PROFILE["cycle_samples"]
    assert tally.ok


def test_two_choosability_criterion(cfg):
    tally = criterion_two_choosability(cfg, SMALL_PROFILE)
    assert tally.ok, tally.failures[:3]
    assert tally.notes["families_edge_checked"] == sorted(f.value for f in Family if f is not Family.NONE)
    assert tally.notes["family_members"] == 13
    assert tally.notes["members_with_witness"] == 13
    assert tally.notes["corpus_graphs"] == 4


def test_run_suite_is_deterministic(cfg):
    cfg.only = (2, 11)
    first, second = run_suite(cfg), run_suite(cfg)
    assert first == second
    assert [r["criterion"] for r in first["criteria"]] == [2, 11]
    assert first["ok"]


def test_main_writes_report(tmp_path, capsys):
    out = tmp_path / "suite.json"
    xlsx = tmp_path / "suite.xlsx"
    code = main(["--quick", "--only", "11", "--out", str(out), "--xlsx", str(xlsx), "--workers", "1"])
    assert code == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["profile"] == "quick"
    assert xlsx.exists()
    assert "ACCEPTANCE SUITE" in capsys.readouterr().err


def test_main_rejects_bad_only(capsys):
    assert main(["--only", "99"]) == 2
