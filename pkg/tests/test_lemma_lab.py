import pandas as pd
import pytest

from coloring_model import InputError
from lemma_lab import (
    IDENTITY_FAMILIES,
    LemmaParams,
    binom,
    c_value,
    f_at,
    feasible_cells,
    verify_binomial_identities,
    verify_main_lemma,
)


def test_binom_outside_domain_is_zero():
    assert binom(5, 2) == 10
    assert binom(2, 3) == 0
    assert binom(-1, 0) == 0
    assert binom(3, -1) == 0


@pytest.mark.parametrize("args,expected", [
    ((4, 1, 2, 0), 2),
    ((5, 2, 2, 1), 3),
    ((4, 1, 0, 0), 0),
])
def test_f_values(args, expected):
    assert f_at(*args) == expected


@pytest.mark.parametrize("args,expected", [
    ((1, 2, 4, 1), 0),
    ((0, 1, 4, 1), 1),
    ((1, 2, 6, 2), 4),
    ((3, 2, 6, 2), 4),
])
def test_c_values(args, expected):
    assert c_value(*args) == expected


def test_c_value_domain():
    with pytest.raises(InputError):
        c_value(0, 3, 4, 1)
    with pytest.raises(InputError):
        c_value(3, 1, 4, 1)


@pytest.mark.parametrize("args", [(3, 0, 0, 0), (3, 3, 0, 0), (4, 1, 3, 2), (4, 1, -1, 0)])
def test_params_validation(args):
    with pytest.raises(InputError):
        LemmaParams(*args)


def test_p_rounds_up():
    assert LemmaParams(5, 2, 3, 0).p == 2
    assert LemmaParams(4, 1, 2, 0).p == 1


def test_feasible_cells_count():
    # ell = 2, k = 1: pairs x + y <= 2
    assert len(list(feasible_cells(2))) == 6


def test_main_lemma_small_grid():
    report = verify_main_lemma(2)
    assert report.ok
    assert report.cells_checked == 6
    assert [(c["ell"], c["k"], c["x"], c["y"]) for c in report.equality_cases] == [(2, 1, 1, 0)]


def test_main_lemma_equality_set():
    report = verify_main_lemma(8)
    assert report.ok, report.violations[:3]
    for case in report.equality_cases:
        assert case["ell"] % 2 == 0 and case["k"] % 2 == 1
        assert 2 * case["x"] == case["ell"] and case["y"] == 0
    assert report.to_json()["verdicts"]["equality_set"]["holds"]


def test_main_lemma_raised_floor_is_strict():
    report = verify_main_lemma(8, floor_offset=2)
    assert report.ok
    assert report.equality_cases == []
    assert "strict_inequality" in report.verdicts


def test_main_lemma_arguments():
    with pytest.raises(InputError):
        verify_main_lemma(1)
    with pytest.raises(InputError):
        verify_main_lemma(4, floor_offset=3)


def test_identity_families_hold():
    report = verify_binomial_identities(8)
    assert report.ok, report.violations[:3]
    assert set(report.verdicts) == set(IDENTITY_FAMILIES)
    assert all(v["checked"] > 0 for v in report.verdicts.values())


def test_printed_half_split_is_refuted():
    printed = verify_binomial_identities(4).adjudication["half_split_printed"]
    assert printed["refuted"]
    assert printed["adopted"] == "binom(ell,k)"
    first = printed["first_refutation"]
    assert first["lhs"] != first["rhs"]


def test_write_xlsx(tmp_path):
    report = verify_main_lemma(4)
    out = tmp_path / "lemma.xlsx"
    report.write_xlsx(str(out))
    df = pd.read_excel(out, sheet_name="main_lemma", engine="openpyxl")
    assert len(df) == report.cells_checked
    assert {"ell", "k", "x", "y", "twice_f", "binom"} <= set(df.columns)
