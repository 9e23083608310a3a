"""
lemma_lab.py - verificação exata das somas binomiais F(x,y) e C(t,x)

Tudo em inteiros Python (precisão arbitrária). Binomiais fora do domínio
valem 0. The inequality 2F <= binom(ell,k) is checked doubled so no halving
ever happens.

Sweeps build pandas DataFrames (object dtype, exact ints); the SweepReport
summarises them and can be exported to Excel.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterator

import pandas as pd

from coloring_model import InputError


logger = logging.getLogger(__name__)

FLOOR_OFFSETS = {"k+1": 1, "k+2": 2}


def binom(p: int, q: int) -> int:
    if p < 0 or q < 0 or p < q:
        return 0
    return math.comb(p, q)


def ceil_half(n: int) -> int:
    return -((-n) // 2)


@dataclass(frozen=True)
class LemmaParams:
    ell: int
    k: int
    x: int
    y: int

    def __post_init__(self):
        if self.k < 1 or self.ell <= self.k:
            raise InputError(f"need 1 <= k < ell (ell={self.ell}, k={self.k})")
        if self.x < 0 or self.y < 0 or self.x + self.y > self.ell:
            raise InputError(f"need x, y >= 0 and x+y <= ell (x={self.x}, y={self.y}, ell={self.ell})")

    @property
    def p(self) -> int:
        return self.x + ceil_half(self.k + 1 - self.ell)


def f_value(params: LemmaParams, floor_offset: int = 1) -> int:
    ell, k, x, y = params.ell, params.k, params.x, params.y
    threshold = max(2 * x + y + k + 1 - ell, k + floor_offset)
    total = 0
    for a in range(0, min(x, k) + 1):
        for b in range(0, min(y, k - a) + 1):
            if 2 * a + b >= threshold:
                total += binom(x, a) * binom(y, b) * binom(ell - x - y, k - a - b)
    return total


def f_at(ell: int, k: int, x: int, y: int, floor_offset: int = 1) -> int:
    return f_value(LemmaParams(ell, k, x, y), floor_offset)


def c_value(t: int, x: int, ell: int, k: int) -> int:
    if not (0 <= x <= ell // 2) or not (0 <= t <= 2 * k):
        raise InputError(f"C(t,x) needs 0 <= x <= ell/2 and 0 <= t <= 2k (t={t}, x={x}, ell={ell}, k={k})")
    return sum(
        binom(x, a) * binom(ell - 2 * x, t - 2 * a) * binom(x, k + a - t)
        for a in range(0, t // 2 + 1)
    )


def feasible_cells(ell_max: int) -> Iterator[LemmaParams]:
    for ell in range(2, ell_max + 1):
        for k in range(1, ell):
            for x in range(0, ell + 1):
                for y in range(0, ell - x + 1):
                    yield LemmaParams(ell, k, x, y)


# -------------------------------------------------------------------
# reports
# -------------------------------------------------------------------
@dataclass
class SweepReport:
    name: str
    ell_max: int
    cells_checked: int = 0
    violations: list[dict] = field(default_factory=list)
    equality_cases: list[dict] = field(default_factory=list)
    verdicts: dict[str, dict] = field(default_factory=dict)
    adjudication: dict[str, dict] = field(default_factory=dict)
    tables: dict[str, pd.DataFrame] = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return not self.violations and all(v["holds"] for v in self.verdicts.values())

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ell_max": self.ell_max,
            "cells_checked": self.cells_checked,
            "violations": self.violations,
            "equality_cases": self.equality_cases,
            "verdicts": self.verdicts,
            "adjudication": self.adjudication,
            "ok": self.ok,
        }

    def write_xlsx(self, path: str):
        with pd.ExcelWriter(path, engine="openpyxl") as writer:
            for sheet, df in self.tables.items():
                df.to_excel(writer, sheet_name=sheet[:31], index=False)


def _records(df: pd.DataFrame, cols: list[str]) -> list[dict]:
    # object dtype keeps plain Python ints
    return df[cols].to_dict("records")


def main_lemma_grid(ell_max: int, floor_offset: int = 1) -> pd.DataFrame:
    rows = []
    for cell in feasible_cells(ell_max):
        rows.append({
            "ell": cell.ell,
            "k": cell.k,
            "x": cell.x,
            "y": cell.y,
            "twice_f": 2 * f_value(cell, floor_offset),
            "binom": binom(cell.ell, cell.k),
            "expected_equality": cell.ell % 2 == 0 and cell.k % 2 == 1 and 2 * cell.x == cell.ell and cell.y == 0,
        })
    return pd.DataFrame(rows, dtype=object)


def verify_main_lemma(ell_max: int, floor_offset: int = 1) -> SweepReport:
    """2F <= binom(ell,k) em toda a grelha; igualdade só em {ell par, k ímpar, x=ell/2, y=0}."""
    if ell_max < 2:
        raise InputError("ell_max must be >= 2")
    if floor_offset not in (1, 2):
        raise InputError("floor offset is 1 (k+1) or 2 (k+2)")
    df = main_lemma_grid(ell_max, floor_offset)
    report = SweepReport(f"main_lemma_floor_k+{floor_offset}", ell_max, cells_checked=len(df))
    cols = ["ell", "k", "x", "y", "twice_f", "binom"]

    above = df[df["twice_f"] > df["binom"]]
    equal = df[df["twice_f"] == df["binom"]]
    report.violations = _records(above, cols)
    report.equality_cases = _records(equal, cols)

    if floor_offset == 1:
        mismatch = df[(df["twice_f"] == df["binom"]) != df["expected_equality"].astype(bool)]
        report.verdicts["inequality"] = {"checked": len(df), "exceptions": len(above), "holds": above.empty}
        report.verdicts["equality_set"] = {
            "checked": len(df),
            "exceptions": len(mismatch),
            "holds": mismatch.empty,
        }
    else:
        report.verdicts["strict_inequality"] = {"checked": len(df), "exceptions": len(above) + len(equal),
                                                "holds": above.empty and equal.empty}
        report.violations += _records(equal, cols)
    report.tables["main_lemma"] = df
    logger.info("[LEMMA] main lemma ell<=%d floor k+%d: %d cells, %d violations",
                ell_max, floor_offset, len(df), len(report.violations))
    return report


# -------------------------------------------------------------------
# binomial identities
# -------------------------------------------------------------------
def _identity_rows(ell_max: int) -> Iterator[dict]:
    for ell in range(2, ell_max + 1):
        for k in range(1, ell):
            b = binom(ell, k)
            for x in range(0, ell // 2 + 1):
                cs = [c_value(t, x, ell, k) for t in range(0, 2 * k + 1)]
                yield {"family": "column_sum", "ell": ell, "k": k, "x": x, "t": None,
                       "lhs": sum(cs), "rhs": b}
                for t in range(0, k + 1):
                    yield {"family": "reflection", "ell": ell, "k": k, "x": x, "t": t,
                           "lhs": cs[t], "rhs": cs[2 * k - t]}
                if x >= 1:
                    twice_f = 2 * f_at(ell, k, x, ell - 2 * x)
                    yield {"family": "half_split", "ell": ell, "k": k, "x": x, "t": None,
                           "lhs": twice_f, "rhs": b - cs[k]}
                    yield {"family": "half_split_printed", "ell": ell, "k": k, "x": x, "t": None,
                           "lhs": twice_f, "rhs": binom(ell, 2 * k) - cs[k]}
                    # positive unless ell = 2x with k odd, where it vanishes
                    zero_expected = ell == 2 * x and k % 2 == 1
                    yield {"family": "middle_nonnegative", "ell": ell, "k": k, "x": x, "t": k,
                           "lhs": cs[k], "rhs": 0, "zero_expected": zero_expected}

            for x0 in range(0, ell + 1):
                for y in range(0, ell - x0):
                    lo, hi = f_at(ell, k, x0, y), f_at(ell, k, x0, y + 1)
                    # decreasing in y once y >= ell - 2*x0, increasing before
                    if y >= ell - 2 * x0:
                        yield {"family": "monotone_in_y", "ell": ell, "k": k, "x": x0, "t": y,
                               "lhs": hi, "rhs": lo, "relation": "<="}
                    else:
                        yield {"family": "monotone_in_y", "ell": ell, "k": k, "x": x0, "t": y,
                               "lhs": lo, "rhs": hi, "relation": "<="}

            for x in range(ceil_half(ell), ell):
                p = LemmaParams(ell, k, x, 0).p
                yield {"family": "telescoping_step", "ell": ell, "k": k, "x": x, "t": None,
                       "lhs": f_at(ell, k, x, 0) - f_at(ell, k, x + 1, 0),
                       "rhs": binom(x, p) * binom(ell - 1 - x, k - p)}

            if ell % 2 == 1:
                yield {"family": "odd_ell_comparison", "ell": ell, "k": k, "x": (ell + 1) // 2, "t": None,
                       "lhs": f_at(ell, k, (ell + 1) // 2, 0), "rhs": f_at(ell, k, (ell - 1) // 2, 1),
                       "relation": "<="}


def _holds(row: dict) -> bool:
    if row["family"] == "middle_nonnegative":
        return row["lhs"] >= 0 and (row["lhs"] == 0) == row["zero_expected"]
    if row.get("relation") == "<=":
        return row["lhs"] <= row["rhs"]
    return row["lhs"] == row["rhs"]


IDENTITY_FAMILIES = (
    "column_sum",
    "reflection",
    "half_split",
    "monotone_in_y",
    "middle_nonnegative",
    "telescoping_step",
    "odd_ell_comparison",
)


def verify_binomial_identities(ell_max: int) -> SweepReport:
    """
    Sete famílias de identidades sobre a grelha ell <= ell_max.

    "half_split_printed" (binom(ell,2k) in place of binom(ell,k)) is not an
    identity family: it is evaluated for adjudication and expected to fail.
    """
    if ell_max < 2:
        raise InputError("ell_max must be >= 2")
    rows = []
    for row in _identity_rows(ell_max):
        row = {"relation": "==", "zero_expected": None, **row}
        row["holds"] = _holds(row)
        rows.append(row)
    df = pd.DataFrame(rows, dtype=object)
    report = SweepReport("binomial_identities", ell_max, cells_checked=len(df))

    cols = ["family", "ell", "k", "x", "t", "lhs", "rhs"]
    for fam in IDENTITY_FAMILIES:
        sub = df[df["family"] == fam]
        bad = sub[~sub["holds"].astype(bool)]
        report.verdicts[fam] = {"checked": len(sub), "exceptions": len(bad), "holds": bad.empty}
        for rec in bad[cols].to_dict("records"):
            report.violations.append({c: rec[c] for c in cols})

    printed = df[df["family"] == "half_split_printed"]
    refuting = printed[~printed["holds"].astype(bool)]
    first = refuting[cols].head(1).to_dict("records")
    report.adjudication["half_split_printed"] = {
        "checked": len(printed),
        "refuting_cells": len(refuting),
        "refuted": not refuting.empty,
        "first_refutation": first[0] if first else None,
        "adopted": "binom(ell,k)",
    }
    report.tables["identities"] = df
    logger.info("[LEMMA] identities ell<=%d: %d rows, %d violations, printed variant refuted=%s",
                ell_max, len(df), len(report.violations), not refuting.empty)
    return report
