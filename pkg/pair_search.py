"""
pair_search.py - casais, classificação heavy/light/safe e procura do par (S,T)

Hub lists L(u), L(v) of equal size ell are matched into couples (c_j, c'_j)
by a consistent indexing. A pair (S,T) removes S from the head of every
internal path and T from its tail; it is admissible when each path's damage
stays within its budget S_L(P^i) - n_i*m.

- consistent_indexing / classify_couples
- check_conditions_c (three odd internal paths) / check_conditions_t (Θ_{2,2,2,2p})
- find_pair / count_bad_pairs / bad_simple_pairs / count_constrained_pairs
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from coloring_model import HUB_U, HUB_V, InputError, ThetaGraph
from path_calculus import (
    DamageMismatch,
    PathProfile,
    damage,
    damage_closed_form,
    hat_sets,
)


logger = logging.getLogger(__name__)

SPOT_CHECK_EVERY = 100

HEAVY, LIGHT, SAFE = "heavy", "light", "safe"
_LABELS = {2: HEAVY, 1: LIGHT, 0: SAFE}


class TheoremFalsified(RuntimeError):
    """Conditions validated true, yet no admissible pair exists."""


# -------------------------------------------------------------------
# couples
# -------------------------------------------------------------------
@dataclass(frozen=True)
class CoupleIndex:
    couples: tuple[tuple[int, int], ...]

    @property
    def ell(self) -> int:
        return len(self.couples)

    @property
    def heads(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.couples)

    @property
    def tails(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.couples)

    def pair_for(self, J: Sequence[int]) -> tuple[frozenset[int], frozenset[int]]:
        return (
            frozenset(self.couples[j][0] for j in J),
            frozenset(self.couples[j][1] for j in J),
        )


def consistent_indexing(Lu: frozenset[int], Lv: frozenset[int]) -> CoupleIndex:
    if len(Lu) != len(Lv):
        raise InputError(f"hub lists differ in size ({len(Lu)} vs {len(Lv)})")
    shared = sorted(Lu & Lv)
    rest_u = sorted(Lu - Lv)
    rest_v = sorted(Lv - Lu)
    return CoupleIndex(tuple((c, c) for c in shared) + tuple(zip(rest_u, rest_v)))


@dataclass(frozen=True)
class PathCouples:
    labels: tuple[str, ...]
    damages: tuple[int, ...]

    @property
    def x(self) -> int:
        return self.labels.count(HEAVY)

    @property
    def y(self) -> int:
        return self.labels.count(LIGHT)

    @property
    def z(self) -> int:
        return self.labels.count(SAFE)


@dataclass(frozen=True)
class CoupleClassification:
    index: CoupleIndex
    per_path: tuple[PathCouples, ...]

    def counts(self, i: int) -> tuple[int, int, int]:
        p = self.per_path[i]
        return p.x, p.y, p.z

    def to_json(self) -> dict:
        return {
            "couples": [list(c) for c in self.index.couples],
            "paths": [
                {"labels": list(p.labels), "damages": list(p.damages), "x": p.x, "y": p.y, "z": p.z}
                for p in self.per_path
            ],
        }


def path_profiles(theta: ThetaGraph, lists: Mapping[str, frozenset[int]]) -> list[PathProfile]:
    profiles = []
    for i, n in enumerate(theta.internal_sizes):
        if n % 2 == 0:
            raise InputError(f"internal path {i} has {n} vertices; odd paths only")
        profiles.append(hat_sets(theta.path_lists(lists, i)))
    return profiles


def path_budgets(theta: ThetaGraph, lists: Mapping[str, frozenset[int]], m: int) -> list[int]:
    return [p.slp - p.n * m for p in path_profiles(theta, lists)]


def classify_couples(
    theta: ThetaGraph,
    lists: Mapping[str, frozenset[int]],
    index: CoupleIndex | None = None,
) -> CoupleClassification:
    Lu, Lv = lists[HUB_U], lists[HUB_V]
    index = index or consistent_indexing(Lu, Lv)
    per_path = []
    for i, profile in enumerate(path_profiles(theta, lists)):
        dams = tuple(damage_closed_form(profile, {c}, {c2}) for c, c2 in index.couples)
        total = damage_closed_form(profile, Lu, Lv)
        if sum(dams) != total:
            raise DamageMismatch(
                f"path {i}: couple damages sum to {sum(dams)} but dam(L(u),L(v)) = {total}"
            )
        per_path.append(PathCouples(tuple(_LABELS[d] for d in dams), dams))
    return CoupleClassification(index, tuple(per_path))


# -------------------------------------------------------------------
# condition validators
# -------------------------------------------------------------------
def _item(ok: bool, detail: str) -> dict:
    return {"ok": bool(ok), "detail": detail}


def _ceil_half(n: int) -> int:
    return -((-n) // 2)


def check_conditions_c(
    theta: ThetaGraph,
    lists: Mapping[str, frozenset[int]],
    ell: int,
    tau: int,
    m: int,
) -> dict:
    """Conditions C1-C5 for a theta graph with three odd internal paths (n_i >= 3)."""
    sizes = theta.internal_sizes
    if len(sizes) != 3 or any(n < 3 or n % 2 == 0 for n in sizes):
        raise InputError(f"C conditions need three internal paths with odd n_i >= 3, got {sizes}")
    Lu, Lv = lists[HUB_U], lists[HUB_V]
    items = {}

    items["C1"] = _item(
        ell >= 0 and tau >= 0 and ell % 2 == 0 and tau % 2 == 0
        and tau <= 2 * (m // 2) and ell + tau >= 2 * _ceil_half(m),
        f"ell={ell} tau={tau} m={m}: even, tau <= {2 * (m // 2)}, ell+tau >= {2 * _ceil_half(m)}",
    )
    items["C2"] = _item(len(Lu) == ell and len(Lv) == ell, f"|L(u)|={len(Lu)} |L(v)|={len(Lv)} ell={ell}")

    c3, c4 = [], []
    for i, path in enumerate(theta.paths):
        first, last = lists[path[0]], lists[path[-1]]
        if len(first) < 2 * m - tau:
            c3.append(f"|L({path[0]})|={len(first)} < {2 * m - tau}")
        if len(last) < 2 * m + 1 - tau:
            c3.append(f"|L({path[-1]})|={len(last)} < {2 * m + 1 - tau}")
        for w in path[1:-1]:
            if len(lists[w]) < 2 * m + 1:
                c4.append(f"|L({w})|={len(lists[w])} < {2 * m + 1}")
    items["C3"] = _item(not c3, "; ".join(c3) or "end lists large enough")
    items["C4"] = _item(not c4, "; ".join(c4) or "interior lists large enough")

    profiles = path_profiles(theta, lists)
    budgets, damages, c5 = [], [], []
    for i, p in enumerate(profiles):
        n = p.n
        budget = p.slp - n * m
        dam = damage_closed_form(p, Lu, Lv)
        need = max(m + (n - 3) // 2 + dam - ell - tau, m + (n - 1) // 2 - tau)
        budgets.append(budget)
        damages.append(dam)
        if budget < need:
            c5.append(f"path {i}: budget {budget} < {need}")
    items["C5"] = _item(not c5, "; ".join(c5) or "all budgets large enough")

    return {
        "family": "C",
        "ell": ell,
        "tau": tau,
        "m": m,
        "items": items,
        "budgets": budgets,
        "damages": damages,
        "ok": all(it["ok"] for it in items.values()),
    }


def theta4_order(theta: ThetaGraph) -> list[int]:
    """Índices dos caminhos com os três caminhos de um vértice primeiro e o longo por último."""
    sizes = theta.internal_sizes
    if len(sizes) != 4 or sorted(sizes)[:3] != [1, 1, 1] or sorted(sizes)[3] % 2 == 0:
        raise InputError(f"expected a Θ_{{2,2,2,2p}} shape, got lengths {theta.lengths}")
    # with all four of size 1 the last one plays the long path
    long = max(range(4), key=lambda i: (sizes[i], i))
    return [i for i in range(4) if i != long] + [long]


def check_conditions_t(
    theta: ThetaGraph,
    lists: Mapping[str, frozenset[int]],
    ell: int,
    tau: int,
    m: int,
) -> dict:
    """Conditions T1-T5 for Θ_{2,2,2,2p}."""
    order = theta4_order(theta)
    Lu, Lv = lists[HUB_U], lists[HUB_V]
    items = {}
    items["T1"] = _item(
        0 <= tau <= m and ell >= 0 and ell + tau >= m,
        f"ell={ell} tau={tau} m={m}: 0 <= tau <= m, ell+tau >= m",
    )
    items["T2"] = _item(len(Lu) == ell and len(Lv) == ell, f"|L(u)|={len(Lu)} |L(v)|={len(Lv)} ell={ell}")

    t3, t4 = [], []
    for i in order:
        path = theta.paths[i]
        if len(lists[path[0]]) < 2 * m + 1 - tau:
            t3.append(f"|L({path[0]})|={len(lists[path[0]])} < {2 * m + 1 - tau}")
    long = theta.paths[order[3]]
    if len(long) >= 3:
        if len(lists[long[-1]]) < 2 * m + 1 - tau:
            t3.append(f"|L({long[-1]})|={len(lists[long[-1]])} < {2 * m + 1 - tau}")
        for w in long[1:-1]:
            if len(lists[w]) < 2 * m + 1:
                t4.append(f"|L({w})|={len(lists[w])} < {2 * m + 1}")
    items["T3"] = _item(not t3, "; ".join(t3) or "end lists large enough")
    items["T4"] = _item(not t4, "; ".join(t4) or "interior lists large enough")

    profiles = path_profiles(theta, lists)
    budgets, damages, t5 = [], [], []
    for i, p in enumerate(profiles):
        n = p.n
        budget = p.slp - n * m
        dam = damage_closed_form(p, Lu, Lv)
        need = max((n + 1) // 2 + m - ell - tau + dam, (n + 1) // 2 + m - tau)
        budgets.append(budget)
        damages.append(dam)
        if budget < need:
            t5.append(f"path {i}: budget {budget} < {need}")
    items["T5"] = _item(not t5, "; ".join(t5) or "all budgets large enough")

    return {
        "family": "T",
        "ell": ell,
        "tau": tau,
        "m": m,
        "order": order,
        "items": items,
        "budgets": budgets,
        "damages": damages,
        "ok": all(it["ok"] for it in items.values()),
    }


# -------------------------------------------------------------------
# pair search
# -------------------------------------------------------------------
@dataclass(frozen=True)
class PairCandidate:
    S: frozenset[int]
    T: frozenset[int]
    damages: tuple[int, ...]
    simple: bool
    stage: str

    @property
    def size(self) -> int:
        return len(self.S)

    def to_json(self) -> dict:
        return {
            "S": sorted(self.S),
            "T": sorted(self.T),
            "size": self.size,
            "damages": list(self.damages),
            "simple": self.simple,
            "stage": self.stage,
        }


def simple_for_paths(
    S: frozenset[int],
    T: frozenset[int],
    Lu: frozenset[int],
    Lv: frozenset[int],
    lambdas: Sequence[frozenset[int]],
) -> bool:
    # simplicity is checked against every path's own common set
    return all(
        not (S & (Lv - T) & lam) and not (T & (Lu - S) & lam)
        for lam in lambdas
    )


def find_pair(
    theta: ThetaGraph,
    lists: Mapping[str, frozenset[int]],
    size: int,
    budgets: Sequence[int],
    *,
    index: CoupleIndex | None = None,
    conditions_ok: bool = False,
) -> PairCandidate | None:
    """
    Procura (S,T) com |S|=|T|=size e dano <= budget em todos os caminhos.

    Order: couple pairs (T = partners of S) in lexicographic order, then
    cross-coupled simple pairs, then every pair. First hit wins.
    """
    if size < 0:
        raise InputError(f"pair size must be non-negative (size={size})")
    Lu, Lv = lists[HUB_U], lists[HUB_V]
    index = index or consistent_indexing(Lu, Lv)
    seqs = [theta.path_lists(lists, i) for i in range(len(theta.paths))]
    profiles = path_profiles(theta, lists)
    if len(budgets) != len(profiles):
        raise InputError(f"{len(budgets)} budgets for {len(profiles)} paths")
    lambdas = [p.lam for p in profiles]
    tried = set()
    evaluations = 0

    def evaluate(S, T, stage, simple=None):
        nonlocal evaluations
        if (S, T) in tried:
            return None
        tried.add((S, T))
        evaluations += 1
        dams = tuple(damage_closed_form(p, S, T) for p in profiles)
        if evaluations % SPOT_CHECK_EVERY == 0:
            for seq, d in zip(seqs, dams):
                if damage(seq, S, T) != d:
                    raise DamageMismatch(f"spot check failed for S={sorted(S)} T={sorted(T)}")
        if all(d <= b for d, b in zip(dams, budgets)):
            if simple is None:
                simple = simple_for_paths(S, T, Lu, Lv, lambdas)
            return PairCandidate(S, T, dams, simple, stage)
        return None

    if size <= index.ell:
        for J in combinations(range(index.ell), size):
            S, T = index.pair_for(J)
            hit = evaluate(S, T, "couples", simple=simple_for_paths(S, T, Lu, Lv, lambdas))
            if hit:
                return hit
        for J1 in combinations(range(index.ell), size):
            S = index.pair_for(J1)[0]
            for J2 in combinations(range(index.ell), size):
                if J1 == J2:
                    continue
                T = index.pair_for(J2)[1]
                if simple_for_paths(S, T, Lu, Lv, lambdas):
                    hit = evaluate(S, T, "cross-coupled", simple=True)
                    if hit:
                        return hit
        for Sc in combinations(sorted(Lu), size):
            for Tc in combinations(sorted(Lv), size):
                hit = evaluate(frozenset(Sc), frozenset(Tc), "exhaustive")
                if hit:
                    return hit

    logger.debug("[PAIRS] no pair of size %d after %d evaluations", size, evaluations)
    if conditions_ok:
        raise TheoremFalsified(
            f"conditions hold but no pair of size {size} fits budgets {list(budgets)} "
            f"(hub lists {sorted(Lu)} / {sorted(Lv)})"
        )
    return None


def bad_simple_pairs(
    classification: CoupleClassification,
    size: int,
    budgets: Sequence[int],
) -> Iterator[dict]:
    """Pares de casais (forma S -> parceiros) com dano acima do budget de algum caminho."""
    ell = classification.index.ell
    for J in combinations(range(ell), size):
        for i, pc in enumerate(classification.per_path):
            labels = [pc.labels[j] for j in J]
            dam = sum(pc.damages[j] for j in J)
            if dam > budgets[i]:
                yield {
                    "path": i,
                    "J": list(J),
                    "a": labels.count(HEAVY),
                    "b": labels.count(LIGHT),
                    "c": labels.count(SAFE),
                    "damage": dam,
                }


def count_bad_pairs(
    theta: ThetaGraph,
    lists: Mapping[str, frozenset[int]],
    size: int,
    budgets: Sequence[int],
    index: CoupleIndex | None = None,
) -> list[int]:
    classification = classify_couples(theta, lists, index)
    beta = [0] * len(classification.per_path)
    for bad in bad_simple_pairs(classification, size, budgets):
        beta[bad["path"]] += 1
    return beta


def count_constrained_pairs(damages: Sequence[int], k: int, floor_offset: int = 1) -> int:
    """
    Number of k-subsets J of couples with 2a+b >= max{2x+y+k+1-ell, k+floor_offset},
    where a, b count heavy and light couples in J (so 2a+b is J's damage).
    """
    ell = len(damages)
    threshold = max(sum(damages) + k + 1 - ell, k + floor_offset)
    return sum(1 for J in combinations(damages, k) if sum(J) >= threshold)
