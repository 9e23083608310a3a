#!/usr/bin/env python3
"""
validate_suite.py - bateria de aceitação (critérios 1-11), determinística por seed

- 1  path criterion vs oracle (exhaustive n<=3, random n=5)
- 2  damage: definition vs closed form, reduced slp identity, additivity, trichotomy
- 3  slp identities on uniform-interior paths
- 4  main lemma sweep (floor k+1 and k+2)
- 5  binomial identity families (+ adjudication of the printed half split)
- 6  odd cycles at the ratio threshold
- 7  theorem-guided theta solving (random + adversarial lists)
- 8  pair search under validated conditions (tau = 0 and tau > 0)
- 9  odd-theta splitting round trips
- 10 2-choosability and 3-choice-critical families vs oracle
- 11 constrained pair counts vs F(x,y)

Shapes, m values and per-profile sample counts come from suite_targets.json
(missing file -> built-in defaults). Escreve um relatório JSON e, com --xlsx,
um Excel com o resumo por critério.
"""

from __future__ import annotations

import argparse
import logging
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator

import networkx as nx
import pandas as pd

from coloring_model import (
    HUB_U,
    HUB_V,
    ColoringContractError,
    InputError,
    Lists,
    ThetaGraph,
    build_theta,
    dumps_report,
    load_json,
    path_graph,
    trim_list,
    verify_coloring,
)
from graph_classifier import (
    Family,
    bad_two_assignment,
    critical_family_members,
    graph_corpus,
    is_2_choosable,
    is_3_choice_critical,
)
from lemma_lab import f_at, verify_binomial_identities, verify_main_lemma
from odd_cycle_coloring import CycleInstance, color_odd_cycle
from oracle_search import SamplerConfig, check_choosable, find_lb_coloring, find_witness, iter_canonical_assignments
from pair_search import (
    TheoremFalsified,
    check_conditions_c,
    check_conditions_t,
    count_constrained_pairs,
    find_pair,
    theta4_order,
)
from path_calculus import (
    DamageMismatch,
    color_path,
    damage,
    path_colorable,
    reduced_slp_identity,
    slp_identity_check,
)
from theta_solver import (
    THEOREM_GUIDED,
    SplitInvariantError,
    pull_back_coloring,
    solve,
    solve_even_theta,
    split_odd_theta,
    theorem_family,
    trim_even_lists,
)


logger = logging.getLogger(__name__)

# -------------------------------------------------------------------
# CONFIG (tunable via env)
# -------------------------------------------------------------------
SUITE_WORKERS = int(os.environ.get("SUITE_WORKERS", "4"))
SUITE_TARGETS_JSON = os.environ.get("SUITE_TARGETS_JSON", "suite_targets.json")
LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO")
MAX_EXAMPLES = 5

CASE_ERRORS = (ColoringContractError, DamageMismatch, TheoremFalsified, SplitInvariantError, InputError)

DEFAULT_TARGETS = {
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
    "m_values": [1, 2],
}

DEFAULT_PROFILES = {
    "full": {
        "path_palette": 8, "path_random": 500, "damage_samples": 1000, "identity_samples": 1000,
        "lemma_lmax": 12, "cycle_samples": 500, "theta_random": 200, "tau_instances": 100,
        "split_instances": 100, "corpus_max_vertices": 7, "corpus_sample": 500, "ert_palette": 6,
        "witness_palette": 5, "family_max_vertices": 8, "edge_palette": 4, "count_samples": 200,
        "family_classify_vertices": 12, "edge_samples": 200,
    },
    "quick": {
        "path_palette": 5, "path_random": 50, "damage_samples": 100, "identity_samples": 100,
        "lemma_lmax": 8, "cycle_samples": 20, "theta_random": 5, "tau_instances": 10,
        "split_instances": 10, "corpus_max_vertices": 5, "corpus_sample": 30, "ert_palette": 4,
        "witness_palette": 4, "family_max_vertices": 6, "edge_palette": 3, "count_samples": 50,
        "family_classify_vertices": 9, "edge_samples": 50,
    },
}


def load_targets(path: str) -> dict:
    if not os.path.exists(path):
        logger.warning("[SUITE] %s not found, using built-in targets", path)
        return {}
    return load_json(path)


@dataclass
class RunConfig:
    seed: int = 42
    quick: bool = False
    lemma_lmax: int | None = None
    workers: int = SUITE_WORKERS
    targets_path: str = SUITE_TARGETS_JSON
    only: tuple[int, ...] = ()
    targets: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.targets:
            self.targets = {**DEFAULT_TARGETS, **load_targets(self.targets_path)}
        bad = [c for c in self.only if c not in CRITERIA]
        if bad:
            raise InputError(f"unknown criteria {bad}; valid ids are 1..{len(CRITERIA)}")

    @property
    def profile_name(self) -> str:
        return "quick" if self.quick else "full"

    def profile(self) -> dict:
        prof = dict(DEFAULT_PROFILES[self.profile_name])
        prof.update(self.targets.get("profiles", {}).get(self.profile_name, {}))
        if self.lemma_lmax is not None:
            prof["lemma_lmax"] = self.lemma_lmax
        return prof

    def rng(self, criterion: int) -> random.Random:
        return random.Random(self.seed * 100 + criterion)


@dataclass
class Tally:
    criterion: int
    name: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def fail(self, **info):
        self.failures.append(info)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "name": self.name,
            "checked": self.checked,
            "failures": len(self.failures),
            "examples": self.failures[:MAX_EXAMPLES],
            "notes": self.notes,
            "ok": self.ok,
        }


def random_lists(rng: random.Random, vertices, size_of: int | Callable[[str], int], palette: int) -> Lists:
    pick = (lambda v: size_of) if isinstance(size_of, int) else size_of
    return {v: frozenset(rng.sample(range(palette), pick(v))) for v in vertices}


def _sorted_lists(lists) -> dict:
    return {v: sorted(cs) for v, cs in lists.items()}


# -------------------------------------------------------------------
# 1) path criterion
# -------------------------------------------------------------------
def _path_size_profiles(n: int, m: int) -> Iterator[dict]:
    ends, inner = (m, m + 1), (2 * m, 2 * m + 1)
    if n == 1:
        for s in ends:
            yield {"v1": s}
        return
    for combo in product(ends, *([inner] * (n - 2)), ends):
        yield {f"v{i + 1}": s for i, s in enumerate(combo)}


def _path_case(tally: Tally, graph: nx.Graph, lists: Lists, m: int):
    n = graph.number_of_nodes()
    seq = tuple(lists[f"v{i}"] for i in range(1, n + 1))
    tally.checked += 1
    try:
        crit = path_colorable(seq, m)
        orc = find_lb_coloring(graph, lists, m) is not None
        picks = color_path(seq, m)
    except CASE_ERRORS as e:
        tally.fail(n=n, m=m, lists=[sorted(x) for x in seq], error=str(e))
        return
    if crit != orc or (picks is not None) != crit:
        tally.fail(n=n, m=m, lists=[sorted(x) for x in seq], criterion=crit, oracle=orc,
                   constructed=picks is not None)


def criterion_path_criterion(cfg: RunConfig, prof: dict) -> Tally:
    tally = Tally(1, "path criterion vs oracle")
    rng = cfg.rng(1)
    for n in (1, 3):
        for m in (1, 2):
            g = path_graph(n)
            for sizes in _path_size_profiles(n, m):
                for lists in iter_canonical_assignments(g, sizes, prof["path_palette"]):
                    _path_case(tally, g, lists, m)
    exhaustive = tally.checked
    g = path_graph(5)
    for _ in range(prof["path_random"]):
        m = rng.randint(1, 2)
        sizes = {v: rng.choice((m, m + 1)) if v in ("v1", "v5") else rng.choice((2 * m, 2 * m + 1))
                 for v in g.nodes}
        palette = rng.randint(2 * m + 1, 8)
        _path_case(tally, g, random_lists(rng, g.nodes, sizes.__getitem__, palette), m)
    tally.notes = {"exhaustive_cases": exhaustive, "random_cases": tally.checked - exhaustive}
    return tally


# -------------------------------------------------------------------
# 2) damage
# -------------------------------------------------------------------
def _random_subset(rng: random.Random, colours, p: float = 1 / 3) -> frozenset[int]:
    return frozenset(c for c in colours if rng.random() < p)


def criterion_damage(cfg: RunConfig, prof: dict) -> Tally:
    tally = Tally(2, "damage closed form, reduced slp, additivity, trichotomy")
    rng = cfg.rng(2)
    palette = range(8)
    for _ in range(prof["damage_samples"]):
        n = rng.choice((1, 3, 5, 7))
        seq = tuple(frozenset(rng.sample(palette, rng.randint(1, 5))) for _ in range(n))
        S, T = _random_subset(rng, palette), _random_subset(rng, palette)
        shown = [sorted(x) for x in seq]
        tally.checked += 1
        try:
            d = damage(seq, S, T)
            lhs, rhs = reduced_slp_identity(seq, S, T)
            if lhs != rhs:
                tally.fail(kind="reduced_slp", lists=shown, S=sorted(S), T=sorted(T), lhs=lhs, rhs=rhs)

            free = [c for c in palette if c not in S | T]
            S2, T2 = _random_subset(rng, free), _random_subset(rng, free)
            total = damage(seq, S | S2, T | T2)
            if total != d + damage(seq, S2, T2):
                tally.fail(kind="additivity", lists=shown, S=sorted(S), T=sorted(T), S2=sorted(S2), T2=sorted(T2))

            c, c2 = rng.choice(palette), rng.choice(palette)
            single = damage(seq, {c}, {c2})
            if single not in (0, 1, 2) or (single == 2 and n == 1 and c == c2):
                tally.fail(kind="trichotomy", lists=shown, c=c, c2=c2, damage=single)
        except CASE_ERRORS as e:
            tally.fail(kind="error", lists=shown, S=sorted(S), T=sorted(T), error=str(e))
    return tally


# -------------------------------------------------------------------
# 3) slp identities
# -------------------------------------------------------------------
def criterion_slp_identities(cfg: RunConfig, prof: dict) -> Tally:
    tally = Tally(3, "slp identities on uniform-interior paths")
    rng = cfg.rng(3)
    printed = {"pairing_identity_from_l1": [0, 0], "hat_lower_bound_from_l1": [0, 0]}
    for _ in range(prof["identity_samples"]):
        n = rng.choice((3, 5, 7))
        l1, l2 = rng.randint(1, 5), rng.randint(1, 5)
        palette = range(max(l1, l2) + rng.randint(0, 3))
        seq = [frozenset(rng.sample(palette, l1))] + [frozenset(rng.sample(palette, l2)) for _ in range(n - 1)]
        tally.checked += 1
        report = slp_identity_check(seq)
        if not report["hypotheses_ok"] or not report["ok"]:
            tally.fail(lists=[sorted(x) for x in seq], checks=report["checks"], issues=report["hypothesis_issues"])
            continue
        for item in report["adjudication"]:
            printed[item["name"]][0] += 1
            if not item["ok"]:
                printed[item["name"]][1] += 1
            if item["expected"] is not None and item["ok"] != item["expected"]:
                tally.fail(lists=[sorted(x) for x in seq], adjudication=item)
    tally.notes = {name: {"evaluated": a, "printed_form_failed": b} for name, (a, b) in printed.items()}
    return tally


# -------------------------------------------------------------------
# 4) + 5) lemma sweeps
# -------------------------------------------------------------------
def criterion_main_lemma(cfg: RunConfig, prof: dict) -> Tally:
    tally = Tally(4, "main lemma sweep")
    for offset in (1, 2):
        report = verify_main_lemma(prof["lemma_lmax"], offset)
        tally.checked += report.cells_checked
        for name, verdict in report.verdicts.items():
            if not verdict["holds"]:
                tally.fail(floor_offset=offset, verdict=name, exceptions=verdict["exceptions"],
                           first=report.violations[:1])
        tally.notes[f"floor_k+{offset}"] = {"equality_cases": len(report.equality_cases), **report.verdicts}
    return tally


def criterion_binomial_identities(cfg: RunConfig, prof: dict) -> Tally:
    tally = Tally(5, "binomial identity families")
    report = verify_binomial_identities(prof["lemma_lmax"])
    tally.checked = report.cells_checked
    for name, verdict in report.verdicts.items():
        if not verdict["holds"]:
            tally.fail(family=name, exceptions=verdict["exceptions"])
    printed = report.adjudication["half_split_printed"]
    if not printed["refuted"]:
        tally.fail(family="half_split_printed", detail="printed variant was expected to fail somewhere")
    tally.notes = {"verdicts": report.verdicts, "adjudication": report.adjudication}
    return tally


# -------------------------------------------------------------------
# 6) odd cycles
# -------------------------------------------------------------------
def criterion_odd_cycles(cfg: RunConfig, prof: dict) -> Tally:
    tally = Tally(6, "odd cycles at a/b = 2 + 1/k")
    rng = cfg.rng(6)
    per_cell = {}
    for k, b in product((1, 2, 3), (1, 2, 3)):
        a = -(-(2 * k + 1) * b // k)
        per_cell[f"k={k},b={b}"] = prof["cycle_samples"]
        for _ in range(prof["cycle_samples"]):
            palette = rng.randint(a, 2 * a + 1)
            lists = {f"v{j}": frozenset(rng.sample(range(palette), a)) for j in range(2 * k + 1)}
            tally.checked += 1
            try:
                color_odd_cycle(CycleInstance(k, a, b, lists))
            except CASE_ERRORS as e:
                tally.fail(k=k, a=a, b=b, lists=_sorted_lists(lists), error=str(e))
    tally.notes = {"cases_per_cell": per_cell}
    return tally


# -------------------------------------------------------------------
# 7) + 8) theta solving and pair search
# -------------------------------------------------------------------
def adversarial_lists(theta: ThetaGraph, m: int) -> Iterator[tuple[str, Lists]]:
    q = 2 * m + 1
    base = frozenset(range(q))
    yield "all_equal", {v: base for v in theta.vertices}
    yield "disjoint", {v: frozenset(range(i * q, (i + 1) * q)) for i, v in enumerate(theta.vertices)}

    near = {HUB_U: base, HUB_V: base}
    for i, path in enumerate(theta.paths):
        for j, w in enumerate(path, start=1):
            near[w] = frozenset(range(q + 1)) - {(i + j) % (q + 1)}
    yield "near_equal", near

    shifted = frozenset(range(m, m + q))
    split = {HUB_U: base, HUB_V: shifted}
    for path in theta.paths:
        for j, w in enumerate(path):
            split[w] = shifted if j % 2 == 0 else base
    yield "hub_split", split


def theorem_instances(cfg: RunConfig, prof: dict) -> Iterator[tuple[str, int, str, ThetaGraph, Lists]]:
    rng = cfg.rng(7)
    for shape in cfg.targets["theorem_shapes"]:
        theta = build_theta(shape["lengths"])
        for m in cfg.targets["m_values"]:
            for kind, lists in adversarial_lists(theta, m):
                yield shape["label"], m, kind, theta, lists
            q = 2 * m + 1
            for _ in range(prof["theta_random"]):
                yield shape["label"], m, "random", theta, random_lists(rng, theta.vertices, q, rng.randint(q, q + 3))


def criterion_theta_solver(cfg: RunConfig, prof: dict) -> Tally:
    tally = Tally(7, "theorem-guided theta solving")
    per_kind: dict[str, int] = {}
    for label, m, kind, theta, lists in theorem_instances(cfg, prof):
        tally.checked += 1
        per_kind[kind] = per_kind.get(kind, 0) + 1
        try:
            phi = solve(theta, lists, m)
        except CASE_ERRORS as e:
            tally.fail(shape=label, m=m, kind=kind, lists=_sorted_lists(lists), error=str(e))
            continue
        if phi is None or phi.certificate != THEOREM_GUIDED:
            tally.fail(shape=label, m=m, kind=kind, lists=_sorted_lists(lists),
                       certificate=None if phi is None else phi.certificate)
            continue
        issues = verify_coloring(theta.graph, lists, m, phi)
        if issues:
            tally.fail(shape=label, m=m, kind=kind, lists=_sorted_lists(lists), issues=issues[:5])
    tally.notes = {"instances_by_kind": per_kind}
    return tally


def _conditions_for(theta: ThetaGraph, lists: Lists, m: int) -> tuple[ThetaGraph, Lists, dict]:
    family = theorem_family(theta)
    if family == "theta4":
        q = 2 * m + 1
        trimmed = {v: trim_list(lists[v], q) for v in theta.vertices}
        return theta, trimmed, check_conditions_t(theta, trimmed, q, 0, m)
    if family == "odd":
        hub_trimmed = dict(lists)
        hub_trimmed[HUB_U] = trim_list(lists[HUB_U], 2 * m)
        theta, lists, _ = split_odd_theta(theta, hub_trimmed, m)
    trimmed = trim_even_lists(theta, lists, m)
    return theta, trimmed, check_conditions_c(theta, trimmed, 2 * m, 0, m)


def tau_instance(rng: random.Random, theta: ThetaGraph) -> tuple[int, int, Lists, dict]:
    """One random instance with tau > 0; returns (m, tau, lists, condition report)."""
    family = theorem_family(theta)
    if family == "theta4":
        m = rng.randint(1, 2)
        tau = rng.randint(1, m)
        ell = rng.randint(max(1, m - tau), 2 * m + 1)
        order = theta4_order(theta)
        sizes = {v: 2 * m + 1 for v in theta.vertices}
        for i in order:
            sizes[theta.paths[i][0]] = 2 * m + 1 - tau
        sizes[theta.paths[order[3]][-1]] = 2 * m + 1 - tau
        check = check_conditions_t
    elif family == "even":
        m, tau = rng.randint(2, 3), 2
        lo = max(2, 2 * (-(-m // 2)) - tau, m - tau)
        ell = rng.choice((lo + lo % 2, lo + lo % 2 + 2))
        sizes = {v: 2 * m + 1 for v in theta.vertices}
        for path in theta.paths:
            sizes[path[0]] = 2 * m - tau
            sizes[path[-1]] = 2 * m + 1 - tau
        check = check_conditions_c
    else:
        raise InputError(f"tau > 0 instances need an even or Θ_{{2,2,2,2p}} shape, got {theta.lengths}")
    sizes[HUB_U] = sizes[HUB_V] = ell
    lists = random_lists(rng, theta.vertices, sizes.__getitem__, 2 * m + 3)
    return m, tau, lists, check(theta, lists, ell, tau, m)


def criterion_pair_search(cfg: RunConfig, prof: dict) -> Tally:
    tally = Tally(8, "pair search under validated conditions")
    zero_tau = 0
    for label, m, kind, theta, lists in theorem_instances(cfg, prof):
        tally.checked += 1
        zero_tau += 1
        try:
            th, trimmed, report = _conditions_for(theta, lists, m)
            if not report["ok"]:
                failed = [k for k, it in report["items"].items() if not it["ok"]]
                tally.fail(shape=label, m=m, kind=kind, tau=0, failed_conditions=failed)
                continue
            find_pair(th, trimmed, m, report["budgets"], conditions_ok=True)
        except CASE_ERRORS as e:
            tally.fail(shape=label, m=m, kind=kind, tau=0, lists=_sorted_lists(lists), error=str(e))

    rng = cfg.rng(8)
    shapes = [build_theta(s["lengths"]) for s in cfg.targets["tau_shapes"]]
    target = prof["tau_instances"]
    satisfied = attempts = 0
    while satisfied < target and attempts < 200 * target:
        attempts += 1
        theta = shapes[attempts % len(shapes)]
        m, tau, lists, report = tau_instance(rng, theta)
        if not report["ok"]:
            continue
        satisfied += 1
        tally.checked += 1
        try:
            find_pair(theta, lists, m - tau, report["budgets"], conditions_ok=True)
        except CASE_ERRORS as e:
            tally.fail(shape=list(theta.lengths), m=m, tau=tau, lists=_sorted_lists(lists), error=str(e))
    if target and not satisfied:
        tally.fail(kind="tau>0", detail=f"no instance satisfied the conditions in {attempts} attempts")
    tally.notes = {"tau_zero_instances": zero_tau, "tau_positive_instances": satisfied, "tau_attempts": attempts}
    return tally


# -------------------------------------------------------------------
# 9) odd-theta splitting
# -------------------------------------------------------------------
def criterion_split(cfg: RunConfig, prof: dict) -> Tally:
    tally = Tally(9, "odd-theta split round trips")
    rng = cfg.rng(9)
    shapes = [build_theta(s["lengths"]) for s in cfg.targets["split_shapes"]]
    for i in range(prof["split_instances"]):
        theta = shapes[i % len(shapes)]
        m = rng.choice(cfg.targets["m_values"])
        q = 2 * m + 1
        lists = random_lists(rng, theta.vertices, q, rng.randint(q, q + 3))
        tally.checked += 1
        try:
            hub_trimmed = dict(lists)
            hub_trimmed[HUB_U] = trim_list(lists[HUB_U], 2 * m)
            split, split_lists, smap = split_odd_theta(theta, hub_trimmed, m)
            phi = pull_back_coloring(solve_even_theta(split, split_lists, m), smap)
        except CASE_ERRORS as e:
            tally.fail(shape=list(theta.lengths), m=m, lists=_sorted_lists(lists), error=str(e))
            continue
        issues = verify_coloring(theta.graph, lists, m, phi)
        if issues:
            tally.fail(shape=list(theta.lengths), m=m, lists=_sorted_lists(lists), issues=issues[:5])
    return tally


# -------------------------------------------------------------------
# 10) 2-choosability and critical families
# -------------------------------------------------------------------
def criterion_two_choosability(cfg: RunConfig, prof: dict) -> Tally:
    tally = Tally(10, "2-choosability and 3-choice-critical families vs oracle")
    rng = cfg.rng(10)
    corpus = list(graph_corpus(prof["corpus_max_vertices"]))
    if len(corpus) > prof["corpus_sample"]:
        corpus = rng.sample(corpus, prof["corpus_sample"])

    for g in corpus:
        tally.checked += 1
        edges = sorted(tuple(sorted(e)) for e in g.edges)
        claim = is_2_choosable(g)
        if claim:
            palette = min(prof["ert_palette"], 2 * g.number_of_nodes())
            verdict = check_choosable(g, 2, 1, SamplerConfig(palette_size=palette))["verdict"]
            agrees = verdict == "choosable_over_palette"
        else:
            agrees = find_witness(g, 2, 1, prof["witness_palette"]) is not None
        if not agrees:
            tally.fail(kind="corpus", edges=edges, classifier=claim)
        cls = is_3_choice_critical(g)
        if cls.three_choice_critical and claim:
            tally.fail(kind="corpus", edges=edges, detail="critical graph classified 2-choosable")

    smallest: dict[Family, nx.Graph] = {}
    members = 0
    constructed = 0
    for name, family, g in critical_family_members(prof["family_classify_vertices"]):
        members += 1
        tally.checked += 1
        got = is_3_choice_critical(g).family
        if got != family:
            tally.fail(kind="member", member=name, expected=family.value, got=got.value)
        if family not in smallest or g.number_of_nodes() < smallest[family].number_of_nodes():
            smallest[family] = g
        lists = bad_two_assignment(g)
        if lists is None or find_lb_coloring(g, lists, 1) is not None:
            tally.fail(kind="member", member=name, detail="constructed 2-assignment is colourable")
        else:
            constructed += 1
        # exhaustive search only where the canonical stream stays small
        if g.number_of_nodes() <= prof["family_max_vertices"]:
            if find_witness(g, 2, 1, prof["witness_palette"]) is None:
                tally.fail(kind="member", member=name, detail="no bad 2-assignment found")

    for family, g in smallest.items():
        n = g.number_of_nodes()
        palette = prof["edge_palette"] if n <= prof["family_max_vertices"] else 3
        for a, b in g.edges:
            tally.checked += 1
            h = nx.Graph(g)
            h.remove_edge(a, b)
            verdict = check_choosable(h, 2, 1, SamplerConfig(palette_size=palette))["verdict"]
            sampled = check_choosable(h, 2, 1, SamplerConfig(
                mode="random", palette_size=max(palette, 4), sample_count=prof["edge_samples"], seed=cfg.seed,
            ))["verdict"]
            if not is_2_choosable(h) or verdict != "choosable_over_palette" or sampled != "no_counterexample":
                tally.fail(kind="edge_deleted", family=family.value, edge=[a, b], oracle=verdict, sampled=sampled)
    tally.notes = {"corpus_graphs": len(corpus), "family_members": members,
                   "members_with_witness": constructed,
                   "families_edge_checked": sorted(f.value for f in smallest)}
    return tally


# -------------------------------------------------------------------
# 11) constrained pair counts
# -------------------------------------------------------------------
def criterion_pair_counts(cfg: RunConfig, prof: dict) -> Tally:
    tally = Tally(11, "constrained pair counts vs F(x,y)")
    rng = cfg.rng(11)
    for _ in range(prof["count_samples"]):
        ell = rng.randint(2, 10)
        k = rng.randint(1, ell - 1)
        x = rng.randint(0, ell)
        y = rng.randint(0, ell - x)
        damages = [2] * x + [1] * y + [0] * (ell - x - y)
        rng.shuffle(damages)
        for offset in (1, 2):
            tally.checked += 1
            counted = count_constrained_pairs(damages, k, offset)
            expected = f_at(ell, k, x, y, offset)
            if counted != expected:
                tally.fail(ell=ell, k=k, x=x, y=y, floor_offset=offset, counted=counted, expected=expected)
    return tally


CRITERIA: dict[int, Callable[[RunConfig, dict], Tally]] = {
    1: criterion_path_criterion,
    2: criterion_damage,
    3: criterion_slp_identities,
    4: criterion_main_lemma,
    5: criterion_binomial_identities,
    6: criterion_odd_cycles,
    7: criterion_theta_solver,
    8: criterion_pair_search,
    9: criterion_split,
    10: criterion_two_choosability,
    11: criterion_pair_counts,
}


# -------------------------------------------------------------------
# runner
# -------------------------------------------------------------------
def run_suite(cfg: RunConfig) -> dict:
    prof = cfg.profile()
    selected = sorted(cfg.only) if cfg.only else sorted(CRITERIA)

    def run_one(cid):
        logger.info("[SUITE] criterion %d started", cid)
        tally = CRITERIA[cid](cfg, prof)
        logger.info("[SUITE] criterion %d %s: %d checked, %d failures",
                    cid, tally.name, tally.checked, len(tally.failures))
        return tally.to_json()

    results = []
    with ThreadPoolExecutor(max_workers=max(1, cfg.workers)) as ex:
        for res in ex.map(run_one, selected):
            results.append(res)

    return {
        "seed": cfg.seed,
        "profile": cfg.profile_name,
        "settings": prof,
        "criteria": results,
        "ok": all(r["ok"] for r in results),
    }


def summary_frame(report: dict) -> pd.DataFrame:
    rows = [
        {"criterion": r["criterion"], "name": r["name"], "checked": r["checked"],
         "failures": r["failures"], "ok": r["ok"]}
        for r in report["criteria"]
    ]
    return pd.DataFrame(rows, columns=["criterion", "name", "checked", "failures", "ok"])


def write_suite_xlsx(report: dict, path: str):
    failures = [
        {"criterion": r["criterion"], "example": dumps_report(ex)}
        for r in report["criteria"] for ex in r["examples"]
    ]
    with pd.ExcelWriter(path, engine="openpyxl") as writer:
        summary_frame(report).to_excel(writer, sheet_name="criteria", index=False)
        pd.DataFrame(failures, columns=["criterion", "example"]).to_excel(writer, sheet_name="failures", index=False)


def parse_only(raw: str | None) -> tuple[int, ...]:
    if not raw:
        return ()
    try:
        return tuple(int(x) for x in raw.split(",") if x.strip())
    except ValueError:
        raise InputError(f"--only expects comma-separated criterion ids, got {raw!r}")


# -------------------------------------------------------------------
# MAIN
# -------------------------------------------------------------------
def main(argv=None):
    ap = argparse.ArgumentParser(description="Acceptance suite for the choosability toolkit")
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--quick", action="store_true", help="small sample counts")
    ap.add_argument("--lemma-lmax", type=int, default=None)
    ap.add_argument("--only", default=None, help="comma-separated criterion ids, e.g. 4,5,11")
    ap.add_argument("--targets", default=SUITE_TARGETS_JSON)
    ap.add_argument("--workers", type=int, default=SUITE_WORKERS)
    ap.add_argument("--out", default=None)
    ap.add_argument("--xlsx", default=None)
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args(argv)

    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(message)s",
    )
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        cfg = RunConfig(seed=args.seed, quick=args.quick, lemma_lmax=args.lemma_lmax,
                        workers=args.workers, targets_path=args.targets, only=parse_only(args.only))
        report = run_suite(cfg)
    except (InputError, OSError) as e:
        logger.error("[SUITE] %s", e)
        return 2

    print("=== ACCEPTANCE SUITE ===", file=sys.stderr)
    print(summary_frame(report).to_string(index=False), file=sys.stderr)
    text = dumps_report(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    if args.xlsx:
        write_suite_xlsx(report, args.xlsx)
        logger.info("[SUITE] wrote %s", args.xlsx)
    print("\nDone.", file=sys.stderr)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
