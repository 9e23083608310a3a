"""
theta_solver.py - (2m+1,m)-coloração de grafos theta

Families handled by construction:
  - Θ_{2r,2s,2t} (all lengths even and >= 4): trim, pick (S,T), extend paths
  - Θ_{2r+1,2s+1,2t+1} (all lengths odd and >= 3): split hub u, solve the
    even theta, pull the colouring back
  - Θ_{2,2,2,2p}: trim everything to 2m+1, pick (S,T), extend paths
Everything else (or lists too short for the family) goes to the oracle.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping

import networkx as nx

from coloring_model import (
    HUB_U,
    HUB_V,
    ColoringContractError,
    FoldColoring,
    InputError,
    Lists,
    ThetaGraph,
    build_theta,
    recognize_theta,
    rename_vertices,
    trim_list,
    verify_coloring,
)
from oracle_search import find_lb_coloring
from pair_search import (
    check_conditions_c,
    check_conditions_t,
    find_pair,
    theta4_order,
)
from path_calculus import color_path, reduce_lists


logger = logging.getLogger(__name__)

THETA_WORKERS = int(os.environ.get("THETA_WORKERS", "4"))

THEOREM_GUIDED = "theorem-guided"
ORACLE = "oracle"


class SplitInvariantError(RuntimeError):
    """Split vertices did not receive the forced complement of the new hub."""


# -------------------------------------------------------------------
# helpers
# -------------------------------------------------------------------
def _check_lists_cover(theta: ThetaGraph, lists: Mapping[str, frozenset[int]]):
    missing = [v for v in theta.vertices if v not in lists]
    if missing:
        raise InputError(f"no list for vertices {missing}")


def _too_short(lists, vertices, need) -> list[str]:
    return [f"|L({w})|={len(lists[w])} < {need}" for w in vertices if len(lists[w]) < need]


def theorem_family(theta: ThetaGraph) -> str | None:
    ks = theta.lengths
    if len(ks) == 3 and all(k % 2 == 0 and k >= 4 for k in ks):
        return "even"
    if len(ks) == 3 and all(k % 2 == 1 and k >= 3 for k in ks):
        return "odd"
    if len(ks) == 4 and sorted(ks)[:3] == [2, 2, 2] and sorted(ks)[3] % 2 == 0:
        return "theta4"
    return None


def _size_issues(theta: ThetaGraph, lists, m: int, family: str) -> list[str]:
    if family == "theta4":
        return _too_short(lists, theta.vertices, 2 * m + 1)
    issues = _too_short(lists, theta.hubs, 2 * m)
    heads = theta.hub_neighbours(HUB_U) if family == "even" else []
    issues += _too_short(lists, heads, 2 * m)
    rest = [w for p in theta.paths for w in p if w not in heads]
    issues += _too_short(lists, rest, 2 * m + 1)
    return issues


def _extend(theta: ThetaGraph, lists, m: int, S: frozenset[int], T: frozenset[int]) -> FoldColoring:
    """φ(u)=S, φ(v)=T e cada caminho colorido a partir das listas reduzidas."""

    def color_one(i):
        seq = reduce_lists(theta.path_lists(lists, i), S, T)
        return i, color_path(seq, m)

    assignment = {HUB_U: S, HUB_V: T}
    with ThreadPoolExecutor(max_workers=THETA_WORKERS) as ex:
        for i, picks in ex.map(color_one, range(len(theta.paths))):
            if picks is None:
                raise ColoringContractError(f"path {i} not colourable after removing S={sorted(S)} T={sorted(T)}")
            assignment.update(zip(theta.paths[i], picks))
    return FoldColoring(m, assignment, THEOREM_GUIDED)


def _verified(theta: ThetaGraph, lists, m: int, phi: FoldColoring) -> FoldColoring:
    issues = verify_coloring(theta.graph, lists, m, phi)
    if issues:
        raise ColoringContractError(f"solver produced an invalid colouring: {issues[:5]}")
    return phi


# -------------------------------------------------------------------
# even theta
# -------------------------------------------------------------------
def trim_even_lists(theta: ThetaGraph, lists, m: int) -> Lists:
    out = dict(lists)
    for h in theta.hubs:
        out[h] = trim_list(lists[h], 2 * m)
    for p in theta.paths:
        for w in p:
            if len(lists[w]) > 2 * m + 1:
                out[w] = trim_list(lists[w], 2 * m + 1)
    return out


def solve_even_theta(theta: ThetaGraph, lists: Mapping[str, frozenset[int]], m: int) -> FoldColoring:
    if m < 1:
        raise InputError(f"m must be positive (m={m})")
    if theorem_family(theta) != "even":
        raise InputError(f"expected Θ_{{2r,2s,2t}} with r,s,t >= 2, got lengths {theta.lengths}")
    _check_lists_cover(theta, lists)
    issues = _size_issues(theta, lists, m, "even")
    if issues:
        raise InputError("list sizes too small: " + "; ".join(issues))

    trimmed = trim_even_lists(theta, lists, m)
    report = check_conditions_c(theta, trimmed, 2 * m, 0, m)
    pair = find_pair(theta, trimmed, m, report["budgets"], conditions_ok=report["ok"])
    if pair is None:
        failed = [k for k, it in report["items"].items() if not it["ok"]]
        raise ColoringContractError(f"no admissible pair; failed conditions {failed}")
    logger.debug("[THETA] even %s m=%d: S=%s T=%s (%s)", theta.lengths, m, sorted(pair.S), sorted(pair.T), pair.stage)
    phi = _extend(theta, trimmed, m, pair.S, pair.T)
    return _verified(theta, lists, m, phi)


# -------------------------------------------------------------------
# odd theta: vertex splitting
# -------------------------------------------------------------------
@dataclass(frozen=True)
class SplitMap:
    hub: str
    new_hub: str
    split_vertices: tuple[str, ...]
    hub_list: frozenset[int]
    vertex_map: Mapping[str, str]
    lengths_before: tuple[int, ...]
    lengths_after: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "hub": self.hub,
            "new_hub": self.new_hub,
            "split_vertices": list(self.split_vertices),
            "hub_list": sorted(self.hub_list),
            "lengths_before": list(self.lengths_before),
            "lengths_after": list(self.lengths_after),
        }


def split_odd_theta(theta: ThetaGraph, lists: Mapping[str, frozenset[int]], m: int) -> tuple[ThetaGraph, Lists, SplitMap]:
    """
    Θ_{2r+1,2s+1,2t+1} -> Θ_{2r+2,2s+2,2t+2}: u vira u_1,u_2,u_3 (p{i}_1 no
    novo theta) mais um hub novo u' adjacente aos três.
    """
    ks = theta.lengths
    if len(ks) != 3:
        raise InputError(f"splitting needs three paths, got {len(ks)}")
    if len({k % 2 for k in ks}) != 1 or ks[0] % 2 == 0:
        raise InputError(f"splitting needs all lengths odd, got {ks}")
    if min(ks) < 3:
        raise InputError(f"splitting needs lengths >= 3, got {ks}")
    _check_lists_cover(theta, lists)
    hub_list = frozenset(lists[HUB_U])
    if len(hub_list) != 2 * m:
        raise InputError(f"|L(u)| = {len(hub_list)}; trim the hub list to 2m = {2 * m} before splitting")

    split = build_theta([k + 1 for k in ks])
    vertex_map = {HUB_V: HUB_V}
    for i, path in enumerate(theta.paths):
        for j, w in enumerate(path, start=1):
            vertex_map[w] = f"p{i}_{j + 1}"
    split_vertices = tuple(p[0] for p in split.paths)

    new_lists: Lists = {HUB_U: hub_list}
    for x in split_vertices:
        new_lists[x] = hub_list
    for old, new in vertex_map.items():
        new_lists[new] = frozenset(lists[old])

    smap = SplitMap(HUB_U, HUB_U, split_vertices, hub_list, vertex_map, ks, split.lengths)
    return split, new_lists, smap


def pull_back_coloring(phi: FoldColoring, smap: SplitMap) -> FoldColoring:
    hub_colours = frozenset(phi.assignment[smap.new_hub])
    forced = smap.hub_list - hub_colours
    for x in smap.split_vertices:
        got = frozenset(phi.assignment[x])
        if got != forced:
            raise SplitInvariantError(
                f"split vertex {x} has {sorted(got)}, expected L(u) - φ(u') = {sorted(forced)}"
            )
    assignment = {smap.hub: frozenset(phi.assignment[smap.split_vertices[0]])}
    for old, new in smap.vertex_map.items():
        assignment[old] = frozenset(phi.assignment[new])
    return FoldColoring(phi.fold, assignment, phi.certificate)


def solve_odd_theta(theta: ThetaGraph, lists: Mapping[str, frozenset[int]], m: int) -> FoldColoring:
    _check_lists_cover(theta, lists)
    issues = _size_issues(theta, lists, m, "odd")
    if issues:
        raise InputError("list sizes too small: " + "; ".join(issues))
    trimmed = dict(lists)
    trimmed[HUB_U] = trim_list(lists[HUB_U], 2 * m)
    split, split_lists, smap = split_odd_theta(theta, trimmed, m)
    logger.debug("[THETA] split %s -> %s", theta.lengths, split.lengths)
    phi = pull_back_coloring(solve_even_theta(split, split_lists, m), smap)
    return _verified(theta, lists, m, phi)


# -------------------------------------------------------------------
# Θ_{2,2,2,2p}
# -------------------------------------------------------------------
def solve_generalized_theta4(theta: ThetaGraph, lists: Mapping[str, frozenset[int]], m: int) -> FoldColoring:
    if m < 1:
        raise InputError(f"m must be positive (m={m})")
    theta4_order(theta)
    _check_lists_cover(theta, lists)
    issues = _size_issues(theta, lists, m, "theta4")
    if issues:
        raise InputError("list sizes too small: " + "; ".join(issues))

    trimmed = {v: trim_list(lists[v], 2 * m + 1) for v in theta.vertices}
    report = check_conditions_t(theta, trimmed, 2 * m + 1, 0, m)
    pair = find_pair(theta, trimmed, m, report["budgets"], conditions_ok=report["ok"])
    if pair is None:
        failed = [k for k, it in report["items"].items() if not it["ok"]]
        raise ColoringContractError(f"no admissible pair; failed conditions {failed}")
    phi = _extend(theta, trimmed, m, pair.S, pair.T)
    return _verified(theta, lists, m, phi)


# -------------------------------------------------------------------
# dispatcher
# -------------------------------------------------------------------
def solve(
    theta: ThetaGraph | nx.Graph,
    lists: Mapping[str, frozenset[int]],
    m: int,
    node_budget: int | None = None,
) -> FoldColoring | None:
    if m < 1:
        raise InputError(f"m must be positive (m={m})")
    if not isinstance(theta, ThetaGraph):
        emb = recognize_theta(theta)
        if emb is None:
            raise InputError("graph is not a generalized theta graph")
        for v in lists:
            if v not in emb.to_theta:
                raise InputError(f"list given for unknown vertex {v!r}")
        phi = solve(emb.theta, rename_vertices(lists, emb.to_theta), m, node_budget)
        if phi is None:
            return None
        back = emb.from_theta
        return FoldColoring(phi.fold, {back[v]: cs for v, cs in phi.assignment.items()}, phi.certificate)

    _check_lists_cover(theta, lists)
    family = theorem_family(theta)
    if family and not _size_issues(theta, lists, m, family):
        logger.info("[THETA] %s theta %s, m=%d: theorem-guided", family, list(theta.lengths), m)
        if family == "even":
            return solve_even_theta(theta, lists, m)
        if family == "odd":
            return solve_odd_theta(theta, lists, m)
        return solve_generalized_theta4(theta, lists, m)

    logger.info("[THETA] theta %s, m=%d: oracle fallback", list(theta.lengths), m)
    phi = find_lb_coloring(theta.graph, lists, m, node_budget)
    if phi is None:
        return None
    return _verified(theta, lists, m, phi)
