"""
graph_classifier.py - núcleo, 2-escolhabilidade e famílias 3-choice-critical

- core_of: remove vértices de grau 1 até estabilizar (K_1 para florestas)
- is_2_choosable: core de cada componente é K_1, ciclo par ou Θ_{2,2,2p}
- is_3_choice_critical: odd cycle; two even cycles joined by a path; two even
  cycles sharing a vertex; Θ_{2r,2s,2t} (r>=1, s,t>1); Θ_{2r+1,2s+1,2t+1}
  (r>=0, s,t>0); Θ_{2,2,2,2t} (t>=1)
- bad_two_assignment: 2-listas sem coloração para cada membro dessas famílias
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import count, product
from typing import Iterator

import networkx as nx

from coloring_model import (
    Lists,
    branch_decomposition,
    build_theta,
    cycle_graph,
    cycle_space_dimension,
    graph_to_json,
    make_graph,
    recognize_theta,
)


logger = logging.getLogger(__name__)


class Family(str, Enum):
    NONE = "None"
    ODD_CYCLE = "OddCycle"
    TWO_CYCLES_PATH = "TwoCyclesPath"
    TWO_CYCLES_VERTEX = "TwoCyclesVertex"
    THETA_EVEN = "ThetaEven"
    THETA_ODD = "ThetaOdd"
    THETA_2222T = "Theta2222t"


@dataclass(frozen=True)
class Classification:
    core: nx.Graph
    two_choosable: bool
    three_choice_critical: bool
    family: Family

    def to_json(self) -> dict:
        return {
            "core": graph_to_json(self.core),
            "two_choosable": self.two_choosable,
            "three_choice_critical": self.three_choice_critical,
            "family": self.family.value,
        }


def core_of(graph: nx.Graph) -> nx.Graph:
    if graph.number_of_nodes() == 0:
        return nx.freeze(nx.Graph())
    core = nx.k_core(nx.Graph(graph), 2)
    if core.number_of_nodes() == 0:
        first = next(iter(graph.nodes))
        return make_graph([first], [])
    return nx.freeze(nx.Graph(core))


def _is_cycle(g: nx.Graph) -> bool:
    return g.number_of_nodes() >= 3 and nx.is_connected(g) and all(d == 2 for _, d in g.degree)


def _theta_lengths(g: nx.Graph) -> list[int] | None:
    emb = recognize_theta(g)
    return sorted(emb.theta.lengths) if emb else None


def _component_2_choosable(component: nx.Graph) -> bool:
    core = core_of(component)
    if core.number_of_nodes() == 1:
        return True
    if _is_cycle(core):
        return core.number_of_nodes() % 2 == 0
    lengths = _theta_lengths(core)
    return lengths is not None and len(lengths) == 3 and lengths[:2] == [2, 2] and lengths[2] % 2 == 0


def is_2_choosable(graph: nx.Graph) -> bool:
    if graph.number_of_nodes() == 0:
        return True
    return all(
        _component_2_choosable(graph.subgraph(c))
        for c in nx.connected_components(graph)
    )


def _critical_family(g: nx.Graph) -> Family:
    """Família 3-choice-critical de um grafo conexo de grau mínimo >= 2."""
    dim = cycle_space_dimension(g)
    degrees = Counter(d for _, d in g.degree if d != 2)
    if dim == 1:
        return Family.ODD_CYCLE if g.number_of_nodes() % 2 == 1 else Family.NONE

    branches = branch_decomposition(g)
    if dim == 2 and degrees == Counter({3: 2}):
        loops = [b for b in branches if b.is_loop]
        if not loops:
            ks = sorted(b.length for b in branches)
            if all(k % 2 == 0 for k in ks) and ks[1] >= 4:
                return Family.THETA_EVEN
            if all(k % 2 == 1 for k in ks) and ks[1] >= 3:
                return Family.THETA_ODD
            return Family.NONE
        if len(loops) == 2 and loops[0].start != loops[1].start and all(b.length % 2 == 0 for b in loops):
            return Family.TWO_CYCLES_PATH
        return Family.NONE
    if dim == 2 and degrees == Counter({4: 1}):
        if len(branches) == 2 and all(b.is_loop and b.length % 2 == 0 for b in branches):
            return Family.TWO_CYCLES_VERTEX
        return Family.NONE
    if dim == 3 and degrees == Counter({4: 2}):
        ks = _theta_lengths(g)
        if ks and ks[:3] == [2, 2, 2] and ks[3] % 2 == 0:
            return Family.THETA_2222T
    return Family.NONE


def is_3_choice_critical(graph: nx.Graph) -> Classification:
    core = core_of(graph)
    two = is_2_choosable(graph)
    family = Family.NONE
    if (
        graph.number_of_nodes() >= 3
        and nx.is_connected(graph)
        and min(d for _, d in graph.degree) >= 2
    ):
        family = _critical_family(graph)
    critical = family is not Family.NONE
    logger.debug("[CLASSIFY] n=%d e=%d -> %s", graph.number_of_nodes(), graph.number_of_edges(), family.value)
    return Classification(core, two, critical, family)


# -------------------------------------------------------------------
# bad 2-assignments
# -------------------------------------------------------------------
def bad_two_assignment(graph: nx.Graph) -> Lists | None:
    """
    Atribuição de 2-listas sem coloração própria para um membro das famílias
    3-choice-critical (None fora delas). Cores novas vêm de um contador.

    A chain x -> y gives the inner vertices {x,s1},{s1,s2},..,{s_r,y}: once the
    vertex before it takes x, every inner colour is forced and the last one
    is blocked by y.
    """
    family = is_3_choice_critical(graph).family
    if family is Family.NONE:
        return None
    if family is Family.ODD_CYCLE:
        return {v: frozenset({0, 1}) for v in graph.nodes}

    fresh = count()
    lists: Lists = {}

    def chain(inner, x, y):
        seq = [x] + [next(fresh) for _ in range(len(inner) - 1)] + [y]
        for v, pair in zip(inner, zip(seq, seq[1:])):
            lists[v] = frozenset(pair)

    def oriented(branch, start):
        return branch.inner if branch.start == start else branch.inner[::-1]

    branches = branch_decomposition(graph)
    if family in (Family.THETA_EVEN, Family.THETA_ODD, Family.THETA_2222T):
        u = branches[0].start
        v = branches[0].end
        paths = sorted((oriented(b, u) for b in branches), key=len)
        if family is Family.THETA_2222T:
            cu, cv = (next(fresh), next(fresh)), (next(fresh), next(fresh))
            lists[u], lists[v] = frozenset(cu), frozenset(cv)
            for inner, (x, y) in zip(paths, product(cu, cv)):
                chain(inner, x, y)
            return lists
        c1, c2 = next(fresh), next(fresh)
        lists[u] = lists[v] = frozenset({c1, c2})
        # the shortest path alternates c1/c2: even length blocks the unequal hub pairs, odd the equal ones
        for w in paths[0]:
            lists[w] = frozenset({c1, c2})
        if family is Family.THETA_EVEN:
            chain(paths[1], c1, c1)
            chain(paths[2], c2, c2)
        else:
            chain(paths[1], c1, c2)
            chain(paths[2], c2, c1)
        return lists

    loops = [b for b in branches if b.is_loop]
    if family is Family.TWO_CYCLES_VERTEX:
        w = loops[0].start
        c1, c2 = next(fresh), next(fresh)
        lists[w] = frozenset({c1, c2})
        chain(loops[0].inner, c1, c1)
        chain(loops[1].inner, c2, c2)
        return lists

    # TWO_CYCLES_PATH: the first cycle blocks one colour at its hub, the other is forced across
    bridge = next(b for b in branches if not b.is_loop)
    wa, wb = bridge.start, bridge.end
    loop_a = next(b for b in loops if b.start == wa)
    loop_b = next(b for b in loops if b.start == wb)
    c1, e, g = next(fresh), next(fresh), next(fresh)
    lists[wa] = frozenset({c1, e})
    chain(loop_a.inner, c1, c1)
    chain(bridge.inner + (wb,), e, g)
    chain(loop_b.inner, g, g)
    return lists


# -------------------------------------------------------------------
# corpus
# -------------------------------------------------------------------
def _two_cycles(a: int, b: int, path_length: int) -> nx.Graph:
    """C_a e C_b ligados por um caminho de comprimento path_length (0 = vértice comum)."""
    left = [f"a{i}" for i in range(a)]
    right = [left[0] if path_length == 0 else "b0"] + [f"b{i}" for i in range(1, b)]
    edges = [(left[i], left[(i + 1) % a]) for i in range(a)]
    edges += [(right[i], right[(i + 1) % b]) for i in range(b)]
    chain = [left[0]] + [f"c{i}" for i in range(1, path_length)] + [right[0]]
    if path_length:
        edges += list(zip(chain, chain[1:]))
    vertices = left + [v for v in right if v not in left] + chain[1:-1]
    return make_graph(vertices, edges)


def critical_family_members(max_vertices: int) -> Iterator[tuple[str, Family, nx.Graph]]:
    for size in range(3, max_vertices + 1, 2):
        yield f"C{size}", Family.ODD_CYCLE, cycle_graph(size)

    for a in range(4, max_vertices + 1, 2):
        for b in range(a, max_vertices + 1, 2):
            if a + b - 1 <= max_vertices:
                yield f"C{a}.C{b}", Family.TWO_CYCLES_VERTEX, _two_cycles(a, b, 0)
            for p in range(1, max_vertices - a - b + 2):
                yield f"C{a}-{p}-C{b}", Family.TWO_CYCLES_PATH, _two_cycles(a, b, p)

    def theta_size(ks):
        return 2 + sum(k - 1 for k in ks)

    top = max_vertices
    for k1 in range(1, top):
        for k2 in range(max(k1, 2), top):
            for k3 in range(k2, top):
                ks = (k1, k2, k3)
                if theta_size(ks) > max_vertices:
                    continue
                if all(k % 2 == 0 for k in ks) and k2 >= 4:
                    yield f"Theta{ks}", Family.THETA_EVEN, build_theta(ks).graph
                elif all(k % 2 == 1 for k in ks) and k2 >= 3:
                    yield f"Theta{ks}", Family.THETA_ODD, build_theta(ks).graph

    for t in range(1, max_vertices):
        ks = (2, 2, 2, 2 * t)
        if theta_size(ks) <= max_vertices:
            yield f"Theta{ks}", Family.THETA_2222T, build_theta(ks).graph


def graph_corpus(max_vertices: int) -> Iterator[nx.Graph]:
    """Todos os grafos conexos do atlas (<= 7 vértices) com grau mínimo >= 2."""
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n < 3 or n > max_vertices:
            continue
        if not nx.is_connected(g) or min(d for _, d in g.degree) < 2:
            continue
        yield make_graph([str(v) for v in g.nodes], [(str(a), str(b)) for a, b in g.edges])
