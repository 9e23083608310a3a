#!/usr/bin/env python3
"""
coloring_model.py - grafos, grafos theta, listas e colorações b-fold

- Graph: networkx.Graph congelado (sem laços, sem arestas paralelas)
- ThetaGraph: hubs u, v + caminhos internos p{i}_{j}
- listas: dict vertex -> frozenset de cores (inteiros >= 0)
- FoldColoring: vertex -> conjunto de b cores
- verify_coloring / canonicalize_assignment
- JSON loaders/dumpers (graph, theta, lists, coloring)

Everything here is a pure function of its inputs; the solvers in the other
modules import from this file only.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx


Lists = dict[str, frozenset[int]]

HUB_U = "u"
HUB_V = "v"


# -------------------------------------------------------------------
# errors
# -------------------------------------------------------------------
class InputError(ValueError):
    """Malformed graph, lists, parameters or JSON (CLI exit code 2)."""


class SearchBudgetExceeded(RuntimeError):
    """Node budget or exhaustive cap exceeded (CLI exit code 3)."""


class ColoringContractError(RuntimeError):
    """A constructive colourer broke its own contract. Must never fire."""


# -------------------------------------------------------------------
# graphs
# -------------------------------------------------------------------
def make_graph(vertices: Iterable[str], edges: Iterable[Sequence[str]]) -> nx.Graph:
    g = nx.Graph()
    for v in vertices:
        v = str(v)
        if v in g:
            raise InputError(f"duplicate vertex {v!r}")
        g.add_node(v)
    for edge in edges:
        if len(edge) != 2:
            raise InputError(f"edge must have two endpoints: {edge!r}")
        a, b = str(edge[0]), str(edge[1])
        if a == b:
            raise InputError(f"self-loop at {a!r}")
        for end in (a, b):
            if end not in g:
                raise InputError(f"edge endpoint {end!r} is not a declared vertex")
        if g.has_edge(a, b):
            raise InputError(f"parallel edge {a!r}-{b!r}")
        g.add_edge(a, b)
    return nx.freeze(g)


def cycle_graph(size: int, prefix: str = "v") -> nx.Graph:
    names = [f"{prefix}{i}" for i in range(size)]
    return make_graph(names, [(names[i], names[(i + 1) % size]) for i in range(size)])


def path_graph(size: int, prefix: str = "v") -> nx.Graph:
    names = [f"{prefix}{i}" for i in range(1, size + 1)]
    return make_graph(names, list(zip(names, names[1:])))


@dataclass(frozen=True)
class Branch:
    start: str
    end: str
    inner: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.inner) + 1

    @property
    def is_loop(self) -> bool:
        return self.start == self.end


def branch_decomposition(graph: nx.Graph) -> list[Branch]:
    """
    Splits the graph into maximal branches whose inner vertices have degree 2
    and whose ends have degree != 2. A branch may return to its start (loop).
    Components without branch vertices (plain cycles) contribute nothing.
    """
    ends = [v for v in graph.nodes if graph.degree(v) != 2]
    end_set = set(ends)
    used = set()
    branches = []
    for s in ends:
        for w in graph.neighbors(s):
            if frozenset((s, w)) in used:
                continue
            used.add(frozenset((s, w)))
            prev, cur = s, w
            inner = []
            while cur not in end_set:
                inner.append(cur)
                nxt = next(x for x in graph.neighbors(cur) if x != prev)
                used.add(frozenset((cur, nxt)))
                prev, cur = cur, nxt
            branches.append(Branch(s, cur, tuple(inner)))
    return branches


def cycle_space_dimension(graph: nx.Graph) -> int:
    return graph.number_of_edges() - graph.number_of_nodes() + nx.number_connected_components(graph)


# -------------------------------------------------------------------
# theta graphs
# -------------------------------------------------------------------
@dataclass(frozen=True)
class ThetaGraph:
    lengths: tuple[int, ...]

    hubs = (HUB_U, HUB_V)

    @cached_property
    def paths(self) -> tuple[tuple[str, ...], ...]:
        # internal path P^i = (p{i}_1 .. p{i}_{k_i - 1}), p{i}_1 adjacent to u
        return tuple(
            tuple(f"p{i}_{j}" for j in range(1, k))
            for i, k in enumerate(self.lengths)
        )

    @property
    def internal_sizes(self) -> tuple[int, ...]:
        return tuple(k - 1 for k in self.lengths)

    @property
    def vertices(self) -> list[str]:
        out = [HUB_U, HUB_V]
        for p in self.paths:
            out.extend(p)
        return out

    @cached_property
    def graph(self) -> nx.Graph:
        edges = []
        for p in self.paths:
            chain = [HUB_U, *p, HUB_V]
            edges.extend(zip(chain, chain[1:]))
        return make_graph(self.vertices, edges)

    def path_lists(self, lists: Mapping[str, frozenset[int]], i: int) -> tuple[frozenset[int], ...]:
        return tuple(lists[w] for w in self.paths[i])

    def hub_neighbours(self, hub: str) -> list[str]:
        side = 0 if hub == HUB_U else -1
        return [p[side] for p in self.paths if p]

    def to_json(self) -> dict:
        return {"theta": {"lengths": list(self.lengths)}}


def build_theta(lengths: Sequence[int]) -> ThetaGraph:
    try:
        lengths = tuple(int(k) for k in lengths)
    except (TypeError, ValueError) as e:
        raise InputError(f"theta lengths must be integers: {lengths!r}") from e
    if len(lengths) < 3:
        raise InputError(f"a theta graph needs at least 3 paths, got {len(lengths)}")
    if any(k < 1 for k in lengths):
        raise InputError(f"theta path lengths must be positive: {lengths}")
    if sum(1 for k in lengths if k == 1) > 1:
        raise InputError(f"two or more length-1 paths give parallel edges: {lengths}")
    return ThetaGraph(lengths)


@dataclass(frozen=True)
class ThetaEmbedding:
    """A plain graph recognised as a theta graph, with its vertex renaming."""

    theta: ThetaGraph
    to_theta: Mapping[str, str] = field(default_factory=dict)

    @property
    def from_theta(self) -> dict[str, str]:
        return {b: a for a, b in self.to_theta.items()}


def recognize_theta(graph: nx.Graph) -> ThetaEmbedding | None:
    """Devolve o theta equivalente (hubs de grau >= 3, resto grau 2) ou None."""
    if graph.number_of_nodes() == 0 or not nx.is_connected(graph):
        return None
    hubs = [v for v in graph.nodes if graph.degree(v) != 2]
    if len(hubs) != 2:
        return None
    u, v = hubs
    if graph.degree(u) < 3 or graph.degree(u) != graph.degree(v):
        return None
    branches = [b for b in branch_decomposition(graph) if b.start == u or b.end == u]
    if any(b.is_loop for b in branches) or len(branches) != graph.degree(u):
        return None
    mapping = {u: HUB_U, v: HUB_V}
    lengths = []
    for i, br in enumerate(branches):
        inner = br.inner if br.start == u else tuple(reversed(br.inner))
        lengths.append(br.length)
        for j, w in enumerate(inner, start=1):
            mapping[w] = f"p{i}_{j}"
    try:
        theta = build_theta(lengths)
    except InputError:
        return None
    return ThetaEmbedding(theta, mapping)


# -------------------------------------------------------------------
# lists and colourings
# -------------------------------------------------------------------
def make_lists(raw: Mapping[str, Iterable[int]]) -> Lists:
    out: Lists = {}
    for v, colours in raw.items():
        cs = []
        for c in colours:
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise InputError(f"colours must be non-negative integers (vertex {v!r}: {c!r})")
            cs.append(c)
        out[str(v)] = frozenset(cs)
    return out


def check_lists(graph: nx.Graph, lists: Mapping[str, frozenset[int]], cover: bool = True):
    for v in lists:
        if v not in graph:
            raise InputError(f"list given for unknown vertex {v!r}")
    if cover:
        missing = [v for v in graph.nodes if v not in lists]
        if missing:
            raise InputError(f"no list for vertices {missing}")


def trim_list(colours: Iterable[int], size: int) -> frozenset[int]:
    # drop the largest colours
    return frozenset(sorted(colours)[:size])


def rename_vertices(mapping: Mapping[str, frozenset[int]], names: Mapping[str, str]) -> Lists:
    return {names[v]: cs for v, cs in mapping.items()}


@dataclass(frozen=True)
class FoldColoring:
    fold: int
    assignment: Mapping[str, frozenset[int]]
    certificate: str = ""

    def to_json(self) -> dict:
        out = {
            "fold": self.fold,
            "assignment": {v: sorted(cs) for v, cs in self.assignment.items()},
        }
        if self.certificate:
            out["certificate"] = self.certificate
        return out


def verify_coloring(
    graph: nx.Graph,
    lists: Mapping[str, frozenset[int]] | None,
    b: int,
    coloring: FoldColoring,
) -> list[dict]:
    """
    Lista todas as violações (tamanho, inclusão na lista, arestas).
    Lista vazia <=> coloring é uma (L,b)-coloração.
    """
    issues = []
    phi = coloring.assignment
    for v in graph.nodes:
        if v not in phi:
            issues.append({"kind": "missing", "vertex": v})
            continue
        got = phi[v]
        if len(got) != b:
            issues.append({"kind": "size", "vertex": v, "expected": b, "got": len(got)})
        if lists is not None:
            extra = set(got) - set(lists.get(v, frozenset()))
            if extra:
                issues.append({"kind": "containment", "vertex": v, "outside_list": sorted(extra)})
    for v in phi:
        if v not in graph:
            issues.append({"kind": "unknown", "vertex": v})
    for a, c in graph.edges:
        if a in phi and c in phi:
            shared = set(phi[a]) & set(phi[c])
            if shared:
                issues.append({"kind": "edge", "edge": [a, c], "shared": sorted(shared)})
    return issues


def canonicalize_assignment(graph: nx.Graph, lists: Mapping[str, frozenset[int]]) -> Lists:
    """
    Renomeia as cores por ordem de primeira ocorrência.

    A colour is keyed by its membership pattern over the vertex order (first
    vertex holding it, then the pattern itself), so colours with the same
    pattern are interchangeable and any colour bijection gives the same result.
    """
    order = [v for v in graph.nodes if v in lists]
    patterns: dict[int, list[int]] = {}
    for idx, v in enumerate(order):
        for c in lists[v]:
            patterns.setdefault(c, []).append(idx)
    ranked = sorted(patterns, key=lambda c: (patterns[c][0], patterns[c], c))
    relabel = {c: i for i, c in enumerate(ranked)}
    return {v: frozenset(relabel[c] for c in lists[v]) for v in order}


def lists_key(graph: nx.Graph, lists: Mapping[str, frozenset[int]]) -> tuple:
    return tuple(tuple(sorted(lists.get(v, ()))) for v in graph.nodes)


# -------------------------------------------------------------------
# JSON
# -------------------------------------------------------------------
def _json_default(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "item"):
        # numpy scalars coming out of pandas frames
        return o.item()
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def dumps_report(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n"


def load_json(p: str) -> dict:
    if not os.path.exists(p):
        raise InputError(f"file not found: {p}")
    try:
        with open(p, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON in {p}: {e}") from e
    if not isinstance(data, dict):
        raise InputError(f"{p}: top-level JSON value must be an object")
    return data


def graph_from_json(obj: Mapping) -> nx.Graph:
    if "theta" in obj:
        return theta_from_json(obj).graph
    try:
        return make_graph(obj["vertices"], obj["edges"])
    except KeyError as e:
        raise InputError(f"graph JSON needs 'vertices' and 'edges' (missing {e})") from e


def graph_to_json(graph: nx.Graph) -> dict:
    return {"vertices": list(graph.nodes), "edges": [list(e) for e in graph.edges]}


def theta_from_json(obj: Mapping) -> ThetaGraph:
    try:
        lengths = obj["theta"]["lengths"]
    except (KeyError, TypeError) as e:
        raise InputError("theta JSON must look like {\"theta\": {\"lengths\": [...]}}") from e
    return build_theta(lengths)


def lists_from_json(obj: Mapping) -> Lists:
    raw = obj.get("lists")
    if not isinstance(raw, dict):
        raise InputError("lists JSON must look like {\"lists\": {\"u\": [0, 1], ...}}")
    for v, cs in raw.items():
        if not isinstance(cs, list):
            raise InputError(f"list for {v!r} must be a JSON array")
    return make_lists(raw)


def lists_to_json(lists: Mapping[str, frozenset[int]]) -> dict:
    return {"lists": {v: sorted(cs) for v, cs in lists.items()}}


def coloring_from_json(obj: Mapping) -> FoldColoring:
    try:
        fold = int(obj["fold"])
        raw = obj["assignment"]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("colouring JSON needs 'fold' and 'assignment'") from e
    return FoldColoring(fold, make_lists(raw), obj.get("certificate", ""))


logging.getLogger(__name__).addHandler(logging.NullHandler())
