"""
oracle_search.py - oráculo de força bruta para (L,b)-colorações

- find_lb_coloring: backtracking completo (vértices por grau decrescente,
  subconjuntos de cores em ordem lexicográfica, forward checking)
- iter_canonical_assignments: stream determinístico de listas canónicas
- check_choosable: modo exhaustive (todas as listas canónicas sobre a paleta)
  ou random (amostras com seed)
"""

from __future__ import annotations

import logging
import os
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping

import networkx as nx

from coloring_model import (
    FoldColoring,
    InputError,
    Lists,
    SearchBudgetExceeded,
    canonicalize_assignment,
    lists_key,
    lists_to_json,
)


logger = logging.getLogger(__name__)

# -------------------------------------------------------------------
# CONFIG (env-tunable)
# -------------------------------------------------------------------
ORACLE_NODE_BUDGET = int(os.environ.get("ORACLE_NODE_BUDGET", "2000000"))
EXHAUSTIVE_PALETTE_CAP = int(os.environ.get("EXHAUSTIVE_PALETTE_CAP", "12"))
EXHAUSTIVE_SLOT_CAP = int(os.environ.get("EXHAUSTIVE_SLOT_CAP", "30"))

PALETTE_CAVEAT = (
    "choosable over palette is relative to the palette size; full choosability "
    "needs palettes up to |V|*a"
)


# -------------------------------------------------------------------
# single assignment
# -------------------------------------------------------------------
def find_lb_coloring(
    graph: nx.Graph,
    lists: Mapping[str, frozenset[int]],
    b: int,
    node_budget: int | None = None,
) -> FoldColoring | None:
    if b < 1:
        raise InputError(f"fold b must be positive (b={b})")
    vertices = list(graph.nodes)
    if any(len(lists.get(v, ())) < b for v in vertices):
        return None

    # sorted is stable: ties keep the graph's vertex order
    order = sorted(vertices, key=lambda v: -graph.degree(v))
    budget = node_budget or ORACLE_NODE_BUDGET
    chosen: dict[str, frozenset[int]] = {}
    nodes = 0

    def available(v):
        taken = set()
        for w in graph.neighbors(v):
            if w in chosen:
                taken |= chosen[w]
        return lists[v] - taken

    def forward_ok(v):
        return all(len(available(w)) >= b for w in graph.neighbors(v) if w not in chosen)

    def backtrack(idx):
        nonlocal nodes
        if idx == len(order):
            return True
        v = order[idx]
        for combo in combinations(sorted(available(v)), b):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"node budget {budget} exceeded")
            chosen[v] = frozenset(combo)
            if forward_ok(v) and backtrack(idx + 1):
                return True
            del chosen[v]
        return False

    if not backtrack(0):
        logger.debug("[ORACLE] no (L,%d)-colouring after %d nodes", b, nodes)
        return None
    return FoldColoring(b, {v: chosen[v] for v in vertices}, "oracle")


# -------------------------------------------------------------------
# assignment streams
# -------------------------------------------------------------------
def iter_canonical_assignments(
    graph: nx.Graph,
    sizes: int | Mapping[str, int],
    palette: int,
) -> Iterator[Lists]:
    """
    Todas as atribuições de listas (tamanho fixo ou por vértice) sobre
    {0..palette-1}, uma por classe de renomeação de cores.

    New colours enter in increasing order of first use along the vertex order,
    which reaches every class; the canonical form removes the remaining repeats.
    """
    vertices = list(graph.nodes)
    size_of = (lambda v: sizes) if isinstance(sizes, int) else (lambda v: sizes[v])
    seen = set()

    def extend(i, used, acc):
        if i == len(vertices):
            canon = canonicalize_assignment(graph, dict(zip(vertices, acc)))
            key = lists_key(graph, canon)
            if key not in seen:
                seen.add(key)
                yield canon
            return
        a = size_of(vertices[i])
        for fresh in range(0, min(a, palette - used) + 1):
            new = frozenset(range(used, used + fresh))
            for old in combinations(range(used), a - fresh):
                yield from extend(i + 1, used + fresh, acc + [frozenset(old) | new])

    yield from extend(0, 0, [])


@dataclass
class SamplerConfig:
    mode: str = "exhaustive"
    palette_size: int | None = None
    sample_count: int = 1000
    seed: int = 42
    palette_cap: int = EXHAUSTIVE_PALETTE_CAP
    slot_cap: int = EXHAUSTIVE_SLOT_CAP
    node_budget: int | None = None

    def palette_for(self, graph: nx.Graph, a: int) -> int:
        if self.palette_size is not None:
            return self.palette_size
        return min(graph.number_of_nodes() * a, self.palette_cap)

    def validate(self, graph: nx.Graph, a: int):
        if self.mode not in ("exhaustive", "random"):
            raise InputError(f"unknown sampler mode {self.mode!r}")
        palette = self.palette_for(graph, a)
        if palette < a:
            raise InputError(f"palette {palette} smaller than list size {a}")
        if self.sample_count < 1:
            raise InputError("sample_count must be positive")
        if self.mode == "exhaustive":
            if palette > self.palette_cap:
                raise SearchBudgetExceeded(f"palette {palette} above cap {self.palette_cap}")
            slots = graph.number_of_nodes() * a
            if slots > self.slot_cap:
                raise SearchBudgetExceeded(f"|V|*a = {slots} above cap {self.slot_cap}")


def check_choosable(graph: nx.Graph, a: int, b: int, cfg: SamplerConfig | None = None) -> dict:
    """
    Exhaustive mode walks the whole canonical stream and reports the
    lexicographically least bad assignment (by lists_key); random mode stops
    at the first bad sample.
    """
    cfg = cfg or SamplerConfig()
    if a < 1 or b < 1:
        raise InputError(f"a and b must be positive (a={a}, b={b})")
    cfg.validate(graph, a)
    palette = cfg.palette_for(graph, a)

    report = {
        "mode": cfg.mode,
        "a": a,
        "b": b,
        "palette": palette,
        "caveat": PALETTE_CAVEAT,
        "witness": None,
    }
    if cfg.mode == "exhaustive":
        stream = iter_canonical_assignments(graph, a, palette)
    else:
        report["seed"] = cfg.seed
        rng = random.Random(cfg.seed)
        vertices = list(graph.nodes)
        stream = (
            {v: frozenset(rng.sample(range(palette), a)) for v in vertices}
            for _ in range(cfg.sample_count)
        )

    checked = 0
    least = None
    for lists in stream:
        checked += 1
        if find_lb_coloring(graph, lists, b, cfg.node_budget) is not None:
            continue
        canon = canonicalize_assignment(graph, lists)
        if least is None or lists_key(graph, canon) < lists_key(graph, least):
            least = canon
        if cfg.mode == "random":
            break
    if least is not None:
        report["witness"] = lists_to_json(least)["lists"]
    report["checked"] = checked
    if report["witness"] is not None:
        report["verdict"] = "witness"
    elif cfg.mode == "exhaustive":
        report["verdict"] = "choosable_over_palette"
    else:
        report["verdict"] = "no_counterexample"
    logger.info("[ORACLE] %s a=%d b=%d palette=%d checked=%d -> %s",
                cfg.mode, a, b, palette, checked, report["verdict"])
    return report


def find_witness(graph: nx.Graph, a: int, b: int, max_palette: int, node_budget: int | None = None) -> dict | None:
    """Procura uma lista má com paletas crescentes a..max_palette (exhaustive)."""
    for palette in range(a, max_palette + 1):
        for lists in iter_canonical_assignments(graph, a, palette):
            if find_lb_coloring(graph, lists, b, node_budget) is None:
                return lists
    return None
