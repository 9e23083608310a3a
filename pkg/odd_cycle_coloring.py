"""
odd_cycle_coloring.py - coloração construtiva de ciclos ímpares C_{2k+1}

Given a-lists on v_0..v_{2k} with a*k >= (2k+1)*b, produces an (L,b)-colouring
by handing out the colours one at a time:
  - colours common to every list go first, colour number i (1-based) to
    v_i, v_{i+2}, ..., v_{i+2k-2};
  - every other colour starts at the least index s whose list misses it and
    walks v_s, v_{s+1}, ..., v_{s+2k}, taking v_j when the colour is in L(v_j),
    not already on v_{j-1} and v_j still holds fewer than b colours.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

from coloring_model import (
    ColoringContractError,
    FoldColoring,
    InputError,
    cycle_graph,
    verify_coloring,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CycleInstance:
    k: int
    a: int
    b: int
    lists: Mapping[str, frozenset[int]]

    @property
    def size(self) -> int:
        return 2 * self.k + 1

    def vertex(self, j: int) -> str:
        return f"v{j % self.size}"

    def validate(self):
        if self.k < 1 or self.b < 1:
            raise InputError(f"k and b must be positive (k={self.k}, b={self.b})")
        # a/b >= 2 + 1/k, kept in integers
        if self.a * self.k < (2 * self.k + 1) * self.b:
            raise InputError(
                f"ratio a/b = {self.a}/{self.b} below 2 + 1/{self.k}"
            )
        for j in range(self.size):
            v = self.vertex(j)
            if v not in self.lists:
                raise InputError(f"no list for {v}")
            if len(self.lists[v]) != self.a:
                raise InputError(f"|L({v})| = {len(self.lists[v])}, expected exactly {self.a}")
        extra = set(self.lists) - {self.vertex(j) for j in range(self.size)}
        if extra:
            raise InputError(f"lists for vertices outside the cycle: {sorted(extra)}")


def color_odd_cycle(inst: CycleInstance) -> FoldColoring:
    inst.validate()
    n, k, b = inst.size, inst.k, inst.b
    L = [inst.lists[inst.vertex(j)] for j in range(n)]

    common = sorted(frozenset.intersection(*L))
    rest = sorted(frozenset.union(*L) - frozenset(common))
    got: list[set[int]] = [set() for _ in range(n)]

    for i, c in enumerate(common, start=1):
        for step in range(k):
            j = (i + 2 * step) % n
            if len(got[j]) < b:
                got[j].add(c)

    for c in rest:
        s = next(j for j in range(n) if c not in L[j])
        for step in range(n):
            j = (s + step) % n
            if c in L[j] and c not in got[(j - 1) % n] and len(got[j]) < b:
                got[j].add(c)

    phi = FoldColoring(b, {inst.vertex(j): frozenset(got[j]) for j in range(n)}, "odd-cycle")
    issues = verify_coloring(cycle_graph(n), inst.lists, b, phi)
    if issues:
        raise ColoringContractError(f"odd-cycle procedure produced an invalid colouring: {issues}")
    logger.debug("[CYCLE] C_%d a=%d b=%d coloured (%d common colours)", n, inst.a, b, len(common))
    return phi
