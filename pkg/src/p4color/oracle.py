"""Exhaustive exact solver over set partitions.

Colorings are enumerated as restricted growth strings (the first occurrence
of each color is increasing), so every partition of the vertex set is visited
once. Searching palette sizes in increasing order makes the first valid
partition optimal.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

from .graph import Graph, is_connected, to_mask
from .validators import (
    BudgetExceeded,
    Coloring,
    DisconnectedGraphError,
    Family,
    _has_square_path,
    is_valid,
    partial_ok,
)

_SLOW = (Family.NONREPETITIVE, Family.HARMONIOUS)


@dataclass(frozen=True)
class Budget:
    max_vertices: int = 14
    max_vertices_slow: int = 12
    max_nodes: int = 20_000_000

    @classmethod
    def from_env(cls) -> "Budget":
        raw = os.environ.get("P4COLOR_ORACLE_BUDGET")
        if not raw:
            return cls()
        n = int(raw)
        return cls(max_vertices=n, max_vertices_slow=min(n, 12))

    def limit_for(self, family: Family) -> int:
        return self.max_vertices_slow if family in _SLOW else self.max_vertices


def _check_budget(g: Graph, family: Family, budget: Budget) -> None:
    limit = budget.limit_for(family)
    if g.n > limit:
        raise BudgetExceeded(f"{family.value} oracle limited to {limit} vertices, got {g.n}")


def _search(g: Graph, family: Family, k_max: int, rainbow: int, budget: Budget,
            exact_k: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield canonical colorings valid for ``family`` with at most ``k_max``
    colors (exactly ``exact_k`` when given). Vertices in ``rainbow`` must
    receive pairwise distinct colors."""
    n = g.n
    colors = [-1] * n
    nodes = 0

    def rec(v: int, used: int) -> Iterator[tuple[int, ...]]:
        nonlocal nodes
        nodes += 1
        if nodes > budget.max_nodes:
            raise BudgetExceeded(f"oracle explored more than {budget.max_nodes} nodes")
        if v == n:
            if exact_k is not None and used != exact_k:
                return
            full = tuple(colors)
            if family is Family.CLIQUE and not is_valid(g, full, family):
                return
            if family in _SLOW and _has_square_path(g, full):
                return
            yield full
            return
        if exact_k is not None and used + (n - v) < exact_k:
            return
        taken = set()
        if rainbow >> v & 1:
            taken = {colors[u] for u in range(v) if rainbow >> u & 1}
        for c in range(min(used + 1, k_max)):
            if c in taken:
                continue
            colors[v] = c
            if partial_ok(g, colors, family, v):
                yield from rec(v + 1, max(used, c + 1))
            colors[v] = -1

    yield from rec(0, 0)


def exact_chromatic(g: Graph, family: Family | str, budget: Budget | None = None) -> Coloring:
    """Optimal coloring for ``family`` found by exhaustive search."""
    family = Family.parse(family) if isinstance(family, str) else family
    budget = budget or Budget()
    if family is Family.HARMONIOUS and not is_connected(g):
        raise DisconnectedGraphError("harmonious coloring requires a connected graph")
    _check_budget(g, family, budget)
    if g.n == 0:
        return Coloring((), 0)
    for k in range(1, g.n + 1):
        for found in _search(g, family, k, 0, budget, exact_k=k):
            return Coloring(found, k)
    raise AssertionError("the all-distinct coloring is valid for every family")


def family_colorings(h: Graph, family: Family | str, rainbow=(), budget: Budget | None = None
                     ) -> Iterator[Coloring]:
    """All valid colorings of ``h`` up to color permutation, in canonical
    order, optionally restricted to those rainbow on ``rainbow``."""
    family = Family.parse(family) if isinstance(family, str) else family
    budget = budget or Budget()
    _check_budget(h, family, budget)
    if h.n == 0:
        yield Coloring((), 0)
        return
    for found in _search(h, family, h.n, to_mask(rainbow), budget):
        yield Coloring(found, max(found) + 1)
