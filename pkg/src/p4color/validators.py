"""Membership tests for the restricted coloring families.

All predicates take a graph and a coloring (a :class:`Coloring` or a plain
sequence of color indices). Internally a color of ``-1`` marks an unassigned
vertex; the private ``_partial`` helpers judge the coloring induced on the
assigned vertices, which is what the exhaustive search uses for pruning since
every family except clique coloring is hereditary.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, bits, connected_components, is_connected, maximal_cliques, popcount

UNASSIGNED = -1
NONREPETITIVE_MAX_VERTICES = 14


class Family(str, enum.Enum):
    PROPER = "proper"
    ACYCLIC = "acyclic"
    STAR = "star"
    NONREPETITIVE = "nonrepetitive"
    HARMONIOUS = "harmonious"
    CLIQUE = "clique"

    @classmethod
    def parse(cls, name: str) -> "Family":
        name = name.lower()
        if name == "thue":
            return cls.NONREPETITIVE
        return cls(name)


class ColoringError(ValueError):
    pass


class DisconnectedGraphError(ValueError):
    """Harmonious coloring is only handled on connected graphs."""


class BudgetExceeded(RuntimeError):
    """An exhaustive routine would exceed its configured budget."""


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    k: int

    def __post_init__(self):
        for v, c in enumerate(self.colors):
            if not 0 <= c < self.k:
                raise ColoringError(f"vertex {v} has color {c} outside 0..{self.k - 1}")

    @classmethod
    def of(cls, colors: Sequence[int]) -> "Coloring":
        colors = tuple(colors)
        return cls(colors, max(colors) + 1 if colors else 0)

    @property
    def used(self) -> int:
        return len(set(self.colors))

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.colors):
            out[c].append(v)
        return out

    def canonical(self) -> "Coloring":
        """Relabel colors by first occurrence (restricted growth string)."""
        remap: dict[int, int] = {}
        out = tuple(remap.setdefault(c, len(remap)) for c in self.colors)
        return Coloring(out, len(remap))


def _colors_of(g: Graph, c) -> tuple[int, ...]:
    colors = tuple(c.colors) if isinstance(c, Coloring) else tuple(c)
    if len(colors) != g.n:
        raise ColoringError(f"coloring assigns {len(colors)} vertices, graph has {g.n}")
    if any(x < 0 for x in colors):
        raise ColoringError("coloring leaves a vertex unassigned")
    return colors


def _class_masks(colors: Sequence[int]) -> dict[int, int]:
    masks: dict[int, int] = {}
    for v, c in enumerate(colors):
        if c != UNASSIGNED:
            masks[c] = masks.get(c, 0) | 1 << v
    return masks


def _partial_proper(g: Graph, colors: Sequence[int]) -> bool:
    for mask in _class_masks(colors).values():
        for v in bits(mask):
            if g.adj[v] & mask:
                return False
    return True


def _pair_structure_ok(g: Graph, colors: Sequence[int], stars: bool, only: int | None = None) -> bool:
    """Every two color classes induce a forest (of stars when ``stars``).
    With ``only`` set, just the pairs involving that color are inspected."""
    masks = _class_masks(colors)
    keys = sorted(masks)
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            if only is not None and only not in (a, b):
                continue
            union = masks[a] | masks[b]
            for comp in connected_components(g, union):
                cm = 0
                for v in comp:
                    cm |= 1 << v
                degs = [popcount(g.adj[v] & cm) for v in comp]
                if sum(degs) // 2 != len(comp) - 1:
                    return False
                if stars and sum(1 for d in degs if d > 1) > 1:
                    return False
    return True


def _has_square_path(g: Graph, colors: Sequence[int]) -> bool:
    """True iff some simple path v1..v2p has color(v_i) == color(v_{i+p}).

    Depth-first from every start vertex, checking only squares that begin at
    the start. A branch is cut once no square length is still reachable given
    the colors left among unused vertices.
    """
    active = [v for v in range(g.n) if colors[v] != UNASSIGNED]
    active_mask = 0
    for v in active:
        active_mask |= 1 << v
    total = Counter(colors[v] for v in active)

    for start in active:
        left = total.copy()
        seq: list[int] = []

        def feasible(length: int, unused: int) -> bool:
            lo = length // 2 + 1
            hi = (length + unused) // 2
            for p in range(lo, min(hi, length - 1) + 1):
                if any(seq[i] != seq[i + p] for i in range(length - p)):
                    continue
                need = Counter(seq[length - p:p])
                if all(left[c] >= k for c, k in need.items()):
                    return True
            if hi >= length and length <= unused:
                need = Counter(seq)
                if all(left[c] >= k for c, k in need.items()):
                    return True
            return False

        def dfs(v: int, used: int) -> bool:
            seq.append(colors[v])
            left[colors[v]] -= 1
            length = len(seq)
            try:
                if length % 2 == 0:
                    p = length // 2
                    if seq[:p] == seq[p:]:
                        return True
                unused = len(active) - length
                if not feasible(length, unused):
                    return False
                for u in bits(g.adj[v] & active_mask & ~used):
                    if dfs(u, used | 1 << u):
                        return True
                return False
            finally:
                seq.pop()
                left[colors[v]] += 1

        if dfs(start, 1 << start):
            return True
    return False


def _partial_harmonious_pairs(g: Graph, colors: Sequence[int]) -> bool:
    seen = set()
    for u in range(g.n):
        cu = colors[u]
        if cu == UNASSIGNED:
            continue
        for v in bits(g.adj[u]):
            if v < u or colors[v] == UNASSIGNED:
                continue
            pair = (min(cu, colors[v]), max(cu, colors[v]))
            if pair in seen:
                return False
            seen.add(pair)
    return True


def is_proper(g: Graph, c) -> bool:
    return _partial_proper(g, _colors_of(g, c))


def is_acyclic_coloring(g: Graph, c) -> bool:
    colors = _colors_of(g, c)
    return _partial_proper(g, colors) and _pair_structure_ok(g, colors, stars=False)


def is_star_coloring(g: Graph, c) -> bool:
    colors = _colors_of(g, c)
    return _partial_proper(g, colors) and _pair_structure_ok(g, colors, stars=True)


def is_nonrepetitive(g: Graph, c, max_vertices: int = NONREPETITIVE_MAX_VERTICES) -> bool:
    """Exact but exponential; refuses graphs above ``max_vertices``."""
    colors = _colors_of(g, c)
    if not is_star_coloring(g, colors):
        return False
    if g.n > max_vertices:
        raise BudgetExceeded(f"nonrepetitive check limited to {max_vertices} vertices, got {g.n}")
    return not _has_square_path(g, colors)


def is_harmonious(g: Graph, c, max_vertices: int = NONREPETITIVE_MAX_VERTICES) -> bool:
    if not is_connected(g):
        raise DisconnectedGraphError("harmonious coloring requires a connected graph")
    colors = _colors_of(g, c)
    if not (_partial_proper(g, colors) and _partial_harmonious_pairs(g, colors)):
        return False
    return is_nonrepetitive(g, colors, max_vertices)


def is_clique_coloring(g: Graph, c) -> bool:
    colors = _colors_of(g, c)
    for clique in maximal_cliques(g):
        if len(clique) >= 2 and len({colors[v] for v in clique}) == 1:
            return False
    return True


def is_valid(g: Graph, c, family: Family | str, max_vertices: int = NONREPETITIVE_MAX_VERTICES) -> bool:
    family = Family.parse(family) if isinstance(family, str) else family
    if family is Family.PROPER:
        return is_proper(g, c)
    if family is Family.ACYCLIC:
        return is_acyclic_coloring(g, c)
    if family is Family.STAR:
        return is_star_coloring(g, c)
    if family is Family.NONREPETITIVE:
        return is_nonrepetitive(g, c, max_vertices)
    if family is Family.HARMONIOUS:
        return is_harmonious(g, c, max_vertices)
    return is_clique_coloring(g, c)


def partial_ok(g: Graph, colors: Sequence[int], family: Family, last: int) -> bool:
    """Hereditary check after vertex ``last`` received its color; only
    obstructions through color ``colors[last]`` are examined where possible.
    Square paths are left to the final check."""
    if family is Family.CLIQUE:
        return True
    c = colors[last]
    for u in bits(g.adj[last]):
        if colors[u] == c:
            return False
    if family is Family.PROPER:
        return True
    if family is Family.HARMONIOUS:
        return _partial_harmonious_pairs(g, colors)
    stars = family is not Family.ACYCLIC
    return _pair_structure_ok(g, colors, stars=stars, only=c)
