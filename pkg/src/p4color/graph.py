"""Simple undirected graphs over dense vertex indices.

Adjacency is stored as one integer bit set per vertex so that the
subset-heavy routines (P4 and clique enumeration, module closure) stay cheap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the bit set of neighbours of ``v``. Optional ``labels`` are
    opaque strings carried through I/O untouched.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at {u}-{v}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label count does not match n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    @property
    def m(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``(h, mapping)`` where ``mapping[i]`` is the vertex of ``g``
    that became vertex ``i`` of ``h``. Vertices keep their relative order."""
    verts = sorted(set(s))
    if not verts:
        raise ValueError("induced subgraph of an empty vertex set")
    if verts[0] < 0 or verts[-1] >= g.n:
        raise ValueError("vertex set not contained in the graph")
    index = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        adj.append(to_mask(index[u] for u in bits(g.adj[v]) if u in index))
    labels = tuple(g.labels[v] for v in verts) if g.labels is not None else None
    return Graph(len(verts), tuple(adj), labels), verts


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)), g.labels)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    adj = list(g1.adj) + [row << shift for row in g2.adj]
    return Graph(g1.n + g2.n, tuple(adj))


def join(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    right = ((1 << g2.n) - 1) << shift
    adj = [row | right for row in g1.adj] + [(row << shift) | g1.full_mask for row in g2.adj]
    return Graph(g1.n + g2.n, tuple(adj))


def connected_components(g: Graph, mask: int | None = None) -> list[list[int]]:
    """Components of ``g`` (restricted to ``mask`` when given), each sorted,
    ordered by smallest vertex."""
    remaining = g.full_mask if mask is None else mask
    within = remaining
    parts = []
    while remaining:
        start = remaining & -remaining
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= within & ~seen
            seen |= nxt
            frontier = nxt
        parts.append(list(bits(seen)))
        remaining &= ~seen
    return parts


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def enumerate_p4s(g: Graph) -> list[tuple[int, int, int, int]]:
    """All induced paths ``w-x-y-z`` on four vertices, one tuple per path,
    oriented so that ``w < z``; sorted."""
    found = []
    for x in range(g.n):
        for y in bits(g.adj[x]):
            closed_x = g.adj[x] | 1 << x
            closed_y = g.adj[y] | 1 << y
            ends_w = g.adj[x] & ~closed_y
            ends_z = g.adj[y] & ~closed_x
            for w in bits(ends_w):
                for z in bits(ends_z & ~g.adj[w]):
                    if w < z:
                        found.append((w, x, y, z))
    found.sort()
    return found


def p4_masks(g: Graph) -> list[int]:
    """Vertex sets (as bit masks) of the induced P4s. A 4-set induces at most
    one P4, so these are in bijection with ``enumerate_p4s``."""
    return [to_mask(p) for p in enumerate_p4s(g)]


def maximal_cliques(g: Graph, mask: int | None = None) -> list[list[int]]:
    """Bron-Kerbosch with Tomita pivoting over bit sets."""
    out: list[list[int]] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(list(bits(r)))
            return
        pivot = max(bits(p | x), key=lambda u: popcount(p & g.adj[u]))
        for v in bits(p & ~g.adj[pivot]):
            expand(r | 1 << v, p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    start = g.full_mask if mask is None else mask
    if start:
        expand(0, start, 0)
    out.sort()
    return out


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    m = to_mask(s)
    return all((g.adj[v] | 1 << v) & m == m for v in bits(m))


def is_stable(g: Graph, s: Iterable[int]) -> bool:
    m = to_mask(s)
    return all(not g.adj[v] & m for v in bits(m))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)
