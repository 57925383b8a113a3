"""Random class members with their ground-truth decomposition trees.

The structural characterizations are read generatively: a member is built
from smaller members by union, join, spider / quasi-spider attachment, separable
component attachment, or is a small base graph. The tree returned alongside
the graph comes from the construction, not from :func:`build_tree`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from .decomposition import (
    Node,
    Replacement,
    SeparableComponent,
    SpiderPartition,
    is_p_connected,
    is_qq4,
    separable_bipartition,
)
from .graph import Graph, complement, cycle_graph, path_graph

DEFAULT_WEIGHTS = {
    "union": 1.0,
    "join": 1.0,
    "spider": 1.0,
    "quasi_spider": 1.0,
    "separable": 1.0,
    "small": 0.5,
    "base": 1.0,
}
_ALLOWED = {
    "cograph": ("union", "join"),
    "p4sparse": ("union", "join", "spider"),
    "p4tidy": ("union", "join", "spider", "quasi_spider", "base"),
    "qq4": ("union", "join", "spider", "separable", "small"),
}


@dataclass(frozen=True)
class GeneratorSpec:
    target: str = "cograph"  # cograph | p4sparse | qq4 | p4tidy
    n_min: int = 1
    n_max: int = 10
    seed: int = 0
    q: int = 5
    connected: bool = False
    weights: dict = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))

    def __post_init__(self):
        if self.target not in _ALLOWED:
            raise ValueError(f"unknown target class {self.target!r}")
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError("need 1 <= n_min <= n_max")


@dataclass
class _Piece:
    n: int
    edges: list[tuple[int, int]]
    node: Node


def _shift(node: Node, off: int) -> Node:
    def up(vs):
        return tuple(v + off for v in vs)

    part = node.spider
    if part is not None:
        rep = part.replaced
        if rep is not None:
            rep = replace(rep, pair=up(rep.pair))
        part = SpiderPartition(up(part.R), tuple((up(c), up(s)) for c, s in part.slots), part.thick, rep)
    sep = node.separable
    if sep is not None:
        sep = SeparableComponent(up(sep.H), up(sep.H1), up(sep.H2))
    return Node(node.kind, up(node.vertices), tuple(_shift(ch, off) for ch in node.children),
                part, sep, node.reason)


def _k1() -> _Piece:
    return _Piece(1, [], Node("leaf", (0,), reason="K1"))


def _combine(kind: str, a: _Piece, b: _Piece) -> _Piece:
    nb = _shift(b.node, a.n)
    edges = a.edges + [(u + a.n, v + a.n) for u, v in b.edges]
    if kind == "join":
        edges += [(u, v + a.n) for u in range(a.n) for v in range(b.n)]
    return _Piece(a.n + b.n, edges, Node(kind, tuple(range(a.n + b.n)), (a.node, nb)))


class _Gen:
    def __init__(self, spec: GeneratorSpec, rng: random.Random):
        self.spec = spec
        self.rng = rng
        self._sep_cache: dict[int, list] = {}

    def ops_for(self, n: int, top: bool) -> list[str]:
        ops = []
        q = self.spec.q
        for op in _ALLOWED[self.spec.target]:
            if op in ("union", "join") and n < 2:
                continue
            if op == "union" and top and self.spec.connected:
                continue
            if op == "spider" and n < 4:
                continue
            if op == "quasi_spider" and n < 5:
                continue
            if op == "base" and n != 5:
                continue
            if op == "separable" and not 5 <= n:
                continue
            if op == "small" and not (2 <= n <= q):
                continue
            ops.append(op)
        return ops

    def piece(self, n: int, top: bool = False) -> _Piece:
        if n == 1:
            return _k1()
        ops = self.ops_for(n, top)
        weights = [self.spec.weights.get(op, 1.0) for op in ops]
        op = self.rng.choices(ops, weights)[0]
        return getattr(self, "_" + op)(n)

    def _union(self, n):
        n1 = self.rng.randint(1, n - 1)
        return _combine("union", self.piece(n1), self.piece(n - n1))

    def _join(self, n):
        n1 = self.rng.randint(1, n - 1)
        return _combine("join", self.piece(n1), self.piece(n - n1))

    def _spider_layout(self, n: int, extra: int):
        k = self.rng.randint(2, (n - extra) // 2)
        r = n - extra - 2 * k
        thick = k > 2 and self.rng.random() < 0.5
        return k, r, thick

    def _spider(self, n, quasi=False):
        extra = 1 if quasi else 0
        k, r, thick = self._spider_layout(n, extra)
        inner = self.piece(r) if r else None
        off = r
        c = [off + i for i in range(k)]
        s = [off + k + i for i in range(k)]
        slots = [[[c[i]], [s[i]]] for i in range(k)]
        rep = None
        if quasi:
            b = off + 2 * k
            slot = self.rng.randrange(k)
            position = self.rng.choice("CS")
            kind = self.rng.choice(["K2", "K2bar"])
            a = slots[slot][0 if position == "C" else 1][0]
            slots[slot][0 if position == "C" else 1].append(b)
            rep = Replacement(position, kind, (a, b), slot)
        part = SpiderPartition(tuple(range(r)), tuple((tuple(ci), tuple(si)) for ci, si in slots), thick, rep)
        edges = list(inner.edges) if inner else []
        C, S = part.C, part.S
        for i, u in enumerate(C):
            for v in C[i + 1:]:
                if rep is not None and rep.position == "C" and {u, v} == set(rep.pair) and rep.kind == "K2bar":
                    continue
                edges.append((u, v))
        if rep is not None and rep.position == "S" and rep.kind == "K2":
            edges.append(rep.pair)
        for i, (_, si) in enumerate(part.slots):
            for j, (cj, _) in enumerate(part.slots):
                if (i != j) == thick:
                    edges += [(x, y) for x in si for y in cj]
        edges += [(x, y) for x in range(r) for y in C]
        total = r + 2 * k + extra
        children = (inner.node,) if inner else ()
        node = Node("quasi_spider" if quasi else "spider", tuple(range(total)), children, spider=part)
        return _Piece(total, edges, node)

    def _quasi_spider(self, n):
        return self._spider(n, quasi=True)

    def _base(self, n):
        which = self.rng.choice(["P5", "P5bar", "C5"])
        g = {"P5": path_graph(5), "C5": cycle_graph(5), "P5bar": complement(path_graph(5))}[which]
        return _Piece(5, g.edges(), Node("leaf", tuple(range(5)), reason=which))

    def _small(self, n):
        p = self.rng.uniform(0.25, 0.75)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if self.rng.random() < p]
        return _Piece(n, edges, Node("leaf", tuple(range(n)), reason="small"))

    def _separable_pool(self, h: int) -> list:
        if h not in self._sep_cache:
            pool = []
            rng = random.Random(1000 + h)
            tries = 0
            while len(pool) < 12 and tries < 4000:
                tries += 1
                p = rng.uniform(0.3, 0.7)
                edges = [(u, v) for u in range(h) for v in range(u + 1, h) if rng.random() < p]
                g = Graph.from_edges(h, edges)
                if not is_p_connected(g):
                    continue
                found = separable_bipartition(g)
                if found is not None:
                    pool.append((edges, found))
            self._sep_cache[h] = pool
        return self._sep_cache[h]

    def _separable(self, n):
        top = min(self.spec.q, n - 1)
        sizes = [h for h in range(4, top + 1) if self._separable_pool(h)]
        if not sizes:
            return self._join(n)
        h = self.rng.choice(sizes)
        edges_h, (h1, h2) = self.rng.choice(self._separable_pool(h))
        rest = self.piece(n - h)
        # H on 0..h-1, rest shifted by h
        edges = list(edges_h) + [(u + h, v + h) for u, v in rest.edges]
        edges += [(x + h, y) for x in range(rest.n) for y in h1]
        comp = SeparableComponent(tuple(range(h)), tuple(h1), tuple(h2))
        node = Node("separable", tuple(range(n)), (_shift(rest.node, h),), separable=comp)
        return _Piece(n, edges, node)


def generate(spec: GeneratorSpec) -> tuple[Graph, Node]:
    """A random member of ``spec.target`` together with its construction tree."""
    rng = random.Random(spec.seed)
    gen = _Gen(spec, rng)
    for _ in range(500):
        n = rng.randint(spec.n_min, spec.n_max)
        piece = gen.piece(n, top=True)
        g = Graph.from_edges(piece.n, piece.edges)
        if spec.target == "qq4" and not is_qq4(g, spec.q):
            continue
        if spec.target == "p4sparse" and not is_qq4(g, 5):
            continue
        return g, piece.node
    raise RuntimeError(f"could not generate a {spec.target} member for {spec}")
