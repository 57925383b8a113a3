"""Class recognition and primeval / modular decomposition trees.

Two modes are supported: ``Mode.qq4(q)`` decomposes (q,q-4)-graphs into
union, join, spider, separable-component and small-graph nodes; ``Mode.p4tidy()``
decomposes P4-tidy graphs into union, join, (quasi-)spider and base-graph
nodes. Tree construction doubles as a recognizer: a graph outside the class
raises :class:`NotInClassError` carrying a witness vertex set.

Vertex sets stored in nodes always refer to vertices of the root graph.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .graph import (
    Graph,
    bits,
    complement,
    connected_components,
    enumerate_p4s,
    induced_subgraph,
    is_clique,
    is_connected,
    is_stable,
    p4_masks,
    popcount,
    to_mask,
)

# ---------------------------------------------------------------------------
# modes, node types


@dataclass(frozen=True)
class Mode:
    kind: str
    q: int | None = None

    @classmethod
    def p4tidy(cls) -> "Mode":
        return cls("p4tidy")

    @classmethod
    def qq4(cls, q: int) -> "Mode":
        if q < 4:
            raise ValueError("q must be at least 4")
        return cls("qq4", q)

    def __str__(self) -> str:
        return "p4tidy" if self.kind == "p4tidy" else f"qq4(q={self.q})"


class NotInClassError(ValueError):
    def __init__(self, reason: str, witness):
        super().__init__(f"{reason}: {sorted(witness)}")
        self.reason = reason
        self.witness = tuple(sorted(witness))


@dataclass(frozen=True)
class Replacement:
    position: str  # "C" or "S"
    kind: str  # "K2" or "K2bar"
    pair: tuple[int, int]
    slot: int


@dataclass(frozen=True)
class SpiderPartition:
    """``slots[i] = (C vertices, S vertices)`` of slot ``i``. Every slot holds
    one vertex per side except the replaced slot of a quasi-spider, which
    holds the two vertices of the replacing K2 / co-K2 on one side."""

    R: tuple[int, ...]
    slots: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    thick: bool
    replaced: Replacement | None = None

    @property
    def C(self) -> tuple[int, ...]:
        return tuple(v for c, _ in self.slots for v in c)

    @property
    def S(self) -> tuple[int, ...]:
        return tuple(v for _, s in self.slots for v in s)

    @property
    def k(self) -> int:
        return len(self.slots)

    @property
    def thin(self) -> bool:
        return not self.thick

    def check(self, g: Graph) -> None:
        """Raise ``ValueError`` unless the partition is a (quasi-)spider of
        ``g`` restricted to ``R ∪ C ∪ S``."""
        C, S, R = self.C, self.S, self.R
        if self.k < 2:
            raise ValueError("spider needs k >= 2")
        sizes = sorted((len(C), len(S)))
        if self.replaced is None and sizes != [self.k, self.k]:
            raise ValueError("plain spider needs |C| = |S| = k")
        if self.replaced is not None and sizes != [self.k, self.k + 1]:
            raise ValueError("quasi-spider needs sides of size k and k+1")
        for i, (ci, si) in enumerate(self.slots):
            if self.replaced is None or self.replaced.slot != i:
                if len(ci) != 1 or len(si) != 1:
                    raise ValueError("unreplaced slot must hold one vertex per side")
        rep = self.replaced
        clique_side = [v for v in C if rep is None or rep.position != "C" or v not in rep.pair]
        if rep is not None and rep.position == "C":
            clique_side.append(rep.pair[0])
        if not is_clique(g, clique_side):
            raise ValueError("C is not a clique")
        stable_side = [v for v in S if rep is None or rep.position != "S" or v not in rep.pair]
        if rep is not None and rep.position == "S":
            stable_side.append(rep.pair[0])
        if not is_stable(g, stable_side):
            raise ValueError("S is not a stable set")
        if rep is not None:
            a, b = rep.pair
            if g.has_edge(a, b) != (rep.kind == "K2"):
                raise ValueError("replaced pair kind mismatch")
        for i, (_, si) in enumerate(self.slots):
            for j, (cj, _) in enumerate(self.slots):
                want = (i != j) if self.thick else (i == j)
                for s in si:
                    for c in cj:
                        if g.has_edge(s, c) != want:
                            raise ValueError(f"S-C adjacency wrong at {s}-{c}")
        for r in R:
            if any(not g.has_edge(r, c) for c in C) or any(g.has_edge(r, s) for s in S):
                raise ValueError("R must be complete to C and anticomplete to S")


@dataclass(frozen=True)
class SeparableComponent:
    H: tuple[int, ...]
    H1: tuple[int, ...]
    H2: tuple[int, ...]


@dataclass(frozen=True)
class Node:
    kind: str  # union | join | spider | quasi_spider | separable | leaf
    vertices: tuple[int, ...]
    children: tuple["Node", ...] = ()
    spider: SpiderPartition | None = None
    separable: SeparableComponent | None = None
    reason: str | None = None  # leaf: small | P5 | P5bar | C5 | K1 | empty

    def walk(self):
        yield self
        for ch in self.children:
            yield from ch.walk()


@dataclass(frozen=True)
class DecompositionTree:
    graph: Graph
    mode: Mode
    root: Node
    ids: dict = field(default_factory=dict, compare=False, repr=False)

    def nodes(self) -> list[Node]:
        return list(self.root.walk())

    def node_id(self, node: Node) -> int:
        if not self.ids:
            for i, nd in enumerate(self.root.walk()):
                self.ids[id(nd)] = i
        return self.ids[id(node)]


# ---------------------------------------------------------------------------
# modules and the characteristic graph


def _module_closure(g: Graph, seed: int, within: int) -> int:
    m = seed
    while True:
        grow = 0
        for x in bits(within & ~m):
            hit = g.adj[x] & m
            if hit and hit != m:
                grow |= 1 << x
        if not grow:
            return m
        m |= grow


def is_module(g: Graph, s) -> bool:
    m = to_mask(s)
    return _module_closure(g, m, g.full_mask) == m


def maximal_strong_modules(g: Graph) -> list[list[int]]:
    """Partition of V(g) into maximal strong modules (the children of the
    modular decomposition root). Empty for graphs with fewer than 2 vertices."""
    if g.n < 2:
        return []
    comps = connected_components(g)
    if len(comps) > 1:
        return comps
    co = connected_components(complement(g))
    if len(co) > 1:
        return co
    full = g.full_mask
    parts: list[list[int]] = []
    assigned = 0
    for v in range(g.n):
        if assigned >> v & 1:
            continue
        block = 1 << v
        for u in range(g.n):
            if u != v:
                m = _module_closure(g, 1 << u | 1 << v, full)
                if m != full:
                    block |= m
        parts.append(list(bits(block)))
        assigned |= block
    parts.sort()
    return parts


def homogeneous_sets(g: Graph) -> list[list[int]]:
    """Maximal homogeneous sets taken from the strong-module partition."""
    return [p for p in maximal_strong_modules(g) if 1 < len(p) < g.n]


def characteristic_graph(g: Graph) -> tuple[Graph, list[int]]:
    """Shrink every maximal homogeneous set to one vertex. Returns the graph
    and ``shrink`` with ``shrink[v]`` the characteristic vertex of ``v``."""
    parts = maximal_strong_modules(g) or [[v] for v in range(g.n)]
    if len(parts) == 1:
        parts = [[v] for v in range(g.n)]
    shrink = [0] * g.n
    for i, part in enumerate(parts):
        for v in part:
            shrink[v] = i
    reps = [part[0] for part in parts]
    edges = [(i, j) for i, j in combinations(range(len(reps)), 2) if g.has_edge(reps[i], reps[j])]
    return Graph.from_edges(len(reps), edges), shrink


# ---------------------------------------------------------------------------
# p-connectivity


def p_components(g: Graph) -> list[list[int]]:
    """Maximal p-connected vertex sets: classes of the transitive closure of
    "lie on a common induced P4"; vertices on no P4 are singletons."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in enumerate_p4s(g):
        root = find(p[0])
        for v in p[1:]:
            parent[find(v)] = root
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_p_connected(g: Graph) -> bool:
    return g.n <= 1 or len(p_components(g)) == 1


def split_partitions(g: Graph):
    """Yield every ``(K, S)`` bit-mask pair with ``K`` a clique and ``S`` a
    stable set partitioning V(g); ``K`` masks in increasing order."""
    n = g.n
    out = []

    def rec(v: int, K: int, S: int) -> None:
        if v == n:
            out.append((K, S))
            return
        if g.adj[v] & K == K:
            rec(v + 1, K | 1 << v, S)
        if not g.adj[v] & S:
            rec(v + 1, K, S | 1 << v)

    rec(0, 0, 0)
    out.sort()
    return out


def is_split(g: Graph) -> bool:
    return bool(split_partitions(g))


def crossing_p4s_ok(h: Graph, h1: int) -> bool:
    """Every P4 meeting both sides has its midpoints in ``h1`` and its
    endpoints outside."""
    h2 = h.full_mask & ~h1
    for w, x, y, z in enumerate_p4s(h):
        m = 1 << w | 1 << x | 1 << y | 1 << z
        if m & h1 and m & h2:
            if not (h1 >> x & 1 and h1 >> y & 1 and h2 >> w & 1 and h2 >> z & 1):
                return False
    return True


def separable_bipartition(h: Graph) -> tuple[list[int], list[int]] | None:
    """``(H1, H2)`` from a split partition of the characteristic graph (clique
    side → H1), or ``None`` when no split partition gives a valid one."""
    if not is_p_connected(h):
        raise ValueError("separable_bipartition needs a p-connected graph")
    if h.n < 4:
        return None
    char, shrink = characteristic_graph(h)
    for K, _S in split_partitions(char):
        h1 = to_mask(v for v in range(h.n) if K >> shrink[v] & 1)
        if h1 == 0 or h1 == h.full_mask:
            continue
        if crossing_p4s_ok(h, h1):
            return list(bits(h1)), list(bits(h.full_mask & ~h1))
    return None


# ---------------------------------------------------------------------------
# spiders


def _spider_split(g: Graph, pmask: int, rmask: int) -> SpiderPartition | None:
    """Try to read ``pmask`` as ``C ∪ S`` of a plain spider with head ``rmask``."""
    size = popcount(pmask)
    if size < 4 or size % 2:
        return None
    k = size // 2
    verts = list(bits(pmask))
    deg = {v: popcount(g.adj[v] & pmask) for v in verts}
    order = sorted(verts, key=lambda v: (deg[v], v))
    S, C = order[:k], order[k:]
    if deg[S[-1]] >= deg[C[0]]:
        return None
    cm, sm = to_mask(C), to_mask(S)
    if not is_clique(g, C) or not is_stable(g, S):
        return None
    for r in bits(rmask):
        if g.adj[r] & cm != cm or g.adj[r] & sm:
            return None
    for thick in (False, True):
        slots = []
        ok = True
        for c in C:
            cs = g.adj[c] & sm
            target = cs if not thick else sm & ~cs
            if popcount(target) != 1:
                ok = False
                break
            slots.append(((c,), (target.bit_length() - 1,)))
        if ok and len({s for _, (s,) in slots}) == k:
            slots.sort(key=lambda sl: sl[0])
            if thick and k == 2:
                # k = 2 spiders are both thin and thick; keep the thin reading
                continue
            part = SpiderPartition(tuple(bits(rmask)), tuple(slots), thick)
            part.check(g)
            return part
    return None


def _candidates(g: Graph, parity: int):
    full = g.full_mask
    for comp in p_components(g):
        if len(comp) >= 4 and len(comp) % 2 == parity:
            pmask = to_mask(comp)
            yield pmask, full & ~pmask


def recognize_spider(g: Graph) -> SpiderPartition | None:
    for pmask, rmask in _candidates(g, 0):
        found = _spider_split(g, pmask, rmask)
        if found is not None:
            return found
    return None


def recognize_quasi_spider(g: Graph) -> SpiderPartition | None:
    """A spider with one C ∪ S vertex replaced by a K2 or co-K2 (the
    replaced-free case is left to :func:`recognize_spider`)."""
    for pmask, rmask in _candidates(g, 1):
        verts = list(bits(pmask))
        for a, b in combinations(verts, 2):
            na, nb = g.adj[a] & ~(1 << b), g.adj[b] & ~(1 << a)
            if na != nb:
                continue
            base = _spider_split(g, pmask & ~(1 << b), rmask)
            if base is None:
                continue
            part = _attach_twin(g, base, a, b)
            if part is not None:
                return part
    return None


def _attach_twin(g: Graph, base: SpiderPartition, a: int, b: int) -> SpiderPartition | None:
    slots = [list(map(list, sl)) for sl in base.slots]
    for i, (cs, ss) in enumerate(slots):
        if a in cs or a in ss:
            position = "C" if a in cs else "S"
            side = cs if a in cs else ss
            side.append(b)
            side.sort()
            rep = Replacement(position, "K2" if g.has_edge(a, b) else "K2bar", (a, b), i)
            part = SpiderPartition(
                base.R, tuple((tuple(c), tuple(s)) for c, s in slots), base.thick, rep)
            try:
                part.check(g)
            except ValueError:
                return None
            return part
    return None


# ---------------------------------------------------------------------------
# class membership by definition


def count_p4s_in(masks: list[int], s: int) -> int:
    return sum(1 for p in masks if p & s == p)


def is_qq4_exhaustive(g: Graph, q: int) -> bool:
    return qq4_violation(g, q) is None


def qq4_violation(g: Graph, q: int) -> tuple[int, ...] | None:
    """A vertex set of size at most ``q`` inducing more than ``q-4`` P4s, or
    ``None``. Counting is monotone under inclusion, so only sets of size
    ``min(q, n)`` are inspected."""
    masks = p4_masks(g)
    if len(masks) <= q - 4:
        return None
    size = min(q, g.n)
    for combo in combinations(range(g.n), size):
        if count_p4s_in(masks, to_mask(combo)) > q - 4:
            return combo
    return None


def is_p4_tidy(g: Graph) -> bool:
    masks = p4_masks(g)
    p4set = set(masks)
    for p in masks:
        partners = 0
        for z in range(g.n):
            if p >> z & 1:
                continue
            five = p | 1 << z
            inside = sum(1 for v in bits(five) if five & ~(1 << v) in p4set)
            if inside > 1:
                partners += 1
                if partners > 1:
                    return False
    return True


# ---------------------------------------------------------------------------
# tree construction


def _is_base_graph(h: Graph) -> str | None:
    if h.n != 5:
        return None
    degs = sorted(h.degree(v) for v in range(h.n))
    if degs == [2] * 5 and is_connected(h):
        return "C5"
    if degs == [1, 1, 2, 2, 2] and h.m == 4 and is_connected(h):
        return "P5"
    hc = complement(h)
    if sorted(hc.degree(v) for v in range(5)) == [1, 1, 2, 2, 2] and hc.m == 4 and is_connected(hc):
        return "P5bar"
    return None


def _find_separable(sub: Graph, q: int) -> tuple[list[int], list[int]] | None:
    """A p-component H of ``sub`` with at most ``q`` vertices, a separable
    bipartition (H1, H2) and every outside vertex complete to H1 and
    anticomplete to H2. Returned in local indices; first by vertex order."""
    full = sub.full_mask
    for comp in p_components(sub):
        if len(comp) < 4 or len(comp) > q or len(comp) == sub.n:
            continue
        pmask = to_mask(comp)
        outside = list(bits(full & ~pmask))
        h1 = sub.adj[outside[0]] & pmask
        if h1 == 0 or h1 == pmask:
            continue
        if any(sub.adj[o] & pmask != h1 for o in outside):
            continue
        h, mapping = induced_subgraph(sub, comp)
        local_h1 = to_mask(i for i, v in enumerate(mapping) if h1 >> v & 1)
        if crossing_p4s_ok(h, local_h1):
            return list(bits(h1)), list(bits(pmask & ~h1))
    return None


def build_tree(g: Graph, mode: Mode) -> DecompositionTree:
    """Decompose ``g``; raise :class:`NotInClassError` if ``g`` is not in the
    class selected by ``mode``."""
    if g.n == 0:
        return DecompositionTree(g, mode, Node("leaf", (), reason="empty"))
    root = _build(g, list(range(g.n)), mode)
    tree = DecompositionTree(g, mode, root)
    if mode.kind == "qq4":
        bad = _qq4_budget_violation(g, mode.q)
        if bad is not None:
            raise NotInClassError(f"vertex set of size <= {mode.q} induces more than {mode.q - 4} P4s", bad)
    return tree


def _build(g: Graph, verts: list[int], mode: Mode) -> Node:
    if len(verts) == 1:
        return Node("leaf", tuple(verts), reason="K1")
    sub, mapping = induced_subgraph(g, verts)

    def lift(local) -> tuple[int, ...]:
        return tuple(sorted(mapping[i] for i in local))

    comps = connected_components(sub)
    if len(comps) > 1:
        return Node("union", tuple(verts), tuple(_build(g, list(lift(c)), mode) for c in comps))
    co = connected_components(complement(sub))
    if len(co) > 1:
        return Node("join", tuple(verts), tuple(_build(g, list(lift(c)), mode) for c in co))

    part = recognize_spider(sub)
    kind = "spider"
    if part is None and mode.kind == "p4tidy":
        part = recognize_quasi_spider(sub)
        kind = "quasi_spider"
    if part is not None:
        lifted = _lift_partition(part, mapping)
        children = (_build(g, list(lifted.R), mode),) if lifted.R else ()
        return Node(kind, tuple(verts), children, spider=lifted)

    if mode.kind == "p4tidy":
        base = _is_base_graph(sub)
        if base is None:
            raise NotInClassError("prime node is not a quasi-spider, P5, co-P5 or C5", verts)
        return Node("leaf", tuple(verts), reason=base)

    found = _find_separable(sub, mode.q)
    if found is not None:
        h1, h2 = lift(found[0]), lift(found[1])
        hset = set(h1) | set(h2)
        rest = [v for v in verts if v not in hset]
        comp = SeparableComponent(tuple(sorted(hset)), h1, h2)
        return Node("separable", tuple(verts), (_build(g, rest, mode),), separable=comp)
    if len(verts) <= mode.q:
        return Node("leaf", tuple(verts), reason="small")
    raise NotInClassError(f"prime node with more than {mode.q} vertices and no separable component", verts)


def _lift_partition(part: SpiderPartition, mapping: list[int]) -> SpiderPartition:
    def up(vs):
        return tuple(mapping[v] for v in vs)

    rep = part.replaced
    if rep is not None:
        rep = Replacement(rep.position, rep.kind, up(rep.pair), rep.slot)
    slots = tuple((up(c), up(s)) for c, s in part.slots)
    return SpiderPartition(tuple(sorted(up(part.R))), slots, part.thick, rep)


# ---------------------------------------------------------------------------
# (q,q-4) membership: structural route


def _component_profile(g: Graph, comp: list[int], q: int) -> list[tuple[int, int]]:
    """``profile[s] = (max P4 count, witness mask)`` over ``s``-subsets of a
    p-component, for ``s = 0..min(q, |comp|)``."""
    top = min(q, len(comp))
    h, mapping = induced_subgraph(g, comp)
    if len(comp) > 12:
        part = recognize_spider(h)
        if part is not None and not part.R:
            # slot pairs {c_i, s_i}; each two full slots carry exactly one P4
            prof = []
            for s in range(top + 1):
                pairs = s // 2
                chosen = [v for c, sv in part.slots[:pairs] for v in c + sv]
                prof.append((comb(pairs, 2), to_mask(mapping[v] for v in chosen)))
            return prof
    masks = p4_masks(h)
    prof = []
    for s in range(top + 1):
        best, arg = -1, 0
        for combo in combinations(range(h.n), s):
            m = to_mask(combo)
            cnt = count_p4s_in(masks, m)
            if cnt > best:
                best, arg = cnt, m
        prof.append((best, to_mask(mapping[v] for v in bits(arg))))
    return prof


def _qq4_budget_violation(g: Graph, q: int) -> tuple[int, ...] | None:
    """Every P4 lies inside one p-component, so the densest set of at most
    ``q`` vertices is a knapsack over per-component profiles."""
    comps = [c for c in p_components(g) if len(c) >= 4]
    best = [(0, 0)] + [(-1, 0)] * q  # best[t] = (P4s, mask) using exactly t vertices
    for comp in comps:
        prof = _component_profile(g, comp, q)
        nxt = list(best)
        for t in range(q + 1):
            if best[t][0] < 0:
                continue
            for s in range(1, len(prof)):
                if t + s > q:
                    break
                cand = best[t][0] + prof[s][0]
                if cand > nxt[t + s][0]:
                    nxt[t + s] = (cand, best[t][1] | prof[s][1])
        best = nxt
    for cnt, mask in best:
        if cnt > q - 4:
            return tuple(bits(mask))
    return None


def is_qq4(g: Graph, q: int, method: str = "auto") -> bool:
    """Membership in the (q,q-4) class. ``exhaustive`` scans vertex subsets;
    ``structural`` runs :func:`build_tree`; ``auto`` picks exhaustive when the
    subset count is small."""
    if method == "auto":
        method = "exhaustive" if comb(g.n, min(q, g.n)) <= 20_000 else "structural"
    if method == "exhaustive":
        return is_qq4_exhaustive(g, q)
    try:
        build_tree(g, Mode.qq4(q))
    except NotInClassError:
        return False
    return True


def compute_q(g: Graph, method: str = "auto") -> int:
    """Least q >= 4 such that ``g`` is a (q,q-4)-graph."""
    total = len(enumerate_p4s(g))
    top = max(g.n, total + 4, 4)
    for q in range(4, top + 1):
        if q >= g.n:
            # only the whole vertex set matters once q covers it
            return max(q, total + 4)
        if is_qq4(g, q, method):
            return q
    return top


def recognize(g: Graph, mode: Mode) -> tuple[bool, tuple[int, ...] | None, str | None]:
    try:
        build_tree(g, mode)
    except NotInClassError as err:
        return False, err.witness, err.reason
    return True, None, None


# ---------------------------------------------------------------------------
# reassembly and serialization


def node_graph(tree: DecompositionTree, node: Node) -> tuple[Graph, list[int]]:
    return induced_subgraph(tree.graph, node.vertices)


def reassemble_edges(g: Graph, node: Node) -> set[tuple[int, int]]:
    """Edge set of ``node`` rebuilt from its children and the node operation
    alone, using ``g`` only for leaf graphs and the attached pieces."""
    if node.kind == "leaf":
        vs = node.vertices
        return {(u, v) for u, v in combinations(vs, 2) if g.has_edge(u, v)}
    child_edges = set()
    for ch in node.children:
        child_edges |= reassemble_edges(g, ch)
    if node.kind == "union":
        return child_edges
    if node.kind == "join":
        for a, b in combinations(node.children, 2):
            for u in a.vertices:
                for v in b.vertices:
                    child_edges.add((min(u, v), max(u, v)))
        return child_edges
    if node.kind in ("spider", "quasi_spider"):
        part = node.spider
        edges = set(child_edges)
        rep = part.replaced
        C, S = part.C, part.S
        for u, v in combinations(sorted(C), 2):
            if rep is not None and rep.position == "C" and {u, v} == set(rep.pair) and rep.kind == "K2bar":
                continue
            edges.add((u, v))
        if rep is not None and rep.position == "S" and rep.kind == "K2":
            a, b = rep.pair
            edges.add((min(a, b), max(a, b)))
        for i, (_, si) in enumerate(part.slots):
            for j, (cj, _) in enumerate(part.slots):
                if (i != j) == part.thick:
                    for s in si:
                        for c in cj:
                            edges.add((min(s, c), max(s, c)))
        for r in part.R:
            for c in C:
                edges.add((min(r, c), max(r, c)))
        return edges
    if node.kind == "separable":
        comp = node.separable
        edges = set(child_edges)
        edges |= {(u, v) for u, v in combinations(comp.H, 2) if g.has_edge(u, v)}
        rest = node.children[0].vertices if node.children else ()
        for x in rest:
            for h in comp.H1:
                edges.add((min(x, h), max(x, h)))
        return edges
    raise ValueError(f"unknown node kind {node.kind}")


def node_to_dict(node: Node) -> dict:
    out: dict = {"type": node.kind, "vertices": list(node.vertices)}
    if node.reason is not None:
        out["reason"] = node.reason
    if node.spider is not None:
        part = node.spider
        out["spider"] = {
            "R": list(part.R),
            "C": list(part.C),
            "S": list(part.S),
            "slots": [{"C": list(c), "S": list(s)} for c, s in part.slots],
            "thickness": "thick" if part.thick else "thin",
            "replaced": None if part.replaced is None else {
                "position": "InC" if part.replaced.position == "C" else "InS",
                "kind": part.replaced.kind,
                "pair": list(part.replaced.pair),
            },
        }
    if node.separable is not None:
        comp = node.separable
        out["separable"] = {"H": list(comp.H), "H1": list(comp.H1), "H2": list(comp.H2)}
    out["children"] = [node_to_dict(ch) for ch in node.children]
    return out


def tree_to_dict(tree: DecompositionTree) -> dict:
    return {
        "mode": tree.mode.kind,
        "q": tree.mode.q,
        "n": tree.graph.n,
        "root": node_to_dict(tree.root),
    }


def tree_to_dot(tree: DecompositionTree) -> str:
    lines = ["graph decomposition {", "  node [shape=box];"]
    for i, node in enumerate(tree.root.walk()):
        tree.ids[id(node)] = i
    for node in tree.root.walk():
        i = tree.ids[id(node)]
        label = node.kind if node.reason is None else f"leaf:{node.reason}"
        if node.spider is not None:
            label += " thick" if node.spider.thick else " thin"
        verts = ",".join(map(str, node.vertices))
        lines.append(f'  n{i} [label="{label}\\n{{{verts}}}"];')
        for ch in node.children:
            lines.append(f"  n{i} -- n{tree.ids[id(ch)]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
