"""Structural evaluation of the restricted chromatic numbers.

The decomposition tree is evaluated bottom-up. Each node combines the optimal
colorings of its children by the closed-form rule for its operation (union,
join, spider, quasi-spider, separable component) and builds a witness. Every
witness is checked against the family predicate on the node's graph; when a
rule's witness fails, or cannot reach the rule's value, the node is re-solved
by the exhaustive oracle and the event is recorded.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .decomposition import (
    DecompositionTree,
    Mode,
    Node,
    SeparableComponent,
    SpiderPartition,
    build_tree,
    compute_q,
    is_p4_tidy,
)
from .graph import Graph, induced_subgraph, is_connected
from .oracle import Budget, exact_chromatic, family_colorings
from .validators import (
    BudgetExceeded,
    Coloring,
    DisconnectedGraphError,
    Family,
    _partial_harmonious_pairs,
    is_proper,
    is_star_coloring,
    is_valid,
)

log = logging.getLogger(__name__)

DEFAULT_Q_CAP = 10
_MAX_ATTEMPTS = 400


@dataclass(frozen=True)
class TraceEntry:
    node: int
    rule: str
    value: int
    note: str = ""


@dataclass
class Partial:
    """Optimal coloring of one node: ``colors`` maps root vertices to
    ``0..value-1``."""

    value: int
    colors: dict[int, int]


@dataclass
class LocalColoringStats:
    k: int
    k2: int
    rainbow_h1: bool
    reusable: list[int]
    c_z: list[int] = field(default_factory=list)


@dataclass
class ChromaticResult:
    variant: Family
    value: int
    witness: Coloring
    trace: list[TraceEntry] = field(default_factory=list)
    fallbacks: list[str] = field(default_factory=list)
    harmonious_discrepancies: list[dict] = field(default_factory=list)
    mode: str = ""

    def to_dict(self, emit_witness: bool = True) -> dict:
        out = {
            "variant": self.variant.value,
            "value": self.value,
            "mode": self.mode,
        }
        if emit_witness:
            out["witness"] = {str(v): c for v, c in enumerate(self.witness.colors)}
        out["trace"] = [
            {"node": t.node, "rule": t.rule, "value": t.value, **({"note": t.note} if t.note else {})}
            for t in self.trace
        ]
        out["fallbacks"] = list(self.fallbacks)
        return out


# ---------------------------------------------------------------------------
# closed-form rules


def combine_union(family: Family, parts: list[Partial]) -> Partial:
    if family is Family.HARMONIOUS:
        raise DisconnectedGraphError("harmonious coloring of a disjoint union is not supported")
    colors: dict[int, int] = {}
    for p in parts:
        colors.update(p.colors)
    return Partial(max(p.value for p in parts), colors)


def combine_join(family: Family, left: Partial, right: Partial) -> Partial:
    n1, n2 = len(left.colors), len(right.colors)
    if family is Family.HARMONIOUS:
        order = sorted(left.colors) + sorted(right.colors)
        return Partial(n1 + n2, {v: i for i, v in enumerate(order)})
    if family is Family.CLIQUE:
        colors = {v: 0 for v in left.colors}
        colors.update({v: 1 for v in right.colors})
        return Partial(2, colors)
    # acyclic, star, nonrepetitive: rainbow the cheaper side on fresh colors
    if left.value + n2 <= right.value + n1:
        keep, fresh = left, right
    else:
        keep, fresh = right, left
    colors = dict(keep.colors)
    for i, v in enumerate(sorted(fresh.colors)):
        colors[v] = keep.value + i
    return Partial(keep.value + len(fresh.colors), colors)


def _spider_rule(family: Family, part: SpiderPartition, inner: int, thick: bool) -> int:
    r_empty = not part.R
    rep = part.replaced
    if rep is None:
        k = part.k
        if family is Family.ACYCLIC:
            return inner + k
        if family in (Family.STAR, Family.NONREPETITIVE):
            return k + 1 if thick and r_empty else inner + k
    else:
        k = min(len(part.C), len(part.S))
        in_c = rep.position == "C"
        if family is Family.ACYCLIC:
            if in_c or (rep.kind == "K2" and thick and r_empty):
                return inner + k + 1
            return inner + k
        if family in (Family.STAR, Family.NONREPETITIVE):
            if not in_c and not thick:
                return inner + k
            if not in_c and thick and not r_empty:
                return inner + k
            if in_c and thick and r_empty:
                return inner + k + 2
            return inner + k + 1
    if family is Family.HARMONIOUS:
        big = max(len(part.C), len(part.S))
        n = len(part.R) + len(part.C) + len(part.S)
        return len(part.R) + big + 1 if not thick else n
    if family is Family.CLIQUE:
        return 2
    raise ValueError(f"no spider rule for {family}")


def spider_value(family: Family, part: SpiderPartition, inner: int) -> int:
    """Value of a spider or quasi-spider from the value on its head. With
    two slots the thin and thick readings describe the same graph, so the
    smaller reading is returned."""
    if part.k == 2:
        return min(_spider_rule(family, part, inner, False), _spider_rule(family, part, inner, True))
    return _spider_rule(family, part, inner, part.thick)


def _spider_candidates(family: Family, part: SpiderPartition, inner: Partial):
    """Witness candidates for a (quasi-)spider, each a color dict."""
    a = inner.value
    k = part.k
    rep = part.replaced
    R = list(part.R)

    if family is Family.CLIQUE:
        if R:
            colors = {v: 0 for v in R}
            colors.update({s: 0 for s in part.S})
            colors.update({c: 1 for c in part.C})
            yield colors
            return
        x_slot = next(i for i in range(k) if rep is None or rep.position != "C" or rep.slot != i)
        x = part.slots[x_slot][0][0]
        colors = {c: 0 for c in part.C}
        colors[x] = 1
        for i, (_, si) in enumerate(part.slots):
            adjacent = (i != x_slot) if part.thick else (i == x_slot)
            for s in si:
                colors[s] = 0 if adjacent else 1
        yield colors
        return

    if family is Family.HARMONIOUS:
        colors = {v: i for i, v in enumerate(R)}
        nxt = len(R)
        for c in part.C:
            colors[c] = nxt
            nxt += 1
        if not part.thick or k == 2:
            second = rep.pair[1] if rep is not None and rep.position == "S" else None
            for s in part.S:
                colors[s] = nxt + 1 if s == second else nxt
            yield dict(colors)
        for s in part.S:
            colors[s] = nxt
            nxt += 1
        yield colors
        return

    base = dict(inner.colors)
    shared_options = [False]
    if rep is not None and rep.position == "C" and rep.kind == "K2bar":
        shared_options.append(True)
    for shared in shared_options:
        colors = dict(base)
        nxt = a
        slot_color = []
        for ci, _ in part.slots:
            first = nxt
            for j, c in enumerate(ci):
                if j and not shared:
                    nxt += 1
                colors[c] = nxt
            slot_color.append(first)
            nxt += 1
        fresh = nxt
        orientations = [part.thick] if k > 2 else [False, True]
        for thick in orientations:
            # slot whose C color is non-adjacent to S vertices of slot i
            def own(i):
                return slot_color[i] if thick else slot_color[(i + 1) % k]

            def other(i):
                # second vertex of an S-side K2 in the cyclic layout
                return slot_color[(i + 2) % k] if not thick and k >= 3 else None

            strategies = ["cycle", "r", "new"]
            for strat in strategies:
                if strat == "r" and not R:
                    continue
                out = dict(colors)
                extra = fresh
                for i, (_, si) in enumerate(part.slots):
                    for j, s in enumerate(si):
                        if strat == "cycle":
                            col = own(i)
                        elif strat == "r":
                            col = 0
                        else:
                            col = fresh
                        if j == 1 and rep.kind == "K2":
                            # the second vertex of an S-side K2 needs another color
                            if strat == "cycle":
                                alt = other(i)
                                col = alt if alt is not None else (0 if R else fresh)
                            else:
                                col = own(i)
                        out[s] = col
                        if col >= extra:
                            extra = col + 1
                yield out


def _separable_stats(h: Graph, psi: Coloring, h1_local: set[int]) -> LocalColoringStats:
    cols = psi.colors
    h1_colors = {cols[v] for v in h1_local}
    blocked = set(h1_colors)
    for v in range(h.n):
        if v in h1_local:
            continue
        seen: dict[int, int] = {}
        for u in h1_local:
            if h.has_edge(u, v):
                seen[cols[u]] = seen.get(cols[u], 0) + 1
        if any(cnt >= 2 for cnt in seen.values()):
            blocked.add(cols[v])
    reusable = [c for c in range(psi.k) if c not in blocked]
    rainbow = len(h1_colors) == len(h1_local)
    # colours usable in G-H for a harmonious extension
    x_set = {v for v in range(h.n) if cols[v] in h1_colors}
    y_set = set(x_set)
    for v in x_set:
        y_set |= {u for u in range(h.n) if h.has_edge(u, v)}
    c_y = {cols[v] for v in y_set}
    c_z = [c for c in range(psi.k) if c not in c_y]
    return LocalColoringStats(psi.k, len(reusable), rainbow, reusable, c_z)


# ---------------------------------------------------------------------------
# evaluation


class _Solver:
    def __init__(self, tree: DecompositionTree, family: Family, budget: Budget):
        self.tree = tree
        self.g = tree.graph
        self.family = family
        self.budget = budget
        self.trace: list[TraceEntry] = []
        self.fallbacks: list[str] = []
        self.discrepancies: list[dict] = []

    # -- helpers -----------------------------------------------------------

    def _valid(self, verts, colors: dict[int, int]) -> bool:
        h, mapping = induced_subgraph(self.g, verts)
        local = [colors[v] for v in mapping]
        fam = self.family
        limit = self.budget.max_vertices_slow
        if fam is Family.HARMONIOUS and h.n > limit:
            # proper with at most one edge per color pair already rules out squares
            return is_proper(h, local) and _partial_harmonious_pairs(h, local)
        if fam is Family.NONREPETITIVE and h.n > limit:
            return is_star_coloring(h, local)
        return is_valid(h, local, fam, max_vertices=max(limit, h.n))

    def _oracle(self, node: Node, why: str) -> Partial:
        nid = self.tree.node_id(node)
        h, mapping = induced_subgraph(self.g, node.vertices)
        best = exact_chromatic(h, self.family, self.budget)
        msg = f"node {nid} ({node.kind}): {why}; oracle value {best.k}"
        self.fallbacks.append(msg)
        log.info("fallback: %s", msg)
        return Partial(best.k, {v: best.colors[i] for i, v in enumerate(mapping)})

    def _record(self, node: Node, rule: str, value: int, note: str = "") -> None:
        self.trace.append(TraceEntry(self.tree.node_id(node), rule, value, note))

    @staticmethod
    def _used(colors: dict[int, int]) -> dict[int, int]:
        remap: dict[int, int] = {}
        return {v: remap.setdefault(c, len(remap)) for v, c in sorted(colors.items())}

    def _accept(self, node: Node, rule: str, target: int, candidates) -> Partial:
        """First valid candidate with the fewest colors; oracle when none
        reaches ``target``."""
        best = None
        attempts = 0
        for cand in candidates:
            attempts += 1
            used = len(set(cand.values()))
            if best is None or used < best[0]:
                if self._valid(node.vertices, cand):
                    best = (used, cand)
                    if used <= target:
                        break
            if attempts >= _MAX_ATTEMPTS:
                break
        if best is None or best[0] > target:
            found = "no valid witness" if best is None else f"best witness uses {best[0]}"
            out = self._oracle(node, f"{rule} gives {target}, {found}")
            self._record(node, rule + "+oracle", out.value, f"rule value {target}")
            return out
        note = "" if best[0] == target else f"witness beats rule value {target}"
        self._record(node, rule, best[0], note)
        return Partial(best[0], self._used(best[1]))

    # -- nodes ---------------------------------------------------------------

    def solve(self, node: Node) -> Partial:
        kind = node.kind
        fam = self.family
        if kind == "leaf":
            if node.reason == "empty":
                return Partial(0, {})
            if node.reason == "K1":
                self._record(node, "K1", 1)
                return Partial(1, {node.vertices[0]: 0})
            h, mapping = induced_subgraph(self.g, node.vertices)
            best = exact_chromatic(h, fam, self.budget)
            self._record(node, f"leaf:{node.reason}:oracle", best.k)
            return Partial(best.k, {v: best.colors[i] for i, v in enumerate(mapping)})

        if fam is Family.HARMONIOUS:
            return self._harmonious(node)

        if kind == "union":
            out = combine_union(fam, [self.solve(ch) for ch in node.children])
            self._record(node, "union:max", out.value)
            return out
        if kind == "join":
            parts = [self.solve(ch) for ch in node.children]
            acc = parts[0]
            for p in parts[1:]:
                acc = combine_join(fam, acc, p)
            if not self._valid(node.vertices, acc.colors):
                out = self._oracle(node, "join witness invalid")
                self._record(node, "join+oracle", out.value)
                return out
            self._record(node, "join", acc.value)
            return acc
        if kind in ("spider", "quasi_spider"):
            inner = self.solve(node.children[0]) if node.children else Partial(0, {})
            part = node.spider
            target = spider_value(fam, part, inner.value)
            return self._accept(node, kind, target, _spider_candidates(fam, part, inner))
        if kind == "separable":
            return self._separable(node)
        raise ValueError(f"unknown node kind {kind}")

    def _harmonious(self, node: Node) -> Partial:
        kind = node.kind
        if kind == "union":
            raise DisconnectedGraphError("harmonious coloring requires a connected graph")
        if kind == "join":
            out = Partial(len(node.vertices), {v: i for i, v in enumerate(node.vertices)})
            self._record(node, "join:all-distinct", out.value)
            return out
        if kind in ("spider", "quasi_spider"):
            part = node.spider
            target = spider_value(Family.HARMONIOUS, part, 0)
            return self._accept(node, kind, target, _spider_candidates(Family.HARMONIOUS, part, Partial(0, {})))
        if kind == "separable":
            return self._separable(node)
        raise ValueError(f"unknown node kind {kind}")

    def _separable(self, node: Node) -> Partial:
        fam = self.family
        comp: SeparableComponent = node.separable
        rest = node.children[0].vertices
        n_rest = len(rest)
        if fam is Family.CLIQUE:
            colors = {v: 0 for v in rest}
            colors.update({v: 0 for v in comp.H2})
            colors.update({v: 1 for v in comp.H1})
            return self._accept(node, "separable:clique", 2, [colors])

        h, mapping = induced_subgraph(self.g, comp.H)
        local = {v: i for i, v in enumerate(mapping)}
        h1_local = {local[v] for v in comp.H1}

        if fam is Family.HARMONIOUS:
            cands = []
            for order, psi in enumerate(family_colorings(h, fam, [local[v] for v in comp.H1], self.budget)):
                st = _separable_stats(h, psi, h1_local)
                cands.append((psi.k + max(n_rest - len(st.c_z), 0), psi.k + n_rest, order, psi, st))
            if not cands:
                return self._oracle(node, "no harmonious coloring of H with rainbow H1")
            # reuse cZ colours on G-H, versus fresh colours for all of G-H
            reuse = min(c[0] for c in cands)
            additive = min(c[1] for c in cands)
            self.discrepancies.append({
                "node": self.tree.node_id(node),
                "n_rest": n_rest,
                "reuse_value": reuse,
                "additive_value": additive,
                "differs": reuse != additive,
            })
            cands.sort(key=lambda c: (c[0], c[2]))

            def build_h():
                for value, _, _, psi, st in cands:
                    colors = {mapping[i]: c for i, c in enumerate(psi.colors)}
                    nxt = psi.k
                    for i, v in enumerate(sorted(rest)):
                        if i < len(st.c_z):
                            colors[v] = st.c_z[i]
                        else:
                            colors[v] = nxt
                            nxt += 1
                    yield colors

            return self._accept(node, "separable:harmonious", reuse, build_h())

        inner = self.solve(node.children[0])
        cands = []
        for order, psi in enumerate(family_colorings(h, fam, budget=self.budget)):
            st = _separable_stats(h, psi, h1_local)
            cands.append((psi.k + max(0, n_rest - st.k2), order, "rainbow-rest", psi, st))
            if st.rainbow_h1:
                cands.append((psi.k + max(0, inner.value - st.k2), order, "rainbow-H1", psi, st))
        target = min(c[0] for c in cands)
        cands.sort(key=lambda c: (c[0], c[1]))

        def build():
            for value, _, branch, psi, st in cands:
                colors = {mapping[i]: c for i, c in enumerate(psi.colors)}
                nxt = psi.k
                if branch == "rainbow-rest":
                    for i, v in enumerate(sorted(rest)):
                        if i < st.k2:
                            colors[v] = st.reusable[i]
                        else:
                            colors[v] = nxt
                            nxt += 1
                else:
                    remap = {}
                    for j in range(inner.value):
                        remap[j] = st.reusable[j] if j < st.k2 else psi.k + j - st.k2
                    for v in rest:
                        colors[v] = remap[inner.colors[v]]
                yield colors

        return self._accept(node, "separable", target, build())


def default_mode(g: Graph, q_cap: int = DEFAULT_Q_CAP) -> Mode:
    if is_p4_tidy(g):
        return Mode.p4tidy()
    q = compute_q(g)
    if q > q_cap:
        raise BudgetExceeded(f"q(G) = {q} exceeds the cap {q_cap}")
    return Mode.qq4(q)


def solve(g: Graph, family: Family | str, mode: Mode | None = None, budget: Budget | None = None,
          q_cap: int = DEFAULT_Q_CAP, tree: DecompositionTree | None = None) -> ChromaticResult:
    """Optimal coloring of ``g`` for ``family`` by evaluating its
    decomposition tree. Raises ``NotInClassError`` outside the class and
    ``DisconnectedGraphError`` for harmonious coloring of a disconnected graph."""
    family = Family.parse(family) if isinstance(family, str) else family
    budget = budget or Budget()
    if family is Family.HARMONIOUS and not is_connected(g):
        raise DisconnectedGraphError("harmonious coloring requires a connected graph")
    if tree is None:
        if mode is None:
            mode = default_mode(g, q_cap)
        if mode.kind == "qq4" and mode.q > q_cap:
            raise BudgetExceeded(f"q = {mode.q} exceeds the cap {q_cap}")
        tree = build_tree(g, mode)
    solver = _Solver(tree, family, budget)
    part = solver.solve(tree.root)
    colors = tuple(part.colors[v] for v in range(g.n))
    witness = Coloring(colors, part.value)
    if g.n and not solver._valid(tuple(range(g.n)), part.colors):
        raise AssertionError("assembled witness failed validation")
    return ChromaticResult(family, part.value, witness, solver.trace, solver.fallbacks,
                           solver.discrepancies, str(tree.mode))


def two_clique_color(g: Graph, q: int) -> Coloring:
    """2-clique-coloring of a connected (q,q-4)-graph with at least q vertices."""
    if not is_connected(g):
        raise ValueError("graph must be connected")
    if g.n < q:
        raise ValueError(f"graph must have at least q={q} vertices")
    res = solve(g, Family.CLIQUE, Mode.qq4(q), q_cap=max(q, DEFAULT_Q_CAP))
    if res.value > 2:
        raise ValueError(f"no 2-clique-coloring found (value {res.value})")
    return res.witness
