import random
from itertools import combinations

import pytest
from builders import spider
from conftest import graphs
from hypothesis import given, settings

from p4color.decomposition import (
    Mode,
    NotInClassError,
    build_tree,
    characteristic_graph,
    compute_q,
    homogeneous_sets,
    is_module,
    is_p4_tidy,
    is_p_connected,
    is_qq4,
    is_split,
    maximal_strong_modules,
    p_components,
    reassemble_edges,
    recognize,
    recognize_quasi_spider,
    recognize_spider,
    separable_bipartition,
    tree_to_dict,
    tree_to_dot,
)
from p4color.generate import GeneratorSpec, generate
from p4color.graph import (
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    enumerate_p4s,
    induced_subgraph,
    join,
    path_graph,
)


def brute_modules(g):
    return [frozenset(s) for r in range(1, g.n + 1) for s in combinations(range(g.n), r)
            if all(len({g.has_edge(x, v) for v in s}) == 1 for x in set(range(g.n)) - set(s))]


def brute_maximal_strong(g):
    mods = brute_modules(g)
    strong = [m for m in mods if all(m <= o or o <= m or not (m & o) for o in mods)]
    proper = [m for m in strong if len(m) < g.n]
    return sorted(sorted(m) for m in proper if not any(m < o for o in proper))


# ---------------------------------------------------------------------------
# modules and the characteristic graph


def test_homogeneous_set_of_a_small_join():
    g = join(empty_graph(2), empty_graph(1))
    assert homogeneous_sets(g) == [[0, 1]]
    char, shrink = characteristic_graph(g)
    assert (char.n, char.m) == (2, 1)
    assert shrink[0] == shrink[1] != shrink[2]


def test_p4_is_prime():
    assert homogeneous_sets(path_graph(4)) == []
    char, _ = characteristic_graph(path_graph(4))
    assert char.adj == path_graph(4).adj


def test_thick_spider_head_is_a_module():
    g = spider(3, thick=True, r=2, r_edges=[(0, 1)])
    assert is_module(g, [0, 1])
    assert homogeneous_sets(g) == [[0, 1]]


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=2, max_n=7))
def test_maximal_strong_modules_match_definition(g):
    assert sorted(maximal_strong_modules(g)) == brute_maximal_strong(g)


# ---------------------------------------------------------------------------
# p-connectivity and separability


def test_p_connectivity_examples():
    assert is_p_connected(path_graph(4))
    assert is_p_connected(cycle_graph(5))
    assert not is_p_connected(cycle_graph(4))
    assert not is_p_connected(join(empty_graph(2), complete_graph(3)))


def brute_p_connected(g):
    p4s = [set(p) for p in enumerate_p4s(g)]
    for r in range(1, g.n // 2 + 1):
        for side in combinations(range(g.n), r):
            a = set(side)
            if not any(p & a and p - a for p in p4s):
                return False
    return True


def brute_separable(g):
    p4s = enumerate_p4s(g)
    for r in range(1, g.n):
        for side in combinations(range(g.n), r):
            h1 = set(side)
            if all(x in h1 and y in h1 and w not in h1 and z not in h1
                   for w, x, y, z in p4s if {w, x, y, z} & h1 and {w, x, y, z} - h1):
                return True
    return False


def test_p_connectivity_and_separability_match_definitions(atlas):
    for g in atlas:
        if g.n < 2:
            continue
        assert is_p_connected(g) == brute_p_connected(g), g
        for comp in p_components(g):
            h, _ = induced_subgraph(g, comp)
            assert is_p_connected(h)
        if g.n >= 4 and is_p_connected(g):
            found = separable_bipartition(g)
            assert (found is not None) == brute_separable(g), g
            if found is not None:
                # the clique side of a split characteristic graph
                char, _ = characteristic_graph(g)
                assert is_split(char)


def test_separable_bipartition_examples():
    assert separable_bipartition(path_graph(4)) == ([1, 2], [0, 3])
    assert separable_bipartition(cycle_graph(5)) is None
    assert separable_bipartition(path_graph(5)) is None
    with pytest.raises(ValueError):
        separable_bipartition(cycle_graph(4))


# ---------------------------------------------------------------------------
# spiders


def test_spider_examples():
    thin = recognize_spider(spider(2, thick=False, r=1))
    assert thin is not None and thin.R == (0,)
    thick = recognize_spider(spider(3, thick=True))
    assert thick is not None and thick.thick and thick.k == 3
    assert recognize_spider(cycle_graph(5)) is None
    assert recognize_quasi_spider(cycle_graph(5)) is None


# with two slots the thick and thin readings coincide
@pytest.mark.parametrize("k,thick", [(2, False), (3, False), (3, True), (4, False), (4, True)])
def test_constructed_spiders_are_recognized(k, thick):
    for r, r_edges in ((0, []), (1, []), (3, [(0, 1)])):
        g = spider(k, thick, r=r, r_edges=r_edges)
        part = recognize_spider(g)
        assert part is not None
        part.check(g)
        assert (part.k, part.thick, len(part.R)) == (k, thick, r)


@pytest.mark.parametrize("position", "CS")
@pytest.mark.parametrize("kind", ["K2", "K2bar"])
def test_constructed_quasi_spiders_are_recognized(position, kind):
    for k, thick in ((2, False), (3, False), (3, True)):
        g = spider(k, thick, r=1, extra=(position, kind), slot=1)
        assert recognize_spider(g) is None
        part = recognize_quasi_spider(g)
        assert part is not None
        part.check(g)
        assert part.replaced is not None


def test_spider_recognition_is_sound(atlas):
    for g in atlas:
        for recognizer in (recognize_spider, recognize_quasi_spider):
            part = recognizer(g)
            if part is not None:
                part.check(g)


# ---------------------------------------------------------------------------
# trees


def test_cograph_trees_use_only_union_and_join():
    for seed in range(20):
        g, _ = generate(GeneratorSpec("cograph", 2, 12, seed=seed))
        tree = build_tree(g, Mode.qq4(4))
        kinds = {n.kind for n in tree.root.walk()}
        assert kinds <= {"union", "join", "leaf"}
        assert all(n.reason == "K1" for n in tree.root.walk() if n.kind == "leaf")


def test_c5_is_a_base_leaf():
    tree = build_tree(cycle_graph(5), Mode.p4tidy())
    assert tree.root.kind == "leaf" and tree.root.reason == "C5"


def test_p4_is_rejected_as_a_cograph():
    with pytest.raises(NotInClassError) as err:
        build_tree(path_graph(4), Mode.qq4(4))
    assert err.value.witness == (0, 1, 2, 3)
    member, witness, reason = recognize(path_graph(4), Mode.qq4(4))
    assert not member and witness == (0, 1, 2, 3) and reason


def test_empty_graph_is_an_empty_leaf():
    tree = build_tree(empty_graph(0), Mode.p4tidy())
    assert tree.root.kind == "leaf" and tree.root.reason == "empty"


def _check_tree(g, tree):
    for node in tree.root.walk():
        expected = {(u, v) for u, v in combinations(node.vertices, 2) if g.has_edge(u, v)}
        assert reassemble_edges(g, node) == expected
        if node.children:
            union = sorted(v for ch in node.children for v in ch.vertices)
            attached = ()
            if node.spider is not None:
                attached = node.spider.C + node.spider.S
            if node.separable is not None:
                attached = node.separable.H
            assert sorted(union + list(attached)) == sorted(node.vertices)
        if node.kind == "separable":
            h, _ = induced_subgraph(g, node.separable.H)
            assert is_split(characteristic_graph(h)[0])
        if node.kind == "leaf" and node.reason == "small":
            assert len(node.vertices) <= tree.mode.q
        if node.kind == "leaf" and node.reason in ("P5", "C5", "P5bar"):
            sub, _ = induced_subgraph(g, node.vertices)
            ref = {"P5": path_graph(5), "C5": cycle_graph(5), "P5bar": complement(path_graph(5))}[node.reason]
            assert sub.m == ref.m
            assert sorted(sub.degree(v) for v in range(5)) == sorted(ref.degree(v) for v in range(5))


@pytest.mark.parametrize("target", ["cograph", "p4sparse", "p4tidy"])
def test_round_trip_on_large_generated_members(target):
    for seed in range(15):
        g, _ = generate(GeneratorSpec(target, 20, 40, seed=seed))
        mode = {"cograph": Mode.qq4(4), "p4sparse": Mode.qq4(5), "p4tidy": Mode.p4tidy()}[target]
        _check_tree(g, build_tree(g, mode))


def test_round_trip_on_generated_qq4_members():
    weights = {"separable": 4, "union": 1, "join": 1, "spider": 1, "small": 0.3}
    seen_separable = False
    for seed in range(40):
        q = 6 + seed % 3
        g, _ = generate(GeneratorSpec("qq4", 6, 12, seed=seed, q=q, weights=weights))
        tree = build_tree(g, Mode.qq4(q))
        _check_tree(g, tree)
        seen_separable |= any(n.kind == "separable" for n in tree.root.walk())
    assert seen_separable


def test_generated_trees_reassemble_without_build_tree():
    for seed in range(20):
        g, root = generate(GeneratorSpec("p4tidy", 5, 20, seed=seed))
        for node in root.walk():
            expected = {(u, v) for u, v in combinations(node.vertices, 2) if g.has_edge(u, v)}
            assert reassemble_edges(g, node) == expected


def test_tree_serialization():
    g = spider(3, thick=True, r=2)
    tree = build_tree(g, Mode.p4tidy())
    doc = tree_to_dict(tree)
    assert list(doc) == ["mode", "q", "n", "root"]
    assert doc["root"]["type"] == "spider"
    assert doc["root"]["spider"]["thickness"] == "thick"
    dot = tree_to_dot(tree)
    assert dot.startswith("graph decomposition {") and "spider thick" in dot


# ---------------------------------------------------------------------------
# class membership


def test_q_values():
    assert compute_q(join(empty_graph(2), complete_graph(3))) == 4
    assert compute_q(path_graph(4)) == 5
    assert compute_q(spider(3, thick=False, r=2)) == 5
    assert compute_q(spider(4, thick=True)) == 5


def test_p4_tidy_examples():
    assert is_p4_tidy(cycle_graph(5))
    assert is_p4_tidy(join(empty_graph(3), empty_graph(2)))
    assert is_p4_tidy(complement(cycle_graph(5)))


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=8))
def test_compute_q_is_the_least_q(g):
    q = compute_q(g)
    assert is_qq4(g, q, "exhaustive")
    if q > 4:
        assert not is_qq4(g, q - 1, "exhaustive")


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=8))
def test_p4_sparse_graphs_have_q_at_most_five(g):
    member, _, _ = recognize(g, Mode.qq4(5))
    if member:
        assert compute_q(g) == (4 if not enumerate_p4s(g) else 5)


def test_structural_and_exhaustive_membership_agree():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(4, 9)
        g = Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < 0.45])
        for q in (4, 5, 6, 7, 8):
            assert is_qq4(g, q, "structural") == is_qq4(g, q, "exhaustive"), (g, q)
