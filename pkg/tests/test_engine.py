import pytest
from builders import spider

from p4color.decomposition import Mode, NotInClassError, build_tree, compute_q
from p4color.engine import Partial, combine_join, combine_union, solve, spider_value, two_clique_color
from p4color.generate import GeneratorSpec, generate
from p4color.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    is_connected,
    join,
    path_graph,
)
from p4color.oracle import exact_chromatic
from p4color.validators import DisconnectedGraphError, Family, is_clique_coloring, is_valid

FIVE = [Family.ACYCLIC, Family.STAR, Family.NONREPETITIVE, Family.HARMONIOUS, Family.CLIQUE]


def solved(g, family, mode=None):
    res = solve(g, family, mode)
    assert is_valid(g, res.witness.colors, family)
    assert len(set(res.witness.colors)) == res.value
    return res.value


def partial(g, family, offset=0):
    best = exact_chromatic(g, family)
    return Partial(best.k, {v + offset: c for v, c in enumerate(best.colors)})


def test_union_rule_examples():
    a = combine_union(Family.ACYCLIC, [partial(complete_graph(3), Family.ACYCLIC),
                                       partial(complete_graph(2), Family.ACYCLIC, 3)])
    assert a.value == 3
    assert solved(disjoint_union(path_graph(4), path_graph(4)), Family.NONREPETITIVE) == 3
    assert solved(disjoint_union(complete_graph(3), complete_graph(3)), Family.CLIQUE) == 2
    with pytest.raises(DisconnectedGraphError):
        combine_union(Family.HARMONIOUS, [Partial(1, {0: 0}), Partial(1, {1: 0})])


def test_join_rule_examples():
    two = partial(empty_graph(2), Family.ACYCLIC)
    assert combine_join(Family.ACYCLIC, two, partial(empty_graph(2), Family.ACYCLIC, 2)).value == 3
    assert combine_join(Family.HARMONIOUS, Partial(1, {0: 0}), Partial(1, {1: 0})).value == 2
    assert solved(join(cycle_graph(5), path_graph(4)), Family.CLIQUE) == 2
    assert solved(join(empty_graph(2), empty_graph(2)), Family.ACYCLIC) == 3


def test_spider_rule_examples():
    g = spider(3, thick=True)
    part = build_tree(g, Mode.p4tidy()).root.spider
    assert spider_value(Family.STAR, part, 0) == 4
    assert solved(g, Family.STAR) == 4 == exact_chromatic(g, Family.STAR).k

    g = spider(3, thick=False, r=1)
    part = build_tree(g, Mode.p4tidy()).root.spider
    assert spider_value(Family.ACYCLIC, part, 1) == 4
    assert solved(g, Family.ACYCLIC) == 4

    g = spider(2, thick=False, r=1)
    part = build_tree(g, Mode.p4tidy()).root.spider
    assert spider_value(Family.HARMONIOUS, part, 0) == 4
    assert solved(g, Family.HARMONIOUS) == 4 == exact_chromatic(g, Family.HARMONIOUS).k


@pytest.mark.parametrize("family,extra,thick,expected", [
    (Family.ACYCLIC, ("C", "K2"), False, 3),
    (Family.STAR, ("S", "K2bar"), False, 3),
    (Family.STAR, ("C", "K2"), True, 4),
])
def test_quasi_spider_examples(family, extra, thick, expected):
    g = spider(2, thick, extra=extra)
    assert exact_chromatic(g, family).k == expected
    assert solved(g, family, Mode.p4tidy()) == expected


def test_separable_clique_witness():
    weights = {"separable": 10, "union": 1, "join": 1, "spider": 0.5, "small": 0.3}
    found = 0
    for seed in range(60):
        g, _ = generate(GeneratorSpec("qq4", 6, 10, seed=seed, q=7, weights=weights))
        tree = build_tree(g, Mode.qq4(7))
        node = tree.root
        if node.kind != "separable":
            continue
        found += 1
        res = solve(g, Family.CLIQUE, tree=tree)
        assert res.value == 2
        c = res.witness.colors
        assert {c[v] for v in node.separable.H1}.isdisjoint({c[v] for v in node.separable.H2})
        assert len({c[v] for v in node.children[0].vertices} | {c[v] for v in node.separable.H2}) == 1
    assert found


def test_separable_nodes_match_the_oracle():
    weights = {"separable": 10, "union": 1, "join": 1, "spider": 0.5, "small": 0.3}
    checked = 0
    for seed in range(40):
        q = 6 + seed % 3
        g, _ = generate(GeneratorSpec("qq4", 6, 9, seed=seed, q=q, weights=weights))
        tree = build_tree(g, Mode.qq4(q))
        if not any(n.kind == "separable" for n in tree.root.walk()):
            continue
        for fam in FIVE:
            if fam is Family.HARMONIOUS and not is_connected(g):
                continue
            res = solve(g, fam, tree=tree)
            assert res.value == exact_chromatic(g, fam).k
            assert not any("separable" in fb for fb in res.fallbacks)
            checked += 1
    assert checked


def test_p4_with_a_vertex_on_its_midpoints():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (4, 1), (4, 2)])
    mode = Mode.qq4(compute_q(g))
    assert solved(g, Family.ACYCLIC, mode) == exact_chromatic(g, Family.ACYCLIC).k == 3


def test_small_prime_leaf_goes_to_the_oracle():
    g = cycle_graph(5)
    res = solve(g, Family.STAR, Mode.qq4(compute_q(g)))
    assert res.value == 4
    assert res.trace[-1].rule == "leaf:small:oracle"


def test_solve_examples():
    assert solved(cycle_graph(5), Family.ACYCLIC) == 3
    assert solved(join(empty_graph(3), empty_graph(3)), Family.STAR) == 4


def test_cograph_values_collapse():
    for seed in range(30):
        g, _ = generate(GeneratorSpec("cograph", 2, 10, seed=seed))
        values = {solved(g, f) for f in (Family.ACYCLIC, Family.STAR, Family.NONREPETITIVE)}
        assert len(values) == 1


def test_chain_on_connected_instances():
    chain = [Family.ACYCLIC, Family.STAR, Family.NONREPETITIVE, Family.HARMONIOUS]
    for seed in range(30):
        g, _ = generate(GeneratorSpec("p4tidy", 3, 9, seed=seed, connected=True))
        values = [solve(g, f).value for f in chain]
        assert values == sorted(values)
        assert exact_chromatic(g, Family.PROPER).k <= values[0]


def test_acyclic_spider_adds_exactly_k():
    for seed in range(40):
        g, _ = generate(GeneratorSpec("p4sparse", 5, 10, seed=seed, weights={"spider": 3, "union": 1, "join": 1}))
        tree = build_tree(g, Mode.qq4(5))
        res = solve(g, Family.ACYCLIC, tree=tree)
        values = {t.node: t.value for t in res.trace}
        for node in tree.root.walk():
            if node.kind != "spider" or not node.children:
                continue
            nid, inner = tree.node_id(node), tree.node_id(node.children[0])
            assert values[nid] - values[inner] == node.spider.k


def test_rejections():
    with pytest.raises(NotInClassError):
        solve(path_graph(4), Family.ACYCLIC, Mode.qq4(4))
    with pytest.raises(DisconnectedGraphError):
        solve(empty_graph(2), Family.HARMONIOUS)


def test_empty_graph_has_value_zero():
    for fam in (Family.ACYCLIC, Family.STAR, Family.NONREPETITIVE, Family.CLIQUE):
        assert solve(empty_graph(0), fam).value == 0


def test_result_json_shape():
    res = solve(path_graph(4), Family.STAR)
    doc = res.to_dict(emit_witness=True)
    assert list(doc) == ["variant", "value", "mode", "witness", "trace", "fallbacks"]
    assert doc["witness"] == {str(v): c for v, c in enumerate(res.witness.colors)}
    assert "witness" not in res.to_dict(emit_witness=False)


def test_two_clique_color_examples():
    g = join(empty_graph(2), join(path_graph(2), empty_graph(3)))
    c = two_clique_color(g, 4)
    assert set(c.colors) == {0, 1} and is_clique_coloring(g, c.colors)
    g = spider(3, thick=True)
    c = two_clique_color(g, compute_q(g))
    assert len(set(c.colors)) == 2 and is_clique_coloring(g, c.colors)


def test_two_clique_color_preconditions():
    # K2 has fewer vertices than any q; solve still gives the 0,1 coloring
    with pytest.raises(ValueError):
        two_clique_color(complete_graph(2), 4)
    assert solve(complete_graph(2), Family.CLIQUE).witness.colors == (0, 1)
    with pytest.raises(ValueError):
        two_clique_color(disjoint_union(path_graph(4), path_graph(4)), 5)
