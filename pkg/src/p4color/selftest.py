"""Engine-versus-oracle equivalence suites.

Two instance sources feed the same checker: every P4-tidy graph from the
networkx atlas of small graphs (all graphs up to isomorphism on at most 7
vertices), and a seeded stream of generator-produced class members.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .decomposition import Mode, build_tree, is_p4_tidy
from .engine import solve
from .generate import GeneratorSpec, generate
from .graph import Graph, is_connected
from .oracle import Budget, exact_chromatic
from .validators import Family

VARIANTS = (Family.ACYCLIC, Family.STAR, Family.NONREPETITIVE, Family.HARMONIOUS, Family.CLIQUE)
ATLAS_MAX = 7
TARGETS = ("cograph", "qq4", "p4tidy", "p4sparse")
# separable nodes are rare under uniform weights; tilt toward them
RANDOM_WEIGHTS = {"union": 1.0, "join": 1.0, "spider": 1.0, "quasi_spider": 1.0,
                  "separable": 4.0, "small": 0.3, "base": 1.0}


@dataclass
class Instance:
    label: str
    graph: Graph
    mode: Mode


@dataclass
class Report:
    instances: int = 0
    checks: int = 0
    mismatches: list[dict] = field(default_factory=list)
    fallbacks: list[dict] = field(default_factory=list)
    separable_harmonious: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def merge(self, other: "Report") -> "Report":
        return Report(self.instances + other.instances, self.checks + other.checks,
                      self.mismatches + other.mismatches, self.fallbacks + other.fallbacks,
                      self.separable_harmonious + other.separable_harmonious)

    def to_dict(self) -> dict:
        differing = [d for d in self.separable_harmonious if d["differs"]]
        return {
            "instances": self.instances,
            "checks": self.checks,
            "mismatches": self.mismatches,
            "fallbacks": self.fallbacks,
            "harmonious_separable_report": {
                "checked": len(self.separable_harmonious),
                "differing": len(differing),
                "entries": differing,
            },
            "ok": self.ok,
        }


def atlas_graphs(n_max: int = ATLAS_MAX) -> list[Graph]:
    """All graphs on 1..n_max vertices up to isomorphism (n_max <= 7)."""
    import networkx as nx

    if n_max > ATLAS_MAX:
        raise ValueError(f"the graph atlas stops at {ATLAS_MAX} vertices")
    return [Graph.from_edges(G.number_of_nodes(), list(G.edges()))
            for G in nx.graph_atlas_g()[1:] if G.number_of_nodes() <= n_max]


def atlas_instances(n_max: int = ATLAS_MAX) -> list[Instance]:
    return [Instance(f"atlas#{i}", g, Mode.p4tidy())
            for i, g in enumerate(atlas_graphs(n_max)) if is_p4_tidy(g)]


def random_instances(samples: int, seed: int = 0, n_max: int = 10) -> list[Instance]:
    """Mixed class members; index ``i`` uses generator seed ``seed + i``."""
    out = []
    for i in range(samples):
        target = TARGETS[i % len(TARGETS)]
        q = (5, 6, 7, 8)[(i // len(TARGETS)) % 4]
        spec = GeneratorSpec(target=target, n_min=min(4, n_max), n_max=n_max, seed=seed + i,
                             q=q, weights=dict(RANDOM_WEIGHTS))
        g, _ = generate(spec)
        mode = {"cograph": Mode.qq4(4), "p4sparse": Mode.qq4(5),
                "qq4": Mode.qq4(q), "p4tidy": Mode.p4tidy()}[target]
        out.append(Instance(f"{target}(seed={seed + i},{mode})", g, mode))
    return out


def check(instances: list[Instance], variants=VARIANTS, budget: Budget | None = None) -> Report:
    budget = budget or Budget()
    report = Report()
    for inst in instances:
        g = inst.graph
        tree = build_tree(g, inst.mode)
        report.instances += 1
        for fam in variants:
            if fam is Family.HARMONIOUS and not is_connected(g):
                continue
            res = solve(g, fam, tree=tree, budget=budget)
            expected = exact_chromatic(g, fam, budget).k
            report.checks += 1
            if res.value != expected:
                report.mismatches.append({"instance": inst.label, "variant": fam.value,
                                          "engine": res.value, "oracle": expected,
                                          "n": g.n, "edges": [list(e) for e in g.edges()]})
            for fb in res.fallbacks:
                report.fallbacks.append({"instance": inst.label, "variant": fam.value, "event": fb})
            for d in res.harmonious_discrepancies:
                report.separable_harmonious.append({"instance": inst.label, **d})
    return report


def run(n_max: int = ATLAS_MAX, samples: int = 0, seed: int = 0) -> Report:
    """Atlas suite up to ``min(n_max, 7)`` vertices plus ``samples`` random
    members with up to ``max(n_max, 4)`` vertices."""
    report = check(atlas_instances(min(n_max, ATLAS_MAX)))
    if samples:
        report = report.merge(check(random_instances(samples, seed, max(n_max, 4))))
    return report
