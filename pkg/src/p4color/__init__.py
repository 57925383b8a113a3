"""Exact colorings of graphs with few induced P4s.

Graphs are decomposed into union, join, spider and separable-component
nodes; closed-form rules at each node give the acyclic, star, nonrepetitive,
harmonious and clique chromatic numbers together with witness colorings.
An exhaustive oracle cross-checks the rules on small graphs.
"""
from .decomposition import (
    DecompositionTree,
    Mode,
    NotInClassError,
    build_tree,
    compute_q,
    is_p4_tidy,
    is_qq4,
    recognize,
)
from .engine import ChromaticResult, solve, two_clique_color
from .graph import Graph, complement, enumerate_p4s
from .io import ParseError, parse_graph, read_graph
from .oracle import Budget, exact_chromatic
from .validators import BudgetExceeded, Coloring, DisconnectedGraphError, Family, is_valid

__all__ = [
    "Budget",
    "BudgetExceeded",
    "ChromaticResult",
    "Coloring",
    "DecompositionTree",
    "DisconnectedGraphError",
    "Family",
    "Graph",
    "Mode",
    "NotInClassError",
    "ParseError",
    "build_tree",
    "complement",
    "compute_q",
    "enumerate_p4s",
    "exact_chromatic",
    "is_p4_tidy",
    "is_qq4",
    "is_valid",
    "parse_graph",
    "read_graph",
    "recognize",
    "solve",
    "two_clique_color",
]
