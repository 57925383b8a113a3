"""Graph file formats.

* edge list: one ``u v`` pair per line, 0-indexed, ``#`` starts a comment.
  A line holding a single integer declares the vertex count, which is the
  only way to give isolated vertices beyond the largest index.
* DIMACS: ``c`` comments, a ``p edge n m`` header, then ``e u v`` lines
  (1-indexed); the number of ``e`` lines must equal ``m``.
* JSON: ``{"n": int, "edges": [[u, v], ...], "labels": [...]}`` with optional
  labels.

Duplicate edges and self-loops are rejected in every format.
"""
from __future__ import annotations

import json
from pathlib import Path

from .graph import Graph


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


def _finish(n: int, edges: list[tuple[int, int, int | None]], labels=None) -> Graph:
    seen = set()
    for u, v, line in edges:
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) out of range for n={n}", line)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key}", line)
        seen.add(key)
    return Graph.from_edges(n, [(u, v) for u, v, _ in edges], labels)


def parse_edge_list(text: str) -> Graph:
    edges = []
    declared = None
    top = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if len(nums) == 1:
            if declared is not None or edges:
                raise ParseError("vertex count must come first and only once", lineno)
            if nums[0] < 0:
                raise ParseError("negative vertex count", lineno)
            declared = nums[0]
            continue
        if len(nums) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        u, v = nums
        if u < 0 or v < 0:
            raise ParseError(f"negative vertex index in {line!r}", lineno)
        edges.append((u, v, lineno))
        top = max(top, u, v)
    n = declared if declared is not None else top + 1
    return _finish(n, edges)


def parse_dimacs(text: str) -> Graph:
    n = m = None
    edges = []
    header_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("second 'p' header", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"expected 'p edge n m', got {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"bad header counts in {line!r}", lineno) from None
            header_line = lineno
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before 'p' header", lineno)
            if len(parts) != 3:
                raise ParseError(f"expected 'e u v', got {line!r}", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"bad vertex in {line!r}", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range 1..{n} in {line!r}", lineno)
            edges.append((u - 1, v - 1, lineno))
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge n m' header")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}", header_line)
    return _finish(n, edges)


def parse_json_graph(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"invalid JSON: {err.msg}", err.lineno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("n"), int) or doc["n"] < 0:
        raise ParseError("JSON graph needs an integer field 'n' >= 0")
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        raise ParseError("'edges' must be a list")
    edges = []
    for i, e in enumerate(raw_edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise ParseError(f"edge #{i} is not a pair of integers: {e!r}")
        edges.append((e[0], e[1], None))
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != doc["n"]):
        raise ParseError("'labels' must be a list with one entry per vertex")
    return _finish(doc["n"], edges, [str(x) for x in labels] if labels is not None else None)


PARSERS = {"edgelist": parse_edge_list, "dimacs": parse_dimacs, "json": parse_json_graph}


def guess_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".dimacs", ".col", ".clq"):
        return "dimacs"
    if suffix == ".json":
        return "json"
    return "edgelist"


def parse_graph(text: str, fmt: str = "edgelist") -> Graph:
    try:
        parser = PARSERS[fmt]
    except KeyError:
        raise ValueError(f"unknown graph format {fmt!r}") from None
    return parser(text)


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    text = Path(path).read_text()
    return parse_graph(text, fmt or guess_format(path))


def graph_to_json(g: Graph) -> dict:
    out = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    return out


def dumps(doc) -> str:
    """Canonical JSON text used for every CLI output."""
    return json.dumps(doc, indent=2) + "\n"
