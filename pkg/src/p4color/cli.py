"""Command-line front end.

Results go to stdout as JSON (or DOT for ``decompose --format dot``);
diagnostics go to stderr. Exit codes:

==  =========================================================
0   success
2   graph is outside the requested class
3   harmonious coloring requested for a disconnected graph
4   unreadable or malformed input
5   budget exceeded (oracle size, q cap, validator limit)
6   selftest found an engine/oracle discrepancy
7   ``oracle --verify``: the witness is not a valid coloring
64  command-line usage error
==  =========================================================

``P4COLOR_ORACLE_BUDGET`` sets the default oracle vertex limit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .decomposition import Mode, NotInClassError, build_tree, compute_q, recognize, tree_to_dict, tree_to_dot
from .engine import DEFAULT_Q_CAP, default_mode, solve
from .graph import is_connected
from .io import ParseError, dumps, read_graph
from .oracle import Budget, exact_chromatic
from .validators import BudgetExceeded, Coloring, DisconnectedGraphError, Family, is_valid

EXIT_OK = 0
EXIT_NOT_IN_CLASS = 2
EXIT_DISCONNECTED = 3
EXIT_INPUT = 4
EXIT_BUDGET = 5
EXIT_SELFTEST = 6
EXIT_INVALID_WITNESS = 7
EXIT_USAGE = 64

VARIANTS = ("acyclic", "star", "thue", "nonrepetitive", "harmonious", "clique")


class _Parser(argparse.ArgumentParser):
    # argparse's own exit code 2 would collide with class rejection
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _graph(args):
    try:
        return read_graph(args.file, args.input_format)
    except OSError as err:
        raise _Fail(EXIT_INPUT, f"cannot read {args.file}: {err.strerror}") from None
    except ParseError as err:
        raise _Fail(EXIT_INPUT, f"{args.file}: {err}") from None


def _mode(args, g) -> Mode:
    if args.mode == "p4tidy":
        return Mode.p4tidy()
    if args.mode == "qq4":
        return Mode.qq4(args.q if args.q is not None else compute_q(g))
    if args.mode == "cograph":
        return Mode.qq4(4)
    return default_mode(g, args.q_cap)


def _budget(args) -> Budget:
    base = Budget.from_env()
    if getattr(args, "budget", None) is None:
        return base
    return Budget(max_vertices=args.budget, max_vertices_slow=args.budget, max_nodes=base.max_nodes)


def cmd_recognize(args, out):
    g = _graph(args)
    if args.cls == "qq4":
        if args.q is None:
            raise _Fail(EXIT_USAGE, "--class qq4 needs --q")
        mode = Mode.qq4(args.q)
    elif args.cls == "cograph":
        mode = Mode.qq4(4)
    else:
        mode = Mode.p4tidy()
    member, witness, reason = recognize(g, mode)
    doc = {"class": args.cls, "member": member}
    if args.cls == "qq4":
        doc["q"] = args.q
    if not member:
        doc["witness"] = list(witness) if witness is not None else None
        doc["reason"] = reason
    out.write(dumps(doc))


def cmd_qvalue(args, out):
    out.write(dumps({"q": compute_q(_graph(args))}))


def cmd_decompose(args, out):
    g = _graph(args)
    tree = build_tree(g, _mode(args, g))
    out.write(tree_to_dot(tree) if args.format == "dot" else dumps(tree_to_dict(tree)))


def cmd_color(args, out):
    g = _graph(args)
    family = Family.parse(args.variant)
    if family is Family.HARMONIOUS:
        # reject before spending time on the decomposition
        if not is_connected(g):
            raise DisconnectedGraphError("harmonious coloring requires a connected graph")
    res = solve(g, family, _mode(args, g), q_cap=max(args.q_cap, args.q or 0))
    out.write(dumps(res.to_dict(args.emit_witness)))


def _read_witness(path: str, n: int) -> tuple[int, ...]:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as err:
        raise _Fail(EXIT_INPUT, f"cannot read {path}: {err.strerror}") from None
    except json.JSONDecodeError as err:
        raise _Fail(EXIT_INPUT, f"{path}: line {err.lineno}: invalid JSON: {err.msg}") from None
    if isinstance(doc, dict):
        doc = doc.get("witness")
    if isinstance(doc, dict):
        try:
            colors = [doc[str(v)] for v in range(n)]
        except KeyError as err:
            raise _Fail(EXIT_INPUT, f"{path}: witness has no color for vertex {err.args[0]}") from None
    elif isinstance(doc, list):
        colors = doc
    else:
        raise _Fail(EXIT_INPUT, f"{path}: expected a witness object or a list of colors")
    if len(colors) != n or not all(isinstance(c, int) and c >= 0 for c in colors):
        raise _Fail(EXIT_INPUT, f"{path}: witness must give a non-negative integer color to each of {n} vertices")
    return tuple(colors)


def cmd_oracle(args, out):
    g = _graph(args)
    family = Family.parse(args.variant)
    if args.verify:
        colors = _read_witness(args.verify, g.n)
        valid = is_valid(g, colors, family)
        out.write(dumps({"variant": family.value, "valid": valid,
                         "colors": len(set(colors))}))
        if not valid:
            raise _Fail(EXIT_INVALID_WITNESS, "witness is not a valid coloring")
        return
    best: Coloring = exact_chromatic(g, family, _budget(args))
    doc = {"variant": family.value, "value": best.k, "mode": "oracle"}
    if args.emit_witness:
        doc["witness"] = {str(v): c for v, c in enumerate(best.colors)}
    doc["trace"] = []
    doc["fallbacks"] = []
    out.write(dumps(doc))


def cmd_selftest(args, out):
    from .selftest import run

    report = run(args.n_max, args.samples, args.seed)
    out.write(dumps(report.to_dict()))
    if not report.ok:
        raise _Fail(EXIT_SELFTEST, f"{len(report.mismatches)} engine/oracle discrepancies")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="p4color", description="Colorings of graphs with few P4s.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(sp):
        sp.add_argument("file", help="graph file (edge list, DIMACS or JSON)")
        sp.add_argument("--input-format", choices=("edgelist", "dimacs", "json"),
                        help="override detection by file extension")
        return sp

    def with_mode(sp):
        sp.add_argument("--mode", choices=("auto", "p4tidy", "qq4", "cograph"), default="auto")
        sp.add_argument("--q", type=int, help="q for --mode qq4 (default: the least q that fits)")
        sp.add_argument("--q-cap", type=int, default=DEFAULT_Q_CAP,
                        help="refuse --mode auto when q(G) exceeds this")
        return sp

    sp = with_file(sub.add_parser("recognize", help="class membership test"))
    sp.add_argument("--class", dest="cls", choices=("cograph", "p4tidy", "qq4"), default="p4tidy")
    sp.add_argument("--q", type=int)
    sp.set_defaults(func=cmd_recognize)

    sp = with_file(sub.add_parser("qvalue", help="least q with G a (q,q-4)-graph"))
    sp.set_defaults(func=cmd_qvalue)

    sp = with_mode(with_file(sub.add_parser("decompose", help="print the decomposition tree")))
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    sp.set_defaults(func=cmd_decompose)

    sp = with_mode(with_file(sub.add_parser("color", help="optimal coloring via the decomposition")))
    sp.add_argument("--variant", required=True, choices=VARIANTS)
    sp.add_argument("--emit-witness", action="store_true")
    sp.set_defaults(func=cmd_color)

    sp = with_file(sub.add_parser("oracle", help="exhaustive exact solver and witness checker"))
    sp.add_argument("--variant", required=True, choices=VARIANTS)
    sp.add_argument("--budget", type=int, help="largest vertex count to search")
    sp.add_argument("--emit-witness", action="store_true")
    sp.add_argument("--verify", metavar="WITNESS", help="check a witness JSON instead of solving")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("selftest", help="engine-versus-oracle equivalence suite")
    sp.add_argument("--n-max", type=int, default=7)
    sp.add_argument("--samples", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except _Fail as e:
        code, msg = e.code, str(e)
    except NotInClassError as e:
        code = EXIT_NOT_IN_CLASS
        msg = f"not in class: {e.reason}" + (f" (witness {list(e.witness)})" if e.witness else "")
    except DisconnectedGraphError as e:
        code, msg = EXIT_DISCONNECTED, str(e)
    except BudgetExceeded as e:
        code, msg = EXIT_BUDGET, f"budget exceeded: {e}"
    else:
        return EXIT_OK
    err.write(f"p4color: {msg}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
