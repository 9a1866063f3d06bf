"""Command-line front end.

Exit codes: 0 success, 1 undefined values or validation errors, 2 parse
errors.  With ``--json`` each invocation emits one envelope object::

    {"command": ..., "input": ..., "value": ..., "undefined_at": ..., "timing_ms": ...}

Rationals are serialized as "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import diagram, eil, fox, lie, linking, selfcheck, symbols, words
from .errors import LetterLinkError, ParseError, UndefinedInvariant


def _plain(value):
    """JSON-friendly form: exact integers stay ints, rationals become 'p/q'."""
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else f"{value}"
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _format(value) -> str:
    plain = _plain(value)
    if isinstance(plain, list):
        return json.dumps(plain, separators=(",", ":"))
    return str(plain)


class _Envelope:
    def __init__(self, command: str, inputs: dict, as_json: bool, timing: bool):
        self.data = {
            "command": command,
            "input": inputs,
            "value": None,
            "undefined_at": None,
        }
        self.as_json = as_json
        self.timing = timing
        self.lines: list[str] = []
        self.start = time.perf_counter()

    def set_value(self, value, text: str | None = None):
        self.data["value"] = _plain(value)
        self.lines.append(text if text is not None else _format(value))

    def set_undefined(self, exc: UndefinedInvariant):
        self.data["undefined_at"] = f"{exc.subsymbol} (count={exc.count})"
        self.lines.append(str(exc))

    def emit(self) -> int:
        self.data["timing_ms"] = round(
            (time.perf_counter() - self.start) * 1000, 3
        )
        if self.as_json:
            print(json.dumps(self.data))
        else:
            for line in self.lines:
                print(line)
            if self.timing:
                print(f"timing: {self.data['timing_ms']} ms")
        return 1 if self.data["undefined_at"] is not None else 0


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--json", action="store_true", help="emit a JSON envelope")
    parser.add_argument("--timing", action="store_true",
                        help="report the computation time")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="letterlink",
        description="letter-linking invariants, graph reductions, and the "
        "free differential calculus on free-group words",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a symbol or graph on a word")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--symbol")
    group.add_argument("--graph")
    p.add_argument("--word", required=True)
    _add_common(p)

    p = sub.add_parser("fox", help="iterated derivative of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--seq", required=True, help="comma-separated generators, e.g. a,b,a")
    p.add_argument("--full", action="store_true",
                   help="print the group-ring element instead of its augmentation")
    _add_common(p)

    p = sub.add_parser("reduce", help="reduce a graph to a sum of symbols")
    p.add_argument("--graph", required=True)
    p.add_argument("--order", help="comma-separated vertex ids (default: automatic)")
    _add_common(p)

    p = sub.add_parser("distinct", help="rewrite over distinct-vertex graphs")
    p.add_argument("--graph", required=True)
    _add_common(p)

    p = sub.add_parser("pair", help="configuration pairing of graphs with brackets")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--graph")
    group.add_argument("--graphsum")
    p.add_argument("--lie", required=True)
    _add_common(p)

    p = sub.add_parser("basis", help="Lyndon bracket basis of a weight")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--multidegree", help="comma-separated counts matching --gens")
    _add_common(p)

    p = sub.add_parser("matrix", help="pairing matrix of dual graphs vs basis trees")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--multidegree", required=True)
    _add_common(p)

    p = sub.add_parser("coords", help="graded Lie coordinates of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--weight", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("diagram", help="render the by-hand evaluation diagram")
    p.add_argument("--word", required=True)
    p.add_argument("--symbol", required=True)
    _add_common(p)

    p = sub.add_parser("selfcheck", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", choices=("small", "full"), default="small")
    _add_common(p)

    return parser


def _parse_graphsum(text: str) -> eil.GraphSum:
    """Parse `coeff * {...} + ...`; bare graphs get coefficient 1."""
    out = eil.GraphSum()
    pos = 0
    sign = Fraction(1)
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch == "+":
            sign = Fraction(1)
            pos += 1
        elif ch == "-":
            sign = Fraction(-1)
            pos += 1
        elif ch == "{":
            depth = 0
            end = pos
            while end < len(text):
                if text[end] == "{":
                    depth += 1
                elif text[end] == "}":
                    depth -= 1
                    if depth == 0:
                        break
                end += 1
            if depth != 0:
                raise ParseError("unbalanced '{'", pos)
            out.add(sign, eil.parse_graph(text[pos : end + 1]))
            sign = Fraction(1)
            pos = end + 1
        else:
            star = text.find("*", pos)
            if star < 0:
                raise ParseError(f"got {ch!r}", pos, expected="coefficient or '{'")
            sign *= Fraction(text[pos:star].strip())
            pos = star + 1
    return out


def _split_gens(text: str) -> list[str]:
    return [g.strip() for g in text.split(",") if g.strip()]


def _multidegree_from(gens: list[str], counts_text: str) -> dict[str, int]:
    counts = [int(c) for c in counts_text.split(",")]
    if len(counts) != len(gens):
        raise ParseError("multidegree length differs from --gens", 0)
    return dict(zip(gens, counts))


def _documented_dual_rows(gens: list[str], md: dict[str, int]) -> list[eil.SymbolGraph]:
    """Row graphs for the matrix command: curated duals for the
    two-generator weight-5 block shapes, star graphs when one count is 1,
    greedy rank-increasing selection otherwise."""
    counts = [md[g] for g in gens]
    if len(gens) == 2:
        relabel = {"a": gens[0], "b": gens[1]}
        if counts == [3, 2] or counts == [2, 3]:
            texts = (selfcheck.DOCUMENTED_DUALS_32 if counts == [3, 2]
                     else selfcheck.DOCUMENTED_DUALS_23)
            rows = []
            for text in texts:
                g = eil.parse_graph(text)
                rows.append(eil.SymbolGraph.build(
                    {v: symbols.Symbol(relabel[s.letter])
                     for v, s in g.vertices},
                    list(g.edges)))
            return rows
    singles = [g for g in gens if md[g] == 1]
    if len(singles) == 1 and len([g for g in gens if md[g] > 0]) == 2:
        center = singles[0]
        (other,) = [g for g in gens if md[g] > 0 and g != center]
        vertices = {f"v{i + 1}": symbols.Symbol(other) for i in range(md[other])}
        vertices[f"v{md[other] + 1}"] = symbols.Symbol(center)
        edges = [(f"v{i + 1}", f"v{md[other] + 1}") for i in range(md[other])]
        return [eil.SymbolGraph.build(vertices, edges)]
    # greedy: scan canonical enumeration, keep rank-increasing rows
    from .linalg import rank

    trees = lie.lyndon_trees_of_multidegree(md)
    rows: list[eil.SymbolGraph] = []
    matrix: list[list[Fraction]] = []
    for g in eil.enumerate_distinct_vertex_graphs(md):
        row = [Fraction(lie.graph_tree_pairing(g, t)) for t in trees]
        if rank(matrix + [row]) > rank(matrix):
            rows.append(g)
            matrix.append(row)
        if len(rows) == len(trees):
            break
    return rows


def _run(args) -> int:
    env = _Envelope(args.command, {k: v for k, v in vars(args).items()
                                   if k not in ("command", "json", "timing") and v is not None},
                    args.json, args.timing)
    if args.command == "eval":
        w = words.parse_word(args.word)
        try:
            if args.symbol is not None:
                value = linking.eval_symbol(symbols.parse_symbol(args.symbol), w)
            else:
                value = eil.eval_graph(eil.parse_graph(args.graph), w)
            env.set_value(value)
        except UndefinedInvariant as exc:
            env.set_undefined(exc)
    elif args.command == "fox":
        w = words.parse_word(args.word)
        seq = _split_gens(args.seq)
        if args.full:
            element = fox.iterated_fox(w, seq)
            env.set_value(str(element))
        else:
            env.set_value(fox.fox_eval(w, seq))
    elif args.command == "reduce":
        graph = eil.parse_graph(args.graph)
        order = (args.order.replace(" ", "").split(",") if args.order
                 else eil.default_order(graph))
        total = eil.reduce_full(graph, order)
        env.set_value([[_plain(c), str(s)] for c, s in total], str(total))
    elif args.command == "distinct":
        graph = eil.parse_graph(args.graph, ambient=True)
        total = eil.distinct_reduce(graph)
        env.set_value([[_plain(c), str(g)] for c, g in total], str(total))
    elif args.command == "pair":
        lie_part = lie.parse_lie(args.lie)
        if args.graph is not None:
            graphs = eil.parse_graph(args.graph, ambient=True)
        else:
            graphs = _parse_graphsum(args.graphsum)
        env.set_value(lie.extended_pairing(graphs, lie_part))
    elif args.command == "basis":
        gens = _split_gens(args.gens)
        trees = lie.lyndon_basis(args.weight, gens)
        if args.multidegree:
            md = _multidegree_from(gens, args.multidegree)
            trees = [t for t in trees
                     if t.multidegree() == {g: c for g, c in md.items() if c}]
        env.set_value([str(t) for t in trees], "\n".join(str(t) for t in trees))
    elif args.command == "matrix":
        gens = _split_gens(args.gens)
        md = _multidegree_from(gens, args.multidegree)
        if sum(md.values()) != args.weight:
            raise ParseError("multidegree does not sum to --weight", 0)
        trees = lie.lyndon_trees_of_multidegree(md)
        rows = _documented_dual_rows(gens, md)
        matrix = [[lie.extended_pairing(g, t) for t in trees] for g in rows]
        env.set_value(matrix)
    elif args.command == "coords":
        w = words.parse_word(args.word)
        element = lie.lie_coordinates(w, args.weight)
        env.set_value([[_plain(c), str(t)] for c, t in element.items()],
                      str(element))
    elif args.command == "diagram":
        w = words.parse_word(args.word)
        sym = symbols.parse_symbol(args.symbol)
        text, value, failure = diagram.render_diagram(w, sym)
        if failure is not None:
            env.set_undefined(failure)
            env.lines = [text]
        else:
            env.set_value(value, text)
    elif args.command == "selfcheck":
        results = selfcheck.run_all(seed=args.seed, scale=args.scale)
        all_ok = all(ok for _, ok, _ in results)
        report = [f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
                  for name, ok, detail in results]
        env.set_value(
            [{"name": name, "passed": ok, "detail": detail}
             for name, ok, detail in results],
            "\n".join(report),
        )
        code = env.emit()
        return code if all_ok else 1
    return env.emit()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except LetterLinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
