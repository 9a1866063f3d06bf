"""Symbol graphs and Eil graphs: reduction to symbols, canonical forms,
and the distinct-vertex spanning computation.

A symbol graph is an oriented labeled tree whose edge endpoints carry
distinct free letters.  Eil graphs are the depth-zero-labeled case; the
ambient graph model additionally admits homogeneous edges (equal labels at
an edge), which are accepted only by the ``ambient`` entry points and are
what ``distinct_reduce`` eliminates.

Canonical forms treat edge reversal as a sign: the encoding depends only
on the underlying undirected labeled tree, each edge gets an intrinsic
canonical direction (from the endpoint with the smaller whole-tree rooted
encoding to the larger), and the sign is (-1) to the number of edges whose
actual direction disagrees.  An edge whose two rooted encodings coincide
(possible only for homogeneous edges) contributes no flip; such graphs
equal their own negatives and pair to zero with everything.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import (
    InvalidEdge,
    NotATree,
    ParseError,
    TooLarge,
    UndefinedReduction,
)
from .symbols import Symbol, SymbolSum, parse_symbol
from .words import Word


@dataclass(frozen=True)
class SymbolGraph:
    vertices: tuple[tuple[str, Symbol], ...]  # (id, label), id-sorted
    edges: tuple[tuple[str, str], ...]        # (tail id, head id)

    @classmethod
    def build(cls, vertices: dict[str, Symbol],
              edges: list[tuple[str, str]],
              ambient: bool = False) -> "SymbolGraph":
        g = cls(tuple(sorted(vertices.items(), key=lambda kv: _id_key(kv[0]))),
                tuple(edges))
        g.validate(ambient=ambient)
        return g

    @property
    def labels(self) -> dict[str, Symbol]:
        return dict(self.vertices)

    def ids(self) -> list[str]:
        return [v for v, _ in self.vertices]

    def adjacency(self) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v: [] for v in self.ids()}
        for t, h in self.edges:
            adj[t].append(h)
            adj[h].append(t)
        return adj

    def validate(self, ambient: bool = False) -> None:
        labels = self.labels
        if not labels:
            raise NotATree("graph has no vertices")
        for t, h in self.edges:
            if t not in labels or h not in labels:
                raise ParseError(f"edge endpoint {t if t not in labels else h!r}"
                                 " is not a declared vertex", 0)
        if len(self.edges) != len(labels) - 1:
            raise NotATree(
                f"{len(self.edges)} edges on {len(labels)} vertices"
            )
        seen = set()
        stack = [next(iter(labels))]
        adj = self.adjacency()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(adj[v])
        if len(seen) != len(labels):
            raise NotATree("graph is not connected")
        for t, h in self.edges:
            if not ambient and labels[t].letter == labels[h].letter:
                raise InvalidEdge(
                    f"edge {t}->{h} joins free letter {labels[t].letter!r} to itself"
                )
        if ambient:
            for v, sym in labels.items():
                if sym.children:
                    raise InvalidEdge(
                        f"ambient graphs need letter labels; {v} has {sym}"
                    )

    def is_eil(self) -> bool:
        return all(not sym.children for _, sym in self.vertices)

    def multidegree(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for _, sym in self.vertices:
            for letter in sym.letters():
                out[letter] = out.get(letter, 0) + 1
        return out

    def __str__(self) -> str:
        vs = ", ".join(f"{v}:{sym}" for v, sym in self.vertices)
        if not self.edges:
            return "{" + vs + "}"
        es = ", ".join(f"{t}->{h}" for t, h in self.edges)
        return "{" + vs + "; " + es + "}"


def _id_key(vid: str):
    m = re.fullmatch(r"([a-zA-Z_]+)(\d+)", vid)
    if m:
        return (m.group(1), int(m.group(2)))
    return (vid, -1)


_EDGE_RE = re.compile(r"\s*([a-zA-Z_][a-zA-Z0-9_]*)\s*->\s*([a-zA-Z_][a-zA-Z0-9_]*)\s*$")


def parse_graph(text: str, ambient: bool = False) -> SymbolGraph:
    """Parse ``{ v1:label, v2:label ; v1->v2, ... }`` into a validated graph."""
    s = text.strip()
    if not s.startswith("{") or not s.endswith("}"):
        raise ParseError("graph must be enclosed in braces", 0, expected="'{'")
    body = s[1:-1]
    if ";" in body:
        vertex_part, edge_part = body.split(";", 1)
    else:
        vertex_part, edge_part = body, ""
    vertices: dict[str, Symbol] = {}
    for entry in _split_top_level(vertex_part):
        if ":" not in entry:
            raise ParseError(f"vertex entry {entry.strip()!r} lacks ':'", 0)
        vid, label_text = entry.split(":", 1)
        vid = vid.strip()
        if not re.fullmatch(r"[a-zA-Z_][a-zA-Z0-9_]*", vid):
            raise ParseError(f"bad vertex id {vid!r}", 0)
        if vid in vertices:
            raise ParseError(f"duplicate vertex id {vid!r}", 0)
        vertices[vid] = parse_symbol(label_text.strip())
    edges: list[tuple[str, str]] = []
    for entry in _split_top_level(edge_part):
        m = _EDGE_RE.match(entry)
        if m is None:
            raise ParseError(f"bad edge {entry.strip()!r}", 0, expected="'v->w'")
        edges.append((m.group(1), m.group(2)))
    return SymbolGraph.build(vertices, edges, ambient=ambient)


def _split_top_level(text: str) -> list[str]:
    """Split on commas outside parentheses; drops empty entries."""
    parts, depth_count, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth_count += 1
        elif ch == ")":
            depth_count -= 1
        if ch == "," and depth_count == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p for p in parts if p.strip()]


# --- reduction -----------------------------------------------------------


def _contract(g: SymbolGraph, v: str, u: str) -> SymbolGraph:
    """Contract the edge between v and u, merging v into u with label
    (label_v) label_u."""
    labels = g.labels
    merged = Symbol(labels[u].letter, labels[u].children + (labels[v],))
    new_labels = {w: sym for w, sym in labels.items() if w != v}
    new_labels[u] = merged
    new_edges = []
    for t, h in g.edges:
        if {t, h} == {v, u}:
            continue
        new_edges.append((u if t == v else t, u if h == v else h))
    return SymbolGraph(
        tuple(sorted(new_labels.items(), key=lambda kv: _id_key(kv[0]))),
        tuple(new_edges),
    )


def reduce_at(g: SymbolGraph, v: str) -> list[tuple[int, SymbolGraph]]:
    """One reduction step: signed edge contractions at ``v``.

    The sign is +1 for an edge oriented away from v, -1 towards it; each
    contraction labels the merged vertex (label_v) label_other.
    """
    if v not in g.labels:
        raise UndefinedReduction(v, "no such vertex")
    incident = [(t, h) for t, h in g.edges if v in (t, h)]
    if not incident:
        raise UndefinedReduction(v, "vertex has no incident edge")
    incident.sort(key=lambda e: _id_key(e[1] if e[0] == v else e[0]))
    out = []
    for t, h in incident:
        sign = 1 if t == v else -1
        other = h if t == v else t
        contracted = _contract(g, v, other)
        try:
            contracted.validate()
        except InvalidEdge as exc:
            raise UndefinedReduction(v, str(exc)) from exc
        out.append((sign, contracted))
    return out


def reduce_full(g: SymbolGraph, order: list[str]) -> SymbolSum:
    """Compose reductions over ``order`` (all vertices but one) down to a
    signed sum of symbols."""
    if len(order) != len(g.labels) - 1:
        raise UndefinedReduction(
            ",".join(order) or "(empty order)",
            f"order must list {len(g.labels) - 1} vertices",
        )
    terms: list[tuple[int, SymbolGraph]] = [(1, g)]
    for v in order:
        next_terms: list[tuple[int, SymbolGraph]] = []
        for sign, graph in terms:
            for s2, g2 in reduce_at(graph, v):
                next_terms.append((sign * s2, g2))
        terms = next_terms
    out = SymbolSum()
    for sign, graph in terms:
        ((_, sym),) = graph.vertices
        out.add(sign, sym)
    return out


def default_order(g: SymbolGraph) -> list[str]:
    """Deterministic valid order: repeatedly take the smallest-keyed leaf,
    never the designated last vertex (largest key).  Leaf steps are always
    valid on a valid symbol graph."""
    labels = g.labels
    key = {v: (sym.canonical(), _id_key(v)) for v, sym in labels.items()}
    adj = {v: set(ns) for v, ns in g.adjacency().items()}
    last = max(adj, key=lambda v: key[v])
    order = []
    while len(adj) > 1:
        leaves = [v for v, ns in adj.items() if len(ns) <= 1 and v != last]
        v = min(leaves, key=lambda w: key[w])
        order.append(v)
        for n in adj.pop(v):
            adj[n].discard(v)
    return order


def graph_of_symbol(sym: Symbol) -> tuple[SymbolGraph, list[str]]:
    """The letter-labeled graph encoding the containment poset, with a
    containment-compatible order reducing back to +1 times the symbol."""
    vertices: dict[str, Symbol] = {}
    edges: list[tuple[str, str]] = []
    postorder: list[str] = []
    counter = [0]

    def visit(node: Symbol) -> str:
        counter[0] += 1
        vid = f"v{counter[0]}"
        vertices[vid] = Symbol(node.letter)
        for child in node.children:
            cid = visit(child)
            edges.append((cid, vid))
            # child ids already appended post-order inside visit
        postorder.append(vid)
        return vid

    root_id = visit(sym)
    order = [v for v in postorder if v != root_id]
    return SymbolGraph.build(vertices, edges), order


def eval_graph(g: SymbolGraph, w: Word) -> Fraction:
    """Reduce along the default order, then evaluate the symbol sum."""
    from .linking import eval_symbol_sum

    return eval_symbol_sum(reduce_full(g, default_order(g)), w)


# --- canonical forms -----------------------------------------------------


def _rooted_encoding(g: SymbolGraph, root: str) -> str:
    labels = {v: sym.canonical() for v, sym in g.vertices}
    adj = g.adjacency()

    def enc(v: str, parent: str | None) -> str:
        parts = sorted(enc(u, v) for u in adj[v] if u != parent)
        return "(" + labels[v] + "|" + "".join(parts) + ")"

    return enc(root, None)


def canonical_form(g: SymbolGraph) -> tuple[str, int, SymbolGraph]:
    """(encoding, sign, canonically oriented representative).

    The encoding ignores orientation; the sign records how many edges had
    to be flipped to reach the canonical orientation.
    """
    rooted = {v: _rooted_encoding(g, v) for v in g.ids()}
    encoding = min(rooted.values())
    sign = 1
    new_edges = []
    for t, h in g.edges:
        if rooted[t] > rooted[h]:
            sign = -sign
            new_edges.append((h, t))
        else:
            # equal rooted encodings: symmetric homogeneous edge, keep as is
            new_edges.append((t, h))
    rep = SymbolGraph(g.vertices, tuple(new_edges))
    return encoding, sign, rep


def canonicalize(g: SymbolGraph) -> tuple[str, int]:
    encoding, sign, _ = canonical_form(g)
    return encoding, sign


@dataclass
class GraphSum:
    """Exact-rational combination of canonically oriented graphs."""

    terms: dict[str, Fraction] = field(default_factory=dict)
    reps: dict[str, SymbolGraph] = field(default_factory=dict)

    def add(self, coeff, graph: SymbolGraph) -> "GraphSum":
        coeff = Fraction(coeff)
        if coeff == 0:
            return self
        enc, sign, rep = canonical_form(graph)
        new = self.terms.get(enc, Fraction(0)) + coeff * sign
        if new == 0:
            self.terms.pop(enc, None)
            self.reps.pop(enc, None)
        else:
            self.terms[enc] = new
            self.reps.setdefault(enc, rep)
        return self

    def items(self) -> list[tuple[Fraction, SymbolGraph]]:
        return [(self.terms[k], self.reps[k]) for k in sorted(self.terms)]

    def __iter__(self):
        return iter(self.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c} * {g}" for c, g in self.items())


# --- distinct-vertex spanning --------------------------------------------


def _prufer_trees(k: int):
    """Edge lists of all labeled trees on vertices 0..k-1, via Prufer codes."""
    import heapq

    if k == 1:
        yield []
        return
    if k == 2:
        yield [(0, 1)]
        return
    for seq in product(range(k), repeat=k - 2):
        degree = [1] * k
        for x in seq:
            degree[x] += 1
        edges = []
        leaves = [i for i in range(k) if degree[i] == 1]
        heapq.heapify(leaves)
        for x in seq:
            leaf = heapq.heappop(leaves)
            edges.append((leaf, x))
            degree[x] -= 1
            if degree[x] == 1:
                heapq.heappush(leaves, x)
        u = heapq.heappop(leaves)
        v = heapq.heappop(leaves)
        edges.append((u, v))
        yield edges


def enumerate_distinct_vertex_graphs(multidegree: dict[str, int],
                                     bound: int = 7) -> list[SymbolGraph]:
    """All distinct-vertex Eil graphs of the given label multiset, one
    canonical orientation per isomorphism class, sorted by encoding."""
    labels = []
    for gen in sorted(multidegree):
        if multidegree[gen] < 0:
            raise ValueError("multidegree counts must be nonnegative")
        labels.extend([gen] * multidegree[gen])
    k = len(labels)
    if k < 1:
        raise ValueError("multidegree must have total count >= 1")
    if k > bound:
        raise TooLarge(f"{k} vertices exceeds bound {bound}")
    seen: dict[str, SymbolGraph] = {}
    for edges in _prufer_trees(k):
        if any(labels[a] == labels[b] for a, b in edges):
            continue
        vertices = {f"v{i + 1}": Symbol(labels[i]) for i in range(k)}
        g = SymbolGraph.build(
            vertices, [(f"v{a + 1}", f"v{b + 1}") for a, b in edges]
        )
        enc, _, rep = canonical_form(g)
        seen.setdefault(enc, rep)
    return [seen[enc] for enc in sorted(seen)]


def distinct_reduce(g: SymbolGraph, bound: int = 7) -> GraphSum:
    """Rewrite an Eil graph (homogeneous edges allowed) as a rational
    combination of distinct-vertex graphs with the same functional.

    Solved exactly against the basis of bracket trees of the multidegree:
    the output pairs equally with every such tree.
    """
    from . import lie

    g.validate(ambient=True)
    if len(g.labels) > bound:
        raise TooLarge(f"{len(g.labels)} vertices exceeds bound {bound}")
    multidegree = g.multidegree()
    basis_graphs = enumerate_distinct_vertex_graphs(multidegree, bound=bound)
    trees = lie.lyndon_trees_of_multidegree(multidegree)
    matrix = [
        [Fraction(lie.graph_tree_pairing(h, t)) for h in basis_graphs]
        for t in trees
    ]
    rhs = [Fraction(lie.graph_tree_pairing(g, t)) for t in trees]
    from .linalg import solve

    coeffs = solve(matrix, rhs)
    out = GraphSum()
    for c, h in zip(coeffs, basis_graphs):
        out.add(c, h)
    return out
