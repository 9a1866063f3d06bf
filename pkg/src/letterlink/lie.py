"""Bracket trees, the Lyndon basis, the configuration pairing, and
Lie-side coordinates.

Bracket trees are planar (left/right matters) and are not quotiented by
antisymmetry or Jacobi in storage; canonical coordinates go through the
Lyndon basis when needed.  The pairing with letter-labeled graphs maps
each graph edge to the deepest tree vertex under both endpoint leaves,
takes +1 when the tail's leaf sits left of the head's and -1 otherwise,
multiplies over edges if that map is bijective onto the internal vertices,
and otherwise gives zero.  For repeated labels the pairing sums over all
label-preserving bijections between graph vertices and tree leaves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable

from .errors import LabelMismatch, MixedGrading, NotInGamma, ParseError
from .linalg import solve_unique
from .symbols import Symbol
from .words import GENERATOR_RE, Word


@dataclass(frozen=True)
class BracketTree:
    letter: str | None = None
    left: "BracketTree | None" = None
    right: "BracketTree | None" = None

    @classmethod
    def leaf(cls, letter: str) -> "BracketTree":
        return cls(letter=letter)

    @classmethod
    def pair(cls, left: "BracketTree", right: "BracketTree") -> "BracketTree":
        return cls(left=left, right=right)

    def is_leaf(self) -> bool:
        return self.letter is not None

    @property
    def weight(self) -> int:
        if self.is_leaf():
            return 1
        return self.left.weight + self.right.weight

    def leaves(self) -> list[str]:
        if self.is_leaf():
            return [self.letter]
        return self.left.leaves() + self.right.leaves()

    def multidegree(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for l in self.leaves():
            out[l] = out.get(l, 0) + 1
        return out

    def __str__(self) -> str:
        if self.is_leaf():
            return self.letter
        return f"[{self.left},{self.right}]"


def bracket_tree(expr) -> BracketTree:
    """Convert a nested-pair commutator expression to a bracket tree."""
    if isinstance(expr, str):
        return BracketTree.leaf(expr)
    left, right = expr
    return BracketTree.pair(bracket_tree(left), bracket_tree(right))


class LieElement:
    """Weight-homogeneous rational combination of bracket trees."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[BracketTree, Fraction] | None = None):
        data = {t: Fraction(c) for t, c in (terms or {}).items() if c != 0}
        weights = {t.weight for t in data}
        if len(weights) > 1:
            raise MixedGrading(f"mixed weights {sorted(weights)}")
        self.terms = data

    @property
    def weight(self) -> int | None:
        for t in self.terms:
            return t.weight
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, Fraction(0)) + c
        return LieElement(out)

    def scale(self, k) -> "LieElement":
        return LieElement({t: Fraction(k) * c for t, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElement) and self.terms == other.terms

    def items(self) -> list[tuple[Fraction, BracketTree]]:
        return [(self.terms[t], t) for t in sorted(self.terms, key=str)]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (c, t) in enumerate(self.items()):
            body = str(t) if abs(c) == 1 else f"{abs(c)}*{t}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" {'-' if c < 0 else '+'} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LieElement({self})"


# --- parsing ---------------------------------------------------------------


def parse_lie(text: str) -> LieElement:
    pos = 0
    terms: dict[BracketTree, Fraction] = {}
    first = True
    while True:
        pos = _skip_ws(text, pos)
        if pos >= len(text):
            if first:
                raise ParseError("empty Lie expression", pos)
            break
        sign = Fraction(1)
        if text[pos] in "+-":
            sign = Fraction(-1) if text[pos] == "-" else Fraction(1)
            pos += 1
        elif not first:
            raise ParseError(f"got {text[pos]!r}", pos, expected="'+' or '-'")
        pos = _skip_ws(text, pos)
        coeff, pos = _parse_coefficient(text, pos)
        tree, pos = _parse_tree(text, pos)
        terms[tree] = terms.get(tree, Fraction(0)) + sign * coeff
        first = False
    return LieElement(terms)


_RATIONAL_RE = re.compile(r"(\d+)(?:\s*/\s*(\d+))?\s*\*")


def _parse_coefficient(text: str, pos: int) -> tuple[Fraction, int]:
    m = _RATIONAL_RE.match(text, pos)
    if m is None:
        return Fraction(1), pos
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return Fraction(num, den), m.end()


def _parse_tree(text: str, pos: int) -> tuple[BracketTree, int]:
    pos = _skip_ws(text, pos)
    if pos >= len(text):
        raise ParseError("unexpected end of input", pos, expected="tree")
    if text[pos] == "[":
        left, pos = _parse_tree(text, pos + 1)
        pos = _skip_ws(text, pos)
        if pos >= len(text) or text[pos] != ",":
            raise ParseError("missing ','", pos, expected="','")
        right, pos = _parse_tree(text, pos + 1)
        pos = _skip_ws(text, pos)
        if pos >= len(text) or text[pos] != "]":
            raise ParseError("missing ']'", pos, expected="']'")
        return BracketTree.pair(left, right), pos + 1
    m = GENERATOR_RE.match(text, pos)
    if m is None:
        raise ParseError(f"got {text[pos]!r}", pos, expected="identifier or '['")
    return BracketTree.leaf(m.group()), m.end()


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


# --- Lyndon basis ----------------------------------------------------------


def lyndon_words(length: int, alphabet: list[str]) -> list[tuple[str, ...]]:
    """Lyndon words of exactly the given length, in lexicographic order
    (Duval's generation)."""
    gens = list(alphabet)
    k = len(gens)
    if k == 0 or length < 1:
        return []
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == length:
            out.append(tuple(gens[i] for i in w))
        m = len(w)
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def standard_bracketing(word: tuple[str, ...]) -> BracketTree:
    """Right-factorization bracketing of a Lyndon word."""
    if len(word) == 1:
        return BracketTree.leaf(word[0])
    best = None
    for i in range(1, len(word)):
        suffix = word[i:]
        if best is None or suffix < best[0]:
            best = (suffix, i)
    suffix, i = best
    return BracketTree.pair(standard_bracketing(word[:i]),
                            standard_bracketing(suffix))


def lyndon_basis(weight: int, alphabet: Iterable[str]) -> list[BracketTree]:
    return [standard_bracketing(w) for w in lyndon_words(weight, list(alphabet))]


def lyndon_trees_of_multidegree(multidegree: dict[str, int]) -> list[BracketTree]:
    alphabet = sorted(g for g, c in multidegree.items() if c > 0)
    weight = sum(c for c in multidegree.values())
    out = []
    for w in lyndon_words(weight, alphabet):
        content: dict[str, int] = {}
        for letter in w:
            content[letter] = content.get(letter, 0) + 1
        if content == {g: c for g, c in multidegree.items() if c > 0}:
            out.append(standard_bracketing(w))
    return out


# --- configuration pairing ---------------------------------------------------


def _tree_spans(tree: BracketTree):
    """Leaf labels in planar order plus the leaf-index span of each internal
    vertex (spans identify internal vertices uniquely)."""
    leaves: list[str] = []
    internals: list[tuple[int, int]] = []

    def rec(node: BracketTree) -> tuple[int, int]:
        if node.is_leaf():
            leaves.append(node.letter)
            return (len(leaves) - 1, len(leaves))
        lo, _ = rec(node.left)
        _, hi = rec(node.right)
        internals.append((lo, hi))
        return (lo, hi)

    rec(tree)
    return leaves, internals


def _gcv(internals: list[tuple[int, int]], i: int, j: int) -> tuple[int, int]:
    best = None
    for lo, hi in internals:
        if lo <= i < hi and lo <= j < hi:
            if best is None or hi - lo < best[1] - best[0]:
                best = (lo, hi)
    return best


def _pair_assigned(edges, leaf_of_vertex, internals) -> int:
    seen = set()
    sign = 1
    for tail, head in edges:
        i, j = leaf_of_vertex[tail], leaf_of_vertex[head]
        span = _gcv(internals, i, j)
        if span in seen:
            return 0
        seen.add(span)
        sign *= 1 if i < j else -1
    if len(seen) != len(internals):
        return 0
    return sign


def configuration_pairing(graph, tree: BracketTree) -> int:
    """Pairing in the unique-label case: every label occurs once on each side."""
    leaves, internals = _tree_spans(tree)
    labels = {v: sym.letter for v, sym in graph.vertices}
    if sorted(labels.values()) != sorted(leaves) or len(set(leaves)) != len(leaves):
        raise LabelMismatch(
            f"graph labels {sorted(labels.values())} vs leaves {sorted(leaves)}"
        )
    leaf_index = {letter: i for i, letter in enumerate(leaves)}
    leaf_of_vertex = {v: leaf_index[letter] for v, letter in labels.items()}
    return _pair_assigned(graph.edges, leaf_of_vertex, internals)


def graph_tree_pairing(graph, tree: BracketTree) -> int:
    """Single graph against single tree, summing over label-preserving
    bijections of vertices onto leaves; zero on multidegree mismatch."""
    leaves, internals = _tree_spans(tree)
    labels = {v: sym.letter for v, sym in graph.vertices}
    if sorted(labels.values()) != sorted(leaves):
        return 0
    by_letter_vertices: dict[str, list[str]] = {}
    for v, letter in sorted(labels.items()):
        by_letter_vertices.setdefault(letter, []).append(v)
    by_letter_leaves: dict[str, list[int]] = {}
    for i, letter in enumerate(leaves):
        by_letter_leaves.setdefault(letter, []).append(i)
    letters = sorted(by_letter_vertices)
    perm_sets = [permutations(by_letter_leaves[l]) for l in letters]
    total = 0
    for combo in product(*perm_sets):
        leaf_of_vertex = {}
        for letter, perm in zip(letters, combo):
            for v, i in zip(by_letter_vertices[letter], perm):
                leaf_of_vertex[v] = i
        total += _pair_assigned(graph.edges, leaf_of_vertex, internals)
    return total


def extended_pairing(graphs, lie_part) -> Fraction:
    """Bilinear extension of the pairing to graph sums and Lie elements."""
    graph_terms = _as_graph_terms(graphs)
    tree_terms = _as_tree_terms(lie_part)
    total = Fraction(0)
    for cg, g in graph_terms:
        for ct, t in tree_terms:
            total += cg * ct * graph_tree_pairing(g, t)
    return total


def _as_graph_terms(graphs):
    from .eil import GraphSum, SymbolGraph

    if isinstance(graphs, SymbolGraph):
        return [(Fraction(1), graphs)]
    if isinstance(graphs, GraphSum):
        return list(graphs.items())
    return [(Fraction(c), g) for c, g in graphs]


def _as_tree_terms(lie_part):
    if isinstance(lie_part, BracketTree):
        return [(Fraction(1), lie_part)]
    if isinstance(lie_part, LieElement):
        return list(lie_part.items())
    return [(Fraction(c), t) for c, t in lie_part]


def chain_graph(seq: list[str]):
    """The linear graph a_1 -> a_2 -> ... -> a_k."""
    from .eil import SymbolGraph

    vertices = {f"v{i + 1}": Symbol(g) for i, g in enumerate(seq)}
    edges = [(f"v{i + 1}", f"v{i + 2}") for i in range(len(seq) - 1)]
    # repeats in seq give homogeneous edges, so build in the ambient model
    return SymbolGraph.build(vertices, edges, ambient=True)


# --- Lie image and coordinates ----------------------------------------------


def _to_lyndon(terms: list[tuple[Fraction, BracketTree]]) -> LieElement:
    """Rewrite a formal tree combination in Lyndon coordinates by solving
    against the chain-graph functionals, block by multidegree."""
    if not terms:
        return LieElement()
    weights = {t.weight for _, t in terms}
    if len(weights) != 1:
        raise MixedGrading(f"mixed weights {sorted(weights)}")
    blocks: dict[tuple, list[tuple[Fraction, BracketTree]]] = {}
    for c, t in terms:
        key = tuple(sorted(t.multidegree().items()))
        blocks.setdefault(key, []).append((c, t))
    out: dict[BracketTree, Fraction] = {}
    for key, block in sorted(blocks.items()):
        multidegree = dict(key)
        lyndon = lyndon_trees_of_multidegree(multidegree)
        words_c = [
            w
            for w in lyndon_words(sum(multidegree.values()), sorted(multidegree))
            if _content(w) == multidegree
        ]
        if not lyndon:
            continue
        matrix = [
            [Fraction(graph_tree_pairing(chain_graph(list(c)), t)) for t in lyndon]
            for c in words_c
        ]
        rhs = [
            sum(
                (coeff * graph_tree_pairing(chain_graph(list(c)), t)
                 for coeff, t in block),
                Fraction(0),
            )
            for c in words_c
        ]
        for coeff, tree in zip(solve_unique(matrix, rhs), lyndon):
            if coeff != 0:
                out[tree] = out.get(tree, Fraction(0)) + coeff
    return LieElement(out)


def _content(word: tuple[str, ...]) -> dict[str, int]:
    out: dict[str, int] = {}
    for letter in word:
        out[letter] = out.get(letter, 0) + 1
    return out


def lie_image_of_bracket_word(text: str) -> LieElement:
    """Lie image of a formal product of iterated commutators of generators,
    expressed in the Lyndon basis."""
    pos = 0
    factors: list[BracketTree] = []
    while True:
        pos = _skip_ws(text, pos)
        if pos >= len(text):
            break
        tree, pos = _parse_tree(text, pos)
        factors.append(tree)
    if not factors:
        return LieElement()
    weights = {t.weight for t in factors}
    if len(weights) != 1:
        raise MixedGrading(f"mixed weights {sorted(weights)}")
    return _to_lyndon([(Fraction(1), t) for t in factors])


def lie_coordinates(w: Word, weight: int) -> LieElement:
    """Lyndon coordinates of the class of ``w`` in its graded quotient.

    Requires every functional of weight below the target to vanish on w
    (otherwise NotInGamma); coordinates are then cut out exactly by the
    iterated-derivative functionals over Lyndon sequences.
    """
    from .fox import fox_eval

    alphabet = sorted(w.generators())
    if not alphabet:
        return LieElement()
    for lower in range(1, weight):
        for seq in product(alphabet, repeat=lower):
            if fox_eval(w, seq) != 0:
                raise NotInGamma(seq)
    out: dict[BracketTree, Fraction] = {}
    words_k = lyndon_words(weight, alphabet)
    blocks: dict[tuple, list[tuple[str, ...]]] = {}
    for c in words_k:
        blocks.setdefault(tuple(sorted(_content(c).items())), []).append(c)
    for key, block_words in sorted(blocks.items()):
        lyndon = lyndon_trees_of_multidegree(dict(key))
        matrix = [
            [Fraction(graph_tree_pairing(chain_graph(list(c)), t)) for t in lyndon]
            for c in block_words
        ]
        rhs = [Fraction(fox_eval(w, list(c))) for c in block_words]
        for coeff, tree in zip(solve_unique(matrix, rhs), lyndon):
            if coeff != 0:
                out[tree] = out.get(tree, Fraction(0)) + coeff
    return LieElement(out)
