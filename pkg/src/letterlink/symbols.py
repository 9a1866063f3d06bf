"""Parenthesized letter-linking expressions as rooted labeled trees.

A symbol has a free letter and a (possibly empty) ordered list of child
symbols; validity requires every child's free letter to differ from its
parent's.  Child order is presentational: ``equivalent`` and the canonical
string ignore it, while ``Symbol`` equality itself is structural so that
distinct labelings can coexist in sets.

The text form uses the grammar ``symbol := item+`` where exactly one item
is a bare identifier (the free letter) and every other item is a
parenthesized symbol, e.g. ``((a)b)a`` or ``(a)(c)b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InvalidSymbol, ParseError, UnknownGenerator
from .words import GENERATOR_RE


@dataclass(frozen=True)
class Symbol:
    letter: str
    children: tuple["Symbol", ...] = ()

    def __post_init__(self):
        for child in self.children:
            if child.letter == self.letter:
                raise InvalidSymbol(
                    f"child free letter {child.letter!r} equals its parent's"
                )

    @property
    def depth(self) -> int:
        return sum(1 + c.depth for c in self.children)

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.children)

    def letters(self) -> list[str]:
        out = [self.letter]
        for c in self.children:
            out.extend(c.letters())
        return out

    def canonical(self) -> str:
        """Canonical string: children sorted by encoding, free letter last."""
        parts = sorted(f"({c.canonical()})" for c in self.children)
        return "".join(parts) + self.letter

    def __str__(self) -> str:
        return self.canonical()


def symbol(text: str) -> Symbol:
    return parse_symbol(text)


def parse_symbol(text: str) -> Symbol:
    sym, pos = _parse_symbol_body(text, 0, closer=None)
    if pos != len(text):
        raise ParseError(f"trailing input {text[pos:]!r}", pos)
    return sym


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_symbol_body(text: str, pos: int, closer: str | None):
    free: str | None = None
    children: list[Symbol] = []
    while True:
        pos = _skip_ws(text, pos)
        if pos >= len(text) or text[pos] == closer:
            break
        ch = text[pos]
        if ch == "(":
            child, pos = _parse_symbol_body(text, pos + 1, closer=")")
            if pos >= len(text) or text[pos] != ")":
                raise ParseError("unbalanced parenthesis", pos, expected="')'")
            pos += 1
            children.append(child)
        else:
            m = GENERATOR_RE.match(text, pos)
            if m is None:
                raise ParseError(f"got {ch!r}", pos, expected="identifier or '('")
            if free is not None:
                raise ParseError(
                    f"second bare letter {m.group()!r}", pos,
                    expected="exactly one free letter per level",
                )
            free = m.group()
            pos = m.end()
    if free is None:
        raise ParseError("level has no free letter", pos, expected="identifier")
    return Symbol(free, tuple(children)), pos


def depth(sym: Symbol) -> int:
    return sym.depth


def equivalent(a: Symbol, b: Symbol) -> bool:
    """True iff the labeled containment posets are isomorphic."""
    return a.canonical() == b.canonical()


def relabel_symbol(mapping: Mapping[str, str], sym: Symbol) -> Symbol:
    if sym.letter not in mapping:
        raise UnknownGenerator(sym.letter)
    return Symbol(
        mapping[sym.letter],
        tuple(relabel_symbol(mapping, c) for c in sym.children),
    )


def preimages_of_symbol(mapping: Mapping[str, str], sym: Symbol) -> list[Symbol]:
    """All labelings of the tree by source generators mapping to the given
    labels, filtered to valid symbols.  Returned as labelings of the ordered
    tree; equivalent symbols may repeat."""
    fibers: dict[str, list[str]] = {}
    for src, dst in mapping.items():
        fibers.setdefault(dst, []).append(src)
    for vals in fibers.values():
        vals.sort()

    def build(node: Symbol) -> list[Symbol]:
        choices = fibers.get(node.letter, [])
        child_options = [build(c) for c in node.children]
        out = []
        for letter in choices:
            for combo in _product(child_options):
                try:
                    out.append(Symbol(letter, tuple(combo)))
                except InvalidSymbol:
                    pass
        return out

    return build(sym)


def _product(options: list[list[Symbol]]):
    if not options:
        yield ()
        return
    for head in options[0]:
        for rest in _product(options[1:]):
            yield (head,) + rest


@dataclass
class SymbolSum:
    """Exact-rational combination of symbols, keyed by canonical form."""

    terms: dict[str, Fraction] = field(default_factory=dict)
    reps: dict[str, Symbol] = field(default_factory=dict)

    def add(self, coeff, sym: Symbol) -> "SymbolSum":
        coeff = Fraction(coeff)
        if coeff == 0:
            return self
        key = sym.canonical()
        new = self.terms.get(key, Fraction(0)) + coeff
        if new == 0:
            self.terms.pop(key, None)
            self.reps.pop(key, None)
        else:
            self.terms[key] = new
            self.reps[key] = sym
        return self

    def items(self) -> list[tuple[Fraction, Symbol]]:
        return [(self.terms[k], self.reps[k]) for k in sorted(self.terms)]

    def __iter__(self):
        return iter(self.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolSum) and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            coeff = self.terms[key]
            parts.append(f"{coeff}*{key}")
        return " + ".join(parts)


def symbol_sum(terms: Iterable[tuple[object, Symbol]]) -> SymbolSum:
    s = SymbolSum()
    for coeff, sym in terms:
        s.add(coeff, sym)
    return s


def leibniz_terms(syms: list[Symbol]) -> SymbolSum:
    """The k-term sum whose letter-linking evaluation vanishes wherever all
    terms are defined: term i grafts every other symbol, parenthesized, onto
    symbol i's top level."""
    if len(syms) < 2:
        raise InvalidSymbol("need at least two symbols")
    letters = [s.letter for s in syms]
    if len(set(letters)) != len(letters):
        raise InvalidSymbol("free letters must be pairwise distinct")
    out = SymbolSum()
    for i, s in enumerate(syms):
        others = tuple(t for j, t in enumerate(syms) if j != i)
        out.add(1, Symbol(s.letter, s.children + others))
    return out
