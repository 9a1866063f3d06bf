"""The integral group ring of a free group and the free differential calculus.

Group-ring keys are freely reduced eagerly: the augmentation and every
identity used here are representative-independent, and reduction keeps
term counts bounded.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .words import Letter, Word, free_reduce


class GroupRingElement:
    """Integer combination of freely reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, int] | None = None):
        collected: dict[Word, int] = {}
        for w, c in (terms or {}).items():
            if c == 0:
                continue
            key = free_reduce(w)
            new = collected.get(key, 0) + c
            if new == 0:
                collected.pop(key, None)
            else:
                collected[key] = new
        self.terms = collected

    @classmethod
    def from_word(cls, w: Word) -> "GroupRingElement":
        return cls({w: 1})

    @classmethod
    def zero(cls) -> "GroupRingElement":
        return cls()

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def scale(self, k: int) -> "GroupRingElement":
        return GroupRingElement({w: k * c for w, c in self.terms.items()})

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        out: dict[Word, int] = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                key = free_reduce(u * v)
                out[key] = out.get(key, 0) + cu * cv
        return GroupRingElement(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda w: (len(w), str(w)))
        parts = []
        for i, w in enumerate(keys):
            c = self.terms[w]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = str(w) if mag == 1 else f"{mag}*{w}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"GroupRingElement({self})"


def augmentation(x: GroupRingElement) -> int:
    return sum(x.terms.values())


def fox_derivative(x: GroupRingElement, gen: str) -> GroupRingElement:
    """The unique derivation sending the generator to 1 and others to 0.

    On a word x_1..x_k this is the sum over occurrences of the generator of
    the prefix up to (exclusive for positive, inclusive negated for inverse)
    that occurrence.
    """
    out: dict[Word, int] = {}
    for w, coeff in x.terms.items():
        for j, letter in enumerate(w):
            if letter.gen != gen:
                continue
            if letter.sign > 0:
                key = free_reduce(w[:j])
                out[key] = out.get(key, 0) + coeff
            else:
                key = free_reduce(w[: j + 1])
                out[key] = out.get(key, 0) - coeff
    return GroupRingElement(out)


def iterated_fox(w: Word, seq: Iterable[str]) -> GroupRingElement:
    """d_{a_1,...,a_k} applied to a word: a_k first, then a_{k-1}, and so on."""
    seq = list(seq)
    if not seq:
        raise ValueError("need at least one generator")
    x = GroupRingElement.from_word(w)
    for gen in reversed(seq):
        x = fox_derivative(x, gen)
    return x


def fox_eval(w: Word, seq: Iterable[str]) -> int:
    """Augmentation of the iterated derivative."""
    return augmentation(iterated_fox(w, seq))
