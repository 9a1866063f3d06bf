"""ASCII rendering of the by-hand evaluation procedure.

Each non-leaf step of a symbol shows the word with the step's resulting
multiplicities above the marked letter and the cobounding arrows of each
child list below.  The displayed cobounding pairs occurrences like
balanced delimiters (left-to-right stack); values are computed with
prefix potentials, so the choice is purely presentational.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UndefinedInvariant
from .linking import List, count, prefix_potential, standard_list
from .symbols import Symbol
from .words import Word


def canonical_cobounding(lst: List) -> list[tuple[int, int, int]]:
    """Stack-matched intervals (start, end, orientation) for display."""
    tokens: list[tuple[int, int]] = []
    for j, m in sorted(lst.assoc.items()):
        total = (1 if m > 0 else -1) * lst.word.letter_at(j).sign
        tokens.extend([(j, total)] * abs(m))
    stack: list[tuple[int, int]] = []
    intervals = []
    for pos, sign in tokens:
        if stack and stack[-1][1] == -sign:
            start, ssign = stack.pop()
            intervals.append((start, pos, ssign))
        else:
            stack.append((pos, sign))
    return sorted(intervals)


@dataclass
class _Block:
    node: Symbol
    result: List
    coboundings: list[list[tuple[int, int, int]]]


def render_diagram(w: Word, sym: Symbol) -> tuple[str, int | None, UndefinedInvariant | None]:
    """Render all evaluation levels; on an undefined invariant the diagram
    is still produced up to the failing level."""
    blocks: list[_Block] = []
    failure: UndefinedInvariant | None = None
    value: int | None = None

    def visit(node: Symbol) -> List:
        if not node.children:
            return standard_list(w, node.letter)
        potentials = []
        coboundings = []
        for child in node.children:
            child_list = visit(child)
            c = count(child_list)
            if c != 0:
                raise UndefinedInvariant(child, c)
            coboundings.append(canonical_cobounding(child_list))
            potentials.append(prefix_potential(child_list))
        assoc = {}
        for j in range(1, len(w) + 1):
            if w.letter_at(j).gen == node.letter:
                v = 1
                for g in potentials:
                    v *= g[j]
                assoc[j] = v
        result = List(w, node.letter, assoc)
        blocks.append(_Block(node, result, coboundings))
        return result

    try:
        final = visit(sym)
        if not sym.children:
            blocks.append(_Block(sym, final, []))
        value = count(final)
    except UndefinedInvariant as exc:
        failure = exc

    lines: list[str] = []
    if len(w) == 0:
        lines.append("(empty word)")
    for block in blocks:
        lines.extend(_render_block(w, block))
        lines.append("")
    if failure is not None:
        lines.append(str(failure))
    else:
        lines.append(f"count = {value}")
    return "\n".join(lines), value, failure


def _render_block(w: Word, block: _Block) -> list[str]:
    cells = [str(l) for l in w]
    mults = []
    for j in range(1, len(w) + 1):
        if w.letter_at(j).gen == block.node.letter:
            mults.append(str(block.result.multiplicity(j)))
        else:
            mults.append("")
    widths = [max(len(c), len(m)) + 1 for c, m in zip(cells, mults)]
    starts = []
    pos = 0
    for width in widths:
        starts.append(pos)
        pos += width
    total = pos
    centers = [s + len(c) // 2 for s, c in zip(starts, cells)]

    def row_of(entries: list[tuple[int, str]]) -> str:
        line = [" "] * total
        for col, text in entries:
            for i, ch in enumerate(text):
                if 0 <= col + i < total:
                    line[col + i] = ch
        return "".join(line).rstrip()

    out = [f"-- {block.node.canonical()} --"]
    mult_row = row_of([(starts[i], m) for i, m in enumerate(mults) if m])
    if mult_row:
        out.append(mult_row)
    out.append(row_of([(starts[i], c) for i, c in enumerate(cells)]))
    for intervals in block.coboundings:
        for row in _pack_rows(intervals):
            line = [" "] * total
            for (a, b, orient) in row:
                c1, c2 = centers[a - 1], centers[b - 1]
                head = ">" if orient > 0 else "<"
                for col in range(c1, c2 + 1):
                    line[col] = "-"
                line[c1] = head
                line[c2] = head
            out.append("".join(line).rstrip())
    return out


def _pack_rows(intervals: list[tuple[int, int, int]]):
    """Greedy first-fit packing of intervals into non-overlapping rows."""
    rows: list[list[tuple[int, int, int]]] = []
    for interval in sorted(intervals):
        placed = False
        for row in rows:
            if all(interval[0] > b or interval[1] < a for a, b, _ in row):
                row.append(interval)
                placed = True
                break
        if not placed:
            rows.append([interval])
    return rows
