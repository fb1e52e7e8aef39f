"""Graphviz DOT text for the coloured enlarged graph."""
from __future__ import annotations

from .core import COLOURS, CycleStrategy
from .errors import PreconditionError
from .structure import EdgeColour, EdgeColouring, colour_edges

_STYLE = {
    EdgeColour.YELLOW: 'color="gold"',
    EdgeColour.RED: 'color="red"',
    EdgeColour.BLUE: 'color="blue", dir=none',
}


def node(k: int, i: int) -> str:
    return f"v_{k}_{i}"


def export_dot(f: CycleStrategy, c: EdgeColouring | None = None) -> str:
    """Layers left to right; yellow edges point right, red ones left, blue
    ones are undirected.  Edges across the wrap boundary do not constrain
    the layout."""
    if c is None:
        c = colour_edges(f)
    if not isinstance(c, EdgeColouring) or c.n != f.n:
        raise PreconditionError("a colouring of this strategy is required")
    n = f.n
    lines = ["digraph hatcycle {", "  rankdir=LR;", "  node [shape=circle];"]
    for k in range(n):
        members = " ".join(f'{node(k, i)} [label="{i + 1}"];' for i in COLOURS)
        lines.append(f"  {{ rank=same; {members} }}")
    for k in range(n):
        k1 = (k + 1) % n
        wrap = ", constraint=false" if k1 == 0 else ""
        for b in COLOURS:
            for d in COLOURS:
                colour = c.grid[k][b][d]
                src, dst = node(k, b), node(k1, d)
                if colour is EdgeColour.RED:
                    # drawn tail-to-head leftwards but ranked as a forward edge
                    lines.append(f"  {src} -> {dst} [{_STYLE[colour]}, dir=back{wrap}];")
                else:
                    lines.append(f"  {src} -> {dst} [{_STYLE[colour]}{wrap}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
