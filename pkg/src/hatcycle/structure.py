"""Continuation counts, the yellow/red/blue edge colouring, the
characteristic number, and strategy isomorphisms.

``ell_plus(f, Edge(k, b, c))`` counts colours d at layer k + 2 with the
2-path (b, c, d) admissible; ``ell_minus`` counts colours a at layer k - 1
with (a, b, c) admissible.  A strategy is balanced when every edge has
``ell_plus + ell_minus == 4``.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional

from .core import COLOURS, CycleStrategy, Edge, LocalRule, guess
from .errors import BudgetExceeded, PreconditionError, SizeMismatch

PERMS = tuple(itertools.permutations(COLOURS))
IDENTITY = (0, 1, 2)


class EdgeColour(enum.Enum):
    YELLOW = "yellow"  # ell_minus 3, ell_plus 1, directed right
    RED = "red"        # ell_minus 1, ell_plus 3, directed left
    BLUE = "blue"      # 2 and 2, undirected

    @property
    def short(self) -> str:
        return self.value[0].upper()

    @property
    def ells(self) -> tuple[int, int]:
        """(ell_minus, ell_plus)"""
        return _ELLS[self]


_ELLS = {EdgeColour.YELLOW: (3, 1), EdgeColour.RED: (1, 3), EdgeColour.BLUE: (2, 2)}
_BY_ELLS = {v: k for k, v in _ELLS.items()}


def ell_plus(f: CycleStrategy, e: Edge) -> int:
    rule = f.rule(e.layer + 1).table
    return sum(1 for d in COLOURS if rule[e.left][d] != e.right)


def ell_minus(f: CycleStrategy, e: Edge) -> int:
    rule = f.rule(e.layer).table
    return sum(1 for a in COLOURS if rule[a][e.right] != e.left)


def ell(f: CycleStrategy, e: Edge, direction: str) -> int:
    if direction == "plus":
        return ell_plus(f, e)
    if direction == "minus":
        return ell_minus(f, e)
    raise ValueError(f"direction must be 'plus' or 'minus', got {direction!r}")


def ell_table(f: CycleStrategy, k: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """``[left][right] -> (ell_minus, ell_plus)`` for the edges at boundary k."""
    return tuple(
        tuple((ell_minus(f, Edge(k, b, c)), ell_plus(f, Edge(k, b, c))) for c in COLOURS)
        for b in COLOURS)


@dataclass(frozen=True)
class NotBalanced:
    witness: Edge
    ell_minus: int
    ell_plus: int

    balanced = False


@dataclass(frozen=True)
class EdgeColouring:
    n: int
    grid: tuple  # grid[k][left][right] -> EdgeColour

    balanced = True

    def colour_of(self, e: Edge) -> EdgeColour:
        return self.grid[e.layer % self.n][e.left][e.right]

    def edges(self, k: int, colour: EdgeColour) -> list[Edge]:
        k %= self.n
        return [Edge(k, b, c) for b in COLOURS for c in COLOURS if self.grid[k][b][c] is colour]

    def count(self, k: int, colour: EdgeColour) -> int:
        return len(self.edges(k, colour))

    def successor(self, k: int, b: int, colour: EdgeColour) -> list[int]:
        """Right endpoints of the ``colour`` edges leaving b at boundary k."""
        return [c for c in COLOURS if self.grid[k % self.n][b][c] is colour]

    def to_dict(self) -> dict:
        return {"n": self.n,
                "boundaries": [[[x.value for x in row] for row in g] for g in self.grid]}


def colour_edges(f: CycleStrategy):
    """The induced colouring, or :class:`NotBalanced` naming an edge with ell sum >= 5.

    The sums at one boundary total 36, so a boundary with an edge off 4 has one above 4.
    """
    grid = []
    for k in range(f.n):
        ells = ell_table(f, k)
        if any(_BY_ELLS.get(ells[b][c]) is None for b in COLOURS for c in COLOURS):
            b, c = max(((b, c) for b in COLOURS for c in COLOURS), key=lambda e: sum(ells[e[0]][e[1]]))
            return NotBalanced(Edge(k, b, c), *ells[b][c])
        grid.append(tuple(tuple(_BY_ELLS[ells[b][c]] for c in COLOURS) for b in COLOURS))
    return EdgeColouring(f.n, tuple(grid))


def is_balanced(f: CycleStrategy) -> bool:
    return colour_edges(f).balanced


@dataclass(frozen=True)
class ChiResult:
    per_boundary: tuple[int, ...]
    constant: Optional[int]


def characteristic(f: CycleStrategy):
    c = colour_edges(f)
    if not c.balanced:
        return c
    per = tuple(c.count(k, EdgeColour.YELLOW) for k in range(f.n))
    return ChiResult(per, per[0] if len(set(per)) == 1 else None)


def stars_ok(c: EdgeColouring) -> list[str]:
    """Yellow/red balance per boundary and the three-edge star condition."""
    out = []
    allowed = ({EdgeColour.YELLOW, EdgeColour.RED, EdgeColour.BLUE},)
    for k in range(c.n):
        if c.count(k, EdgeColour.YELLOW) != c.count(k, EdgeColour.RED):
            out.append(f"boundary {k}: yellow and red counts differ")
        g = c.grid[k]
        for v in COLOURS:
            for name, star in (("left", [g[v][x] for x in COLOURS]),
                               ("right", [g[x][v] for x in COLOURS])):
                kinds = set(star)
                if not (kinds == allowed[0] or kinds == {EdgeColour.BLUE}):
                    out.append(f"boundary {k}: {name} star at {v} is "
                               + "".join(x.short for x in star))
    return out


@dataclass(frozen=True)
class Violation:
    part: str
    detail: str


def lemma2_diagnostics(f: CycleStrategy, c: EdgeColouring) -> list[Violation]:
    """Check the directed-continuation predicates on a balanced strategy.

    (c) an admissible continuation of a yellow edge to the right is yellow,
        and of a red edge to the left is red;
    (d) the three edges meeting a yellow edge from the left (a red edge from
        the right) have three different colours;
    (e) two consecutive yellow (or red) edges form an admissible 2-path, and
        so does a blue 2-path whose middle vertex meets a directed edge.
    Returns every violation; an empty list means all predicates hold.
    """
    if not isinstance(c, EdgeColouring) or c != colour_edges(f):
        raise PreconditionError("colouring does not belong to this strategy")
    n = f.n
    Y, R, B = EdgeColour.YELLOW, EdgeColour.RED, EdgeColour.BLUE
    out: list[Violation] = []

    def admissible(k, a, b, d):
        # 2-path a (layer k-1), b (layer k), d (layer k+1)
        return b != guess(f, k, a, d)

    for k in range(n):
        g, nxt, prev = c.grid[k], c.grid[(k + 1) % n], c.grid[(k - 1) % n]
        for b in COLOURS:
            for x in COLOURS:
                col = g[b][x]
                if col is Y:
                    for d in COLOURS:
                        if admissible(k + 1, b, x, d) and nxt[x][d] is not Y:
                            out.append(Violation("c", f"yellow {k}:{b}{x} continues to "
                                                      f"{nxt[x][d].value} {x}{d}"))
                    if {prev[a][b] for a in COLOURS} != {Y, R, B}:
                        out.append(Violation("d", f"yellow {k}:{b}{x} is not met by three colours"))
                elif col is R:
                    for a in COLOURS:
                        if admissible(k, a, b, x) and prev[a][b] is not R:
                            out.append(Violation("c", f"red {k}:{b}{x} continues left to "
                                                      f"{prev[a][b].value} {a}{b}"))
                    if {nxt[x][d] for d in COLOURS} != {Y, R, B}:
                        out.append(Violation("d", f"red {k}:{b}{x} is not met by three colours"))
        # (e) at the vertices of layer k + 1, between boundaries k and k + 1
        for a in COLOURS:
            for b in COLOURS:
                for d in COLOURS:
                    first, second = g[a][b], nxt[b][d]
                    if first is not second:
                        continue
                    if first is B:
                        touches = any(g[x][b] is not B for x in COLOURS) or \
                            any(nxt[b][x] is not B for x in COLOURS)
                        if not touches:
                            continue
                    if not admissible(k + 1, a, b, d):
                        out.append(Violation("e", f"{first.value} path {a}{b}{d} at layer "
                                                  f"{(k + 1) % n} is not admissible"))
    return out


@dataclass(frozen=True)
class StrategyIso:
    """Relabelling of a strategy.

    New player ``j`` sits where old player ``k`` sat, with
    ``j = rotation + k`` (or ``rotation - k`` when reflected), and new colour
    ``perms[j][x]`` stands for old colour ``x``.
    """

    vertex_perms: tuple[tuple[int, int, int], ...]
    rotation: int = 0
    reflected: bool = False

    def source(self, j: int, n: int) -> int:
        return (self.rotation - j) % n if self.reflected else (j - self.rotation) % n

    @property
    def colour_only(self) -> bool:
        return self.rotation == 0 and not self.reflected

    @classmethod
    def identity(cls, n: int) -> "StrategyIso":
        return cls((IDENTITY,) * n)

    @classmethod
    def global_perm(cls, n: int, perm, rotation: int = 0, reflected: bool = False):
        return cls((tuple(perm),) * n, rotation, reflected)


def _inverse(p):
    inv = [0, 0, 0]
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _image_rule(f: CycleStrategy, iso: StrategyIso, j: int) -> LocalRule:
    n = f.n
    k = iso.source(j, n)
    pl, pj, pr = iso.vertex_perms[(j - 1) % n], iso.vertex_perms[j], iso.vertex_perms[(j + 1) % n]
    il, ir = _inverse(pl), _inverse(pr)
    old = f.rules[k].table
    if iso.reflected:
        # new left neighbour is old right neighbour
        return LocalRule(tuple(tuple(pj[old[ir[y]][il[x]]] for y in COLOURS) for x in COLOURS))
    return LocalRule(tuple(tuple(pj[old[il[x]][ir[y]]] for y in COLOURS) for x in COLOURS))


def apply_iso(f: CycleStrategy, iso: StrategyIso) -> CycleStrategy:
    if len(iso.vertex_perms) != f.n:
        raise SizeMismatch("one colour permutation per player is required")
    return CycleStrategy(f.n, tuple(_image_rule(f, iso, j) for j in range(f.n)))


def map_assignment(g, iso: StrategyIso):
    """Image of an assignment under ``iso``; defeats map to defeats."""
    s = tuple(g)
    n = len(s)
    return tuple(iso.vertex_perms[j][s[iso.source(j, n)]] for j in range(n))


def find_iso(f: CycleStrategy, g: CycleStrategy, budget: int = 10 ** 6,
             colour_only: bool = False) -> Optional[StrategyIso]:
    """Smallest iso with ``apply_iso(f, iso) == g``, or None.

    Search order: rotation 0..n-1, unreflected before reflected, then the
    colour permutations of players 0, 1, ... in lexicographic order.  Each
    extension is pruned as soon as a table it completes disagrees with ``g``.
    ``colour_only`` restricts to rotation 0 without reflection.
    """
    if f.n != g.n:
        raise SizeMismatch("strategies have different cycle lengths")
    n = f.n
    work = 0
    frames = [(0, False)] if colour_only else \
        [(r, refl) for r in range(n) for refl in (False, True)]

    for rotation, reflected in frames:

        def table_ok(perms, j, rotation=rotation, reflected=reflected):
            iso = StrategyIso(tuple(perms), rotation, reflected)
            return _image_rule(f, iso, j) == g.rules[j]

        for p0 in PERMS:
            for p1 in PERMS:
                perms = [p0, p1] + [IDENTITY] * (n - 2)
                found, w = _extend(perms, 2, n, table_ok)
                work += w
                if work > budget:
                    raise BudgetExceeded(f"find_iso exceeded {budget} table checks")
                if found is not None:
                    return StrategyIso(tuple(found), rotation, reflected)
    return None


def _extend(perms, j, n, table_ok):
    """Fill perms[j:], checking table j-1 as soon as perms[j] is known."""
    if j == n:
        if table_ok(perms, n - 1) and table_ok(perms, 0):
            return list(perms), 2
        return None, 2
    work = 0
    for p in PERMS:
        perms[j] = p
        work += 1
        if table_ok(perms, j - 1):
            res, w = _extend(perms, j + 1, n, table_ok)
            work += w
            if res is not None:
                return res, work
    perms[j] = IDENTITY
    return None, work
