"""Constructive refuters and a certificate-producing nonexistence search.

The refuters turn the structural arguments into concrete defeating
assignments; every one of them is checked with :func:`correct_count` before
it is returned.  :func:`prove_nonexistence` enumerates the possible colour
structures of a winning strategy, solves for the local tables that realise
each structure, and verifies every resulting strategy exactly.
"""
from __future__ import annotations

import functools
import itertools
import json
import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .core import (COLOURS, Assignment, CycleStrategy, Edge, LocalRule, PathSegment, correct_count,
                   guess, is_admissible)
from .errors import BudgetExceeded, PreconditionError
from .structure import (PERMS, EdgeColour, EdgeColouring, StrategyIso, apply_iso,
                        colour_edges, ell_minus, ell_plus, map_assignment)
from .verifier import verify

Y, R, B = EdgeColour.YELLOW, EdgeColour.RED, EdgeColour.BLUE

DEFAULT_MAX_N = 10
DEFAULT_TABLE_BUDGET = 10 ** 9


def _checked(f: CycleStrategy, colours) -> Assignment:
    g = Assignment(tuple(colours))
    if correct_count(f, g) != 0:
        raise AssertionError(f"constructed assignment {g.colours} is not defeating")
    return g


def _admissible_at(f, k, left, mid, right) -> bool:
    return mid != guess(f, k, left, right)


# -- closing a path with a large continuation count -----------------------------

def close_path(f: CycleStrategy, start_layer: int, path) -> Assignment:
    """Close an admissible path into a defeating assignment.

    ``path`` occupies layers ``start_layer, start_layer + 1, ...`` and has
    between 2 and n - 1 vertices.  Its first edge must have all three left
    continuations and its last edge at least two right continuations, or
    the mirror image of that.
    """
    n = f.n
    s = list(path)
    if not 2 <= len(s) <= n - 1:
        raise PreconditionError("path length must lie between 2 and n - 1")
    if not is_admissible(f, PathSegment(start_layer, tuple(s))):
        raise PreconditionError("path is not admissible")
    first = Edge(start_layer, s[0], s[1])
    last = Edge(start_layer + len(s) - 2, s[-2], s[-1])
    if ell_minus(f, first) == 3 and ell_plus(f, last) >= 2:
        return _close_right(f, start_layer, s)
    if ell_minus(f, first) >= 2 and ell_plus(f, last) == 3:
        # mirror the cycle, close there, and mirror back
        mirror = StrategyIso(((0, 1, 2),) * n, 0, True)
        g = apply_iso(f, mirror)
        end = start_layer + len(s) - 1
        w = _close_right(g, (-end) % n, s[::-1])
        return _checked(f, map_assignment(w.colours, mirror))
    raise PreconditionError("path does not have ell_minus(first) + ell_plus(last) >= 5 "
                            "with a saturated end")


def _close_right(f: CycleStrategy, start: int, s: list) -> Assignment:
    n = f.n
    while len(s) < n - 1:
        k = start + len(s) - 1          # layer of s[-1]
        b, c = s[-2], s[-1]
        options = [d for d in COLOURS if _admissible_at(f, k, b, c, d)]
        # among two admissible continuations one keeps two of its own
        nxt = [d for d in options if ell_plus(f, Edge(k, c, d)) >= 2]
        if not nxt:
            raise AssertionError("no continuation with two further options")
        s.append(nxt[0])
    k = start + n - 2                    # layer of s[-1]; y sits at start - 1
    for y in COLOURS:
        if _admissible_at(f, k, s[-2], s[-1], y) and _admissible_at(f, k + 1, s[-1], y, s[0]):
            colours = [0] * n
            colours[(start - 1) % n] = y
            for i, x in enumerate(s):
                colours[(start + i) % n] = x
            return _checked(f, colours)
    raise AssertionError("path did not close")


def refute_unbalanced(f: CycleStrategy):
    """Defeating assignment built from an edge with ell_plus + ell_minus >= 5.

    Returns None for balanced strategies.
    """
    for k in range(f.n):
        for b in COLOURS:
            for c in COLOURS:
                e = Edge(k, b, c)
                if ell_plus(f, e) + ell_minus(f, e) >= 5:
                    return close_path(f, k, (b, c))
    return None


def _directed_violation(f: CycleStrategy, c: EdgeColouring):
    """Admissible 2-edge path whose ends have ell_minus + ell_plus >= 5."""
    n = f.n
    for k in range(n):
        for a in COLOURS:
            for b in COLOURS:
                for d in COLOURS:
                    if not _admissible_at(f, k + 1, a, b, d):
                        continue
                    first, second = Edge(k, a, b), Edge(k + 1, b, d)
                    if ell_minus(f, first) + ell_plus(f, second) >= 5:
                        return k, (a, b, d)
    return None


# -- characteristic 0 -------------------------------------------------------------

def defeat_all_blue(f: CycleStrategy) -> Assignment:
    """Defeat a strategy whose edges are all blue (n >= 5).

    Seed edge (a, b) on layers 0, 1.  To the right, the two-way branching
    gives vertices b_p, b_pq, b_pqr on layers 2, 3, 4; to the left a fixed
    path through layers n-1, ..., 5 followed by the branching a_j, a_ij on
    layers 4, 3.  Either a right edge (b_pq, b_pqr) coincides with a left
    edge (a_ij, a_j), or a_ij equals some b_pq that an alternative b_p
    reaches admissibly; both close the cycle.
    """
    n = f.n
    if n < 5:
        raise PreconditionError("the all-blue argument needs n >= 5")
    c = colour_edges(f)
    if not c.balanced or any(x is not B for g in c.grid for row in g for x in row):
        raise PreconditionError("strategy is not all blue")
    a, b = 0, 0
    # right family: list of (b_p, b_pq, b_pqr)
    right = [(p, q, r)
             for p in COLOURS if _admissible_at(f, 1, a, b, p)
             for q in COLOURS if _admissible_at(f, 2, b, p, q)
             for r in COLOURS if _admissible_at(f, 3, p, q, r)]
    # fixed left path on layers n-1 down to 5 (smallest admissible choice)
    left = {0: a, 1: b}
    for layer in range(n - 1, 4, -1):
        nb, nnb = left[(layer + 1) % n], left[(layer + 2) % n]
        left[layer] = next(u for u in COLOURS if _admissible_at(f, layer + 1, u, nb, nnb))
    v5, v6 = left[5 % n], left[6 % n]
    lefts = [(i, j)
             for j in COLOURS if _admissible_at(f, 5, j, v5, v6)
             for i in COLOURS if _admissible_at(f, 4, i, j, v5)]

    def assemble(p, x, y):
        g = [left[k] if k in left else None for k in range(n)]
        g[0], g[1], g[2], g[3], g[4] = a, b, p, x, y
        return g

    for p, q, r in right:
        for i, j in lefts:
            if (q, r) == (i, j):
                return _checked(f, assemble(p, q, r))
    for i, j in lefts:
        for p in COLOURS:
            if (_admissible_at(f, 1, a, b, p) and _admissible_at(f, 2, b, p, i)
                    and _admissible_at(f, 3, p, i, j)):
                return _checked(f, assemble(p, i, j))
    raise AssertionError("all-blue closure failed")  # pragma: no cover


# -- characteristic 3 and 2 ---------------------------------------------------------

def _constant_chi(f: CycleStrategy, chi: int) -> EdgeColouring:
    c = colour_edges(f)
    if not c.balanced:
        raise PreconditionError("strategy is not balanced")
    counts = {c.count(k, Y) for k in range(f.n)}
    if counts != {chi}:
        raise PreconditionError(f"characteristic is not constantly {chi}: {sorted(counts)}")
    return c


def _follow(c: EdgeColouring, start: int, colour: EdgeColour, steps: int):
    """Walk right along ``colour`` edges; None if some vertex has no unique one."""
    path = [start]
    for k in range(steps):
        nxt = c.successor(k, path[-1], colour)
        if len(nxt) != 1:
            return None
        path.append(nxt[0])
    return path


def _monochrome_closure(f, c, starts, colours):
    n = f.n
    for colour in colours:
        for v in starts:
            path = _follow(c, v, colour, n)
            if path is not None and path[-1] == v and correct_count(f, path[:-1]) == 0:
                return Assignment(tuple(path[:-1]))
    return None


def _fallback(f, c):
    hit = _directed_violation(f, c)
    if hit is not None:
        k, path = hit
        return close_path(f, k, path)
    return None


def refute_chi3(f: CycleStrategy) -> Assignment:
    """Defeat a characteristic-3 strategy on a cycle whose length 3 does not divide.

    The yellow, red and blue walks of length n from a vertex of layer 0 end
    at three different vertices, one of which is the start; that walk closes.
    """
    c = _constant_chi(f, 3)
    if f.n % 3 == 0:
        raise PreconditionError("3 divides n; the characteristic-3 strategy can win")
    w = _monochrome_closure(f, c, COLOURS, (Y, R, B))
    if w is None:
        w = _fallback(f, c)
    if w is None:
        raise AssertionError("no monochromatic closure and no directed-edge violation")
    return w


def _rows_chi2(c: EdgeColouring, first: int):
    """u-labels per layer: u1 followed along yellow from ``first``, u3 the
    vertex without yellow edges."""
    n = c.n
    rows = []
    u1 = first
    for k in range(n):
        tails = {e.left for e in c.edges(k, Y)}
        u3 = next(v for v in COLOURS if v not in tails)
        u2 = next(v for v in COLOURS if v not in (u1, u3))
        rows.append((u1, u2, u3))
        u1 = c.successor(k, u1, Y)[0]
    return rows


def chi2_blue_pattern(n: int) -> list[int]:
    """Label pattern 3,3,1,3 then (3,1),(3,2),... of length n, 1-based labels."""
    pat = [3, 3, 1, 3]
    for i in range(1, (n - 4) // 2 + 1):
        pat += [3, 1 if i % 2 else 2]
    return pat


def refute_chi2(f: CycleStrategy) -> Assignment:
    """Defeat a characteristic-2 strategy when n is odd or n >= 6.

    Odd n: a red walk closes after n steps.  Even n >= 6: the blue walk
    with label pattern :func:`chi2_blue_pattern`, tried at every shift and
    both yellow-row labellings.
    """
    n = f.n
    c = _constant_chi(f, 2)
    if n == 4:
        raise PreconditionError("n = 4 is the winning case for characteristic 2")
    if n % 2:
        w = _monochrome_closure(f, c, COLOURS, (R, Y))
    else:
        w = None
        pat = chi2_blue_pattern(n)
        tails0 = sorted(e.left for e in c.edges(0, Y))
        for first in tails0:
            rows = _rows_chi2(c, first)
            for shift in range(n):
                g = [rows[k][pat[(k + shift) % n] - 1] for k in range(n)]
                if correct_count(f, g) == 0:
                    w = Assignment(tuple(g))
                    break
            if w is not None:
                break
    if w is None:
        w = _fallback(f, c)
    if w is None:
        raise AssertionError("no closure found for the characteristic-2 strategy")
    return w


# -- signatures and colour structures -----------------------------------------------

@functools.lru_cache(maxsize=None)
def table_signatures():
    """For every table code: (plus_sig, minus_sig).

    As rule f_k, a table fixes ell_plus of the edges at boundary k - 1
    (``plus_sig[a][b] = #{d : T[a][d] != b}``) and ell_minus of the edges at
    boundary k (``minus_sig[b][c] = #{x : T[x][c] != b}``).
    """
    out = []
    for code in range(3 ** 9):
        T = LocalRule.from_code(code).table
        plus = tuple(tuple(sum(1 for d in COLOURS if T[a][d] != b) for b in COLOURS)
                     for a in COLOURS)
        minus = tuple(tuple(sum(1 for x in COLOURS if T[x][cc] != b) for cc in COLOURS)
                      for b in COLOURS)
        out.append((plus, minus))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def signature_index():
    """(plus_sig, minus_sig) -> sorted table codes."""
    index = defaultdict(list)
    for code, key in enumerate(table_signatures()):
        index[key].append(code)
    return dict(index)


def balanced_join_stats() -> dict:
    """Sizes of the balanced hash-join: rule A may precede rule B on a
    balanced strategy iff minus_sig(A) + plus_sig(B) == 4 entrywise."""
    sigs = table_signatures()
    by_plus = Counter(p for p, _ in sigs)
    usable = 0
    pairs = 0
    for p, m in sigs:
        need = tuple(tuple(4 - x for x in row) for row in m)
        hits = by_plus.get(need, 0)
        pairs += hits
        ok_minus = all(1 <= x <= 3 for row in m for x in row)
        ok_plus = all(1 <= x <= 3 for row in p for x in row)
        usable += ok_minus and ok_plus
    return {"tables": len(sigs), "signature_keys": len(signature_index()),
            "balanced_capable_tables": usable, "compatible_ordered_pairs": pairs}


@dataclass(frozen=True)
class ColourStructure:
    chi: int
    wrap: Optional[tuple]          # yellow map across boundary n-1 (sigma or tau)
    grid: tuple                    # grid[k][left][right] -> EdgeColour
    self_refuted: bool = False
    free_relabelling: bool = False  # structure invariant under all colour permutations

    def describe(self) -> dict:
        return {"chi": self.chi, "wrap": list(self.wrap) if self.wrap else None,
                "self_refuted": self.self_refuted,
                "boundaries": ["".join(x.short for row in g for x in row) for g in self.grid]}


def boundary_colourings(yellow) -> list[tuple]:
    """All colourings of one boundary with the given yellow edge set and
    matching red count, red edges disjoint, and every three-edge star either
    all blue or one of each colour."""
    yellow = frozenset(yellow)
    chi = len(yellow)
    rest = [(b, c) for b in COLOURS for c in COLOURS if (b, c) not in yellow]
    out = []
    for red in itertools.combinations(rest, chi):
        if len({b for b, _ in red}) < chi or len({c for _, c in red}) < chi:
            continue
        grid = [[B] * 3 for _ in COLOURS]
        for b, c in yellow:
            grid[b][c] = Y
        for b, c in red:
            grid[b][c] = R
        grid = tuple(tuple(r) for r in grid)
        ok = True
        for v in COLOURS:
            for star in ([grid[v][x] for x in COLOURS], [grid[x][v] for x in COLOURS]):
                if set(star) not in ({Y, R, B}, {B}):
                    ok = False
        if ok:
            out.append(grid)
    return out


def _yellow_sets(chi: int):
    """Normalised yellow edges inside the cycle, and candidate wrap maps.

    Colour relabelling at layers 1..n-1 makes the yellow edges of boundaries
    0..n-2 run straight (i -> i) on rows 0..chi-1; what is left is the map
    ``wrap`` carried by the yellow edges of boundary n-1.
    """
    rows = tuple(range(chi))
    straight = [(i, i) for i in rows]
    wraps = [p for p in itertools.permutations(rows)]
    return straight, wraps


def enumerate_colour_structures(n: int, include_self_refuted: bool = False,
                                chis=(0, 1, 2, 3)) -> list[ColourStructure]:
    """Colour structures a winning strategy on C_n could have, up to relabelling.

    Characteristic 1 yields no per-boundary colouring at all.  With
    ``include_self_refuted`` the structures whose wrap map has a fixed
    point (a yellow cycle of period n) are kept and flagged.
    """
    if n < 3:
        raise PreconditionError("need n >= 3")
    out = []
    for chi in chis:
        if chi == 0:
            grid = ((B,) * 3,) * 3
            out.append(ColourStructure(0, None, (tuple(grid),) * n, free_relabelling=True))
            continue
        straight, wraps = _yellow_sets(chi)
        inner = boundary_colourings(straight)
        if not inner:
            continue
        for wrap in wraps:
            self_refuted = any(wrap[i] == i for i in range(chi))
            if self_refuted and not include_self_refuted:
                continue
            last = boundary_colourings([(i, wrap[i]) for i in range(chi)])
            for combo in itertools.product(inner, repeat=n - 1):
                for g_last in last:
                    out.append(ColourStructure(chi, tuple(wrap), tuple(combo) + (g_last,),
                                               self_refuted))
    return out


def _layer_key(s: ColourStructure, k: int):
    n = len(s.grid)
    before, after = s.grid[(k - 1) % n], s.grid[k]
    plus = tuple(tuple(before[a][b].ells[1] for b in COLOURS) for a in COLOURS)
    minus = tuple(tuple(after[b][c].ells[0] for c in COLOURS) for b in COLOURS)
    return plus, minus


def _relabel_table(T, pl, pv, pr):
    out = [[0] * 3 for _ in COLOURS]
    for x in COLOURS:
        for y in COLOURS:
            out[pl[x]][pr[y]] = pv[T[x][y]]
    return LocalRule(tuple(tuple(r) for r in out)).code


def _canonical(code: int, full: bool) -> bool:
    """Is ``code`` minimal in its orbit (full: row/value/column perms; else columns)?"""
    T = LocalRule.from_code(code).table
    ident = (0, 1, 2)
    if full:
        orbit = (_relabel_table(T, a, b, c) for a in PERMS for b in PERMS for c in PERMS)
    else:
        orbit = (_relabel_table(T, ident, ident, c) for c in PERMS)
    return code == min(orbit)


def layer_options(s: ColourStructure) -> list[list[int]]:
    """Table codes realising the structure at each layer.

    For relabelling-invariant structures, rule 0 is restricted to orbit
    minima under row/value/column permutations and rules 1..n-3 to minima
    under column permutations; relabelling layers n-1, 0, 1 and then 2, 3,
    ..., n-2 in turn brings any strategy into that form without touching
    the rules already normalised.
    """
    index = signature_index()
    n = len(s.grid)
    opts = [list(index.get(_layer_key(s, k), ())) for k in range(n)]
    if s.free_relabelling:
        opts[0] = [t for t in opts[0] if _canonical(t, True)]
        for k in range(1, n - 2):
            opts[k] = [t for t in opts[k] if _canonical(t, False)]
    return opts


# -- certificate ----------------------------------------------------------------------

LEMMAS = (
    "winning implies balanced: ell_plus + ell_minus = 4 on every edge",
    "balanced implies every three-edge star is all blue or one of each colour",
    "winning, n >= 4: each yellow edge continues admissibly into exactly one yellow "
    "edge, so yellow heads at boundary k are the yellow tails at boundary k + 1",
    "winning, n >= 4: the number of yellow edges is the same at every boundary",
)


@dataclass
class Certificate:
    n: int
    conclusion: str                     # NoWinningStrategy | WinningFound | Inconclusive
    strategy: Optional[CycleStrategy] = None
    method_log: list = field(default_factory=list)
    lemma_dependencies: list = field(default_factory=lambda: list(LEMMAS))
    refutations: list = field(default_factory=list)

    def to_dict(self) -> dict:
        from .core import strategy_to_dict
        return {
            "n": self.n,
            "conclusion": self.conclusion,
            "strategy": strategy_to_dict(self.strategy) if self.strategy else None,
            "method_log": self.method_log,
            "lemma_dependencies": self.lemma_dependencies,
            "refutations": self.refutations,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def check_certificate(cert: Certificate) -> bool:
    """Re-check every refutation witness and a found strategy."""
    from .verifier import verify as _verify
    for ref in cert.refutations:
        f = CycleStrategy(cert.n, tuple(LocalRule.from_code(c) for c in ref["rules"]))
        if correct_count(f, ref["witness"]) != 0:
            return False
    if cert.conclusion == "WinningFound":
        return cert.strategy is not None and _verify(cert.strategy).winning
    return True


def candidate_strategies(n: int, structures=None):
    """Yield (structure index, strategy) for every strategy realising a structure."""
    if structures is None:
        structures = enumerate_colour_structures(n, include_self_refuted=True)
    for idx, s in enumerate(structures):
        for combo in itertools.product(*layer_options(s)):
            yield idx, CycleStrategy(n, tuple(LocalRule.from_code(c) for c in combo))


def prove_nonexistence(n: int, table_budget: int = DEFAULT_TABLE_BUDGET,
                       time_limit: Optional[float] = None, max_n: int = DEFAULT_MAX_N,
                       enforce_range: bool = True, chis=(0, 1, 2, 3)) -> Certificate:
    """Search every colour structure for a winning strategy on C_n.

    Stages: the balanced signature join (which rules can neighbour each
    other), the colour structures, the rules realising each structure,
    and an exact verification of every resulting strategy.  Stops at the
    first winning strategy.  Raises :class:`BudgetExceeded` carrying the
    partial certificate when a budget runs out.
    """
    if enforce_range:
        if n < 5 or n % 3 == 0:
            raise PreconditionError("nonexistence is only claimed for n >= 5 with 3 not dividing n")
        if n > max_n:
            raise PreconditionError(f"n = {n} is beyond the configured range (max {max_n})")
    t0 = time.monotonic()
    cert = Certificate(n, "Inconclusive")
    cert.method_log.append({"stage": "balanced signature join", **balanced_join_stats()})

    structures = enumerate_colour_structures(n, include_self_refuted=True, chis=chis)
    by_chi = Counter(s.chi for s in structures)
    cert.method_log.append({
        "stage": "colour structures",
        "structures": len(structures),
        "by_chi": {str(k): by_chi.get(k, 0) for k in (0, 1, 2, 3)},
        "self_refuted_structures": sum(s.self_refuted for s in structures),
        "chi1_boundary_colourings": len(boundary_colourings([(0, 0)])),
    })

    checks = 0
    realisable = 0
    candidates = 0
    refuted = 0
    empty = 0
    for idx, s in enumerate(structures):
        opts = layer_options(s)
        checks += sum(len(o) for o in opts)
        if any(not o for o in opts):
            empty += 1
            continue
        realisable += 1
        for combo in itertools.product(*opts):
            checks += n
            if checks > table_budget or (time_limit and time.monotonic() - t0 > time_limit):
                cert.method_log.append(_search_stage(checks, realisable, empty, candidates,
                                                     refuted, idx))
                raise BudgetExceeded("prover budget exhausted", partial=cert)
            f = CycleStrategy(n, tuple(LocalRule.from_code(c) for c in combo))
            candidates += 1
            v = verify(f)
            if v.winning:
                cert.conclusion = "WinningFound"
                cert.strategy = f
                cert.method_log.append(_search_stage(checks, realisable, empty, candidates,
                                                     refuted, idx))
                return cert
            refuted += 1
            cert.refutations.append({"structure": idx, "chi": s.chi, "rules": list(combo),
                                     "witness": list(v.witness.colours)})
    cert.method_log.append(_search_stage(checks, realisable, empty, candidates, refuted,
                                         len(structures)))
    cert.method_log.append({"stage": "elapsed", "seconds": round(time.monotonic() - t0, 3)})
    cert.conclusion = "NoWinningStrategy"
    return cert


def _search_stage(checks, realisable, empty, candidates, refuted, reached):
    return {"stage": "table solving and verification", "table_checks": checks,
            "structures_realisable": realisable, "structures_without_tables": empty,
            "verifier_calls": candidates, "candidates_refuted": refuted,
            "structures_processed": reached}
