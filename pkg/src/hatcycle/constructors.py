"""Every explicit strategy of the classification, plus the existence dispatcher."""
from __future__ import annotations

from typing import Optional

from .core import CycleStrategy, LocalRule
from .errors import DomainError

# Tables for the chi = 3 and chi = 2 families, row = left colour, column = right.
CHI3_TABLE = ((1, 0, 0), (1, 2, 1), (2, 2, 0))
CHI2_TABLE = ((2, 0, 0), (1, 2, 1), (1, 0, 2))

# 3-cycle 0 -> 1 -> 2 -> 0 leaving CHI3_TABLE invariant
SIGMA = (1, 2, 0)
# transposition of colours 0 and 1 leaving CHI2_TABLE invariant
TAU = (1, 0, 2)


def algebraic_c3() -> CycleStrategy:
    """A = -B - C, B = -C - A - 1, C = -A - B + 1 over Z_3, players A, B, C = 0, 1, 2."""
    return CycleStrategy(3, (
        LocalRule.from_function(lambda c, b: -b - c),
        LocalRule.from_function(lambda a, c: -a - c - 1),
        LocalRule.from_function(lambda b, a: -a - b + 1),
    ))


def algebraic_c4() -> CycleStrategy:
    """A = D + B, B = -A - C, C = B - D, D = C - A over Z_3."""
    return CycleStrategy(4, (
        LocalRule.from_function(lambda d, b: d + b),
        LocalRule.from_function(lambda a, c: -a - c),
        LocalRule.from_function(lambda b, d: b - d),
        LocalRule.from_function(lambda c, a: c - a),
    ))


def twisted_uniform(n: int, table, twist) -> CycleStrategy:
    """Every player uses ``table``, with colour labels that shift by ``twist``
    across the boundary between players n-1 and 0.

    Player 0 reads its left neighbour's colour ``x`` as ``twist[x]`` and
    player n-1 reads its right neighbour's colour ``y`` as ``twist^-1[y]``.
    This is consistent exactly when ``table`` is ``twist``-invariant.
    """
    if not is_invariant(table, twist):
        raise DomainError(f"table is not invariant under {twist}")
    inv = [0, 0, 0]
    for i, t in enumerate(twist):
        inv[t] = i
    first = LocalRule(tuple(tuple(table[twist[x]][y] for y in range(3)) for x in range(3)))
    last = LocalRule(tuple(tuple(table[x][inv[y]] for y in range(3)) for x in range(3)))
    rule = LocalRule(table)
    return CycleStrategy(n, (first,) + (rule,) * (n - 2) + (last,))


def chi3_strategy(n: int, twist=SIGMA) -> CycleStrategy:
    """The characteristic-3 strategy; ``twist`` must be a 3-cycle."""
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    if any(twist[i] == i for i in range(3)):
        raise DomainError("the characteristic-3 twist must be fixed-point free")
    return twisted_uniform(n, CHI3_TABLE, twist)


def chi2_strategy(n: int) -> CycleStrategy:
    if n < 4 or n % 2:
        raise DomainError(f"the characteristic-2 strategy needs even n >= 4, got {n}")
    return twisted_uniform(n, CHI2_TABLE, TAU)


def is_invariant(table, perm) -> bool:
    """f(p(i), p(j)) == p(f(i, j)) for all nine pairs."""
    return all(table[perm[i]][perm[j]] == perm[table[i][j]] for i in range(3) for j in range(3))


def construct_winning(n: int) -> Optional[CycleStrategy]:
    """A winning strategy when one exists (3 | n or n = 4), else None.

    Multiples of three get the characteristic-3 strategy; n = 4 gets the
    characteristic-2 one even though :func:`algebraic_c4` also wins there.
    """
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    if n % 3 == 0:
        return chi3_strategy(n)
    if n == 4:
        return chi2_strategy(4)
    return None
