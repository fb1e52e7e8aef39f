import random

from hypothesis import strategies as st

from hatcycle.core import CycleStrategy, LocalRule
from hatcycle.structure import PERMS, StrategyIso

LATIN = [LocalRule.from_code(c) for c in range(3 ** 9)
         if all(len(set(row)) == 3 for row in LocalRule.from_code(c).table)
         and all(len({LocalRule.from_code(c).table[x][y] for x in range(3)}) == 3
                 for y in range(3))]


def random_strategy(rng: random.Random, n: int) -> CycleStrategy:
    return CycleStrategy(n, tuple(LocalRule.from_code(rng.randrange(3 ** 9)) for _ in range(n)))


def random_all_blue(rng: random.Random, n: int) -> CycleStrategy:
    return CycleStrategy(n, tuple(rng.choice(LATIN) for _ in range(n)))


def random_iso(rng: random.Random, n: int) -> StrategyIso:
    return StrategyIso(tuple(rng.choice(PERMS) for _ in range(n)), rng.randrange(n),
                       rng.random() < 0.5)


def constant_zero(n: int) -> CycleStrategy:
    return CycleStrategy.uniform(n, LocalRule.constant(0))


@st.composite
def cycle_strategies(draw, min_n=3, max_n=7):
    n = draw(st.integers(min_n, max_n))
    codes = draw(st.lists(st.integers(0, 3 ** 9 - 1), min_size=n, max_size=n))
    return CycleStrategy(n, tuple(LocalRule.from_code(c) for c in codes))
