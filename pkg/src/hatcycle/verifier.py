"""Exact winning/losing decisions for cycle strategies.

A defeating assignment is a closed walk through the boundary edges
(g_k, g_{k+1}) in which every player guesses wrong.  ``T_k`` moves from the
edge at boundary k to the edge at boundary k + 1 and checks player k + 1, so
the trace of ``T_0 T_1 ... T_{n-1}`` counts defeating assignments exactly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import COLOURS, Assignment, CycleStrategy, correct_count
from .errors import BudgetExceeded

DEFAULT_BRUTE_FORCE_CAP = 14

# numpy int64 is exact while every entry of the product stays below 3**n.
_INT64_SAFE_N = 39


def state(a: int, b: int) -> int:
    return 3 * a + b


def boundary_transfer(f: CycleStrategy, k: int) -> np.ndarray:
    """0/1 matrix: entry [(a,b),(b,c)] is 1 iff b != guess(f, k+1, a, c)."""
    T = np.zeros((9, 9), dtype=np.int64)
    rule = f.rule(k + 1).table
    for a in COLOURS:
        for b in COLOURS:
            for c in COLOURS:
                if rule[a][c] != b:
                    T[3 * a + b, 3 * b + c] = 1
    return T


def _suffix_products(f: CycleStrategy) -> list[np.ndarray]:
    """``S[k] = T_k T_{k+1} ... T_{n-1}``, with ``S[n]`` the identity."""
    n = f.n
    fast = n <= _INT64_SAFE_N
    dtype = np.int64 if fast else object
    S = [None] * (n + 1)
    S[n] = np.eye(9, dtype=np.int64).astype(dtype)
    for k in range(n - 1, -1, -1):
        T = boundary_transfer(f, k).astype(dtype)
        S[k] = T @ S[k + 1]
    return S


def cycle_product(f: CycleStrategy) -> np.ndarray:
    M = np.eye(9, dtype=np.int64)
    if f.n > _INT64_SAFE_N:
        M = M.astype(object)
    for k in range(f.n):
        T = boundary_transfer(f, k)
        M = M @ (T if M.dtype != object else T.astype(object))
    return M


def defeat_count(f: CycleStrategy) -> int:
    M = cycle_product(f)
    return int(sum(int(M[i, i]) for i in range(9)))


@dataclass(frozen=True)
class Verdict:
    winning: bool
    witness: Optional[Assignment] = None

    @property
    def tag(self) -> str:
        return "winning" if self.winning else "losing"

    def to_dict(self) -> dict:
        out = {"verdict": self.tag}
        if self.witness is not None:
            out["witness"] = {"colours": list(self.witness.colours)}
        return out


def _witness(f: CycleStrategy, S: list[np.ndarray]) -> Assignment:
    n = f.n
    full = S[0]
    start = next(s for s in range(9) if full[s, s] > 0)
    a, b = divmod(start, 3)
    colours = [a, b]
    # colours[k], colours[k+1] is the current edge at boundary k
    for k in range(n - 2):
        x, y = colours[k], colours[k + 1]
        rule = f.rule(k + 1).table
        for c in COLOURS:
            if rule[x][c] != y and S[k + 1][3 * y + c, start] > 0:
                colours.append(c)
                break
        else:  # pragma: no cover - excluded by the positive trace
            raise AssertionError("witness reconstruction lost its path")
    return Assignment(tuple(colours))


def verify(f: CycleStrategy) -> Verdict:
    """Winning iff no defeating assignment; otherwise the lexicographically
    smallest defeating assignment as witness."""
    S = _suffix_products(f)
    trace = sum(int(S[0][i, i]) for i in range(9))
    if trace == 0:
        return Verdict(True)
    return Verdict(False, _witness(f, S))


def brute_force_defeats(f: CycleStrategy, max_n: int = DEFAULT_BRUTE_FORCE_CAP):
    """Enumerate all 3**n assignments; return (count, witnesses) in lexicographic order."""
    n = f.n
    if n > max_n:
        raise BudgetExceeded(f"3**{n} assignments exceeds the cap 3**{max_n}")
    # rows of G are all assignments in lexicographic order
    G = np.array(list(itertools.product(COLOURS, repeat=n)), dtype=np.int8)
    wrong = np.ones(len(G), dtype=bool)
    for k in range(n):
        table = np.array(f.rules[k].flat, dtype=np.int8)
        guesses = table[3 * G[:, (k - 1) % n] + G[:, (k + 1) % n]]
        wrong &= guesses != G[:, k]
    hits = G[wrong]
    return int(wrong.sum()), [Assignment(tuple(int(x) for x in row)) for row in hits]


def brute_force_count_python(f: CycleStrategy) -> int:
    """Slow pure-Python enumeration; kept as a second reference for small n."""
    return sum(1 for g in itertools.product(COLOURS, repeat=f.n) if correct_count(f, g) == 0)


def win_probability_fixed(f: CycleStrategy) -> Fraction:
    return 1 - Fraction(defeat_count(f), 3 ** f.n)


def random_strategy_analytic(n: int) -> Fraction:
    return 1 - Fraction(2, 3) ** n


def random_strategy_win_probability(n: int, trials: int, seed: int):
    """Exact 1 - (2/3)**n and a seeded Monte Carlo estimate of it.

    Each trial draws a fresh strategy (all 9n table entries i.i.d. uniform)
    and an adversary assignment, both from ``numpy.random.Generator(PCG64(seed))``;
    the estimate is the fraction of trials with at least one correct guess.
    """
    if n < 3 or trials < 1:
        raise ValueError("need n >= 3 and trials >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    wins = 0
    chunk = 20000
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        tables = rng.integers(0, 3, size=(m, n, 9), dtype=np.int8)
        g = rng.integers(0, 3, size=(m, n), dtype=np.int8)
        left = np.roll(g, 1, axis=1)
        right = np.roll(g, -1, axis=1)
        idx = (3 * left + right).astype(np.intp)
        guesses = np.take_along_axis(tables, idx[:, :, None], axis=2)[:, :, 0]
        wins += int((guesses == g).any(axis=1).sum())
        done += m
    return random_strategy_analytic(n), wins / trials
