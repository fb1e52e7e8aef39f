"""Value types for the three-colour hat game on the cycle C_n.

Colours are the residues 0, 1, 2 (1-based colour ``i`` is ``i - 1`` here).
Player ``k`` sees players ``k - 1`` (left) and ``k + 1`` (right); indices are
taken mod n everywhere, negative ones included.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, SizeMismatch

COLOURS = (0, 1, 2)


def _colour(value) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value not in COLOURS:
        raise DomainError(f"colour must be 0, 1 or 2, got {value!r}")
    return value


@dataclass(frozen=True)
class LocalRule:
    """One player's guess table: ``table[left][right]`` is the guess."""

    table: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        rows = tuple(tuple(_colour(x) for x in row) for row in self.table)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise SizeMismatch("a local rule is a 3x3 table")
        object.__setattr__(self, "table", rows)

    def __call__(self, left: int, right: int) -> int:
        return self.table[left][right]

    @classmethod
    def from_function(cls, fn) -> "LocalRule":
        return cls(tuple(tuple(fn(a, c) % 3 for c in COLOURS) for a in COLOURS))

    @classmethod
    def constant(cls, value: int) -> "LocalRule":
        return cls(((value,) * 3,) * 3)

    @classmethod
    def from_code(cls, code: int) -> "LocalRule":
        """Inverse of :attr:`code`; entries read row-major, first entry most significant."""
        digits = []
        for _ in range(9):
            code, d = divmod(code, 3)
            digits.append(d)
        digits.reverse()
        return cls(tuple(tuple(digits[3 * a:3 * a + 3]) for a in COLOURS))

    @property
    def code(self) -> int:
        c = 0
        for row in self.table:
            for x in row:
                c = 3 * c + x
        return c

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(x for row in self.table for x in row)


@dataclass(frozen=True)
class CycleStrategy:
    n: int
    rules: tuple[LocalRule, ...]

    def __post_init__(self):
        if self.n < 3:
            raise DomainError(f"cycle length must be at least 3, got {self.n}")
        rules = tuple(r if isinstance(r, LocalRule) else LocalRule(r) for r in self.rules)
        if len(rules) != self.n:
            raise SizeMismatch(f"expected {self.n} rules, got {len(rules)}")
        object.__setattr__(self, "rules", rules)

    def rule(self, k: int) -> LocalRule:
        return self.rules[k % self.n]

    def rotated(self, shift: int) -> "CycleStrategy":
        """Strategy whose player k uses the rule of player k + shift."""
        return CycleStrategy(self.n, tuple(self.rule(k + shift) for k in range(self.n)))

    @classmethod
    def uniform(cls, n: int, rule: LocalRule) -> "CycleStrategy":
        return cls(n, (rule,) * n)


@dataclass(frozen=True)
class Assignment:
    colours: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(_colour(c) for c in self.colours))

    def __len__(self):
        return len(self.colours)

    def __getitem__(self, k: int) -> int:
        return self.colours[k % len(self.colours)]

    def __iter__(self):
        return iter(self.colours)


@dataclass(frozen=True)
class Edge:
    """Edge of the enlarged graph between layer ``layer`` and ``layer + 1``."""

    layer: int
    left: int
    right: int


@dataclass(frozen=True)
class PathSegment:
    start_layer: int
    colours: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(_colour(c) for c in self.colours))
        if len(self.colours) < 2:
            raise DomainError("a path segment has at least two vertices")


def make_strategy(n: int, rules: Sequence) -> CycleStrategy:
    if n < 3:
        raise DomainError(f"cycle length must be at least 3, got {n}")
    if len(rules) != n:
        raise SizeMismatch(f"expected {n} rules, got {len(rules)}")
    return CycleStrategy(n, tuple(rules))


def guess(f: CycleStrategy, k: int, left: int, right: int) -> int:
    return f.rules[k % f.n].table[left][right]


def _as_colours(g) -> tuple[int, ...]:
    return g.colours if isinstance(g, Assignment) else tuple(g)


def correct_count(f: CycleStrategy, g) -> int:
    s = _as_colours(g)
    n = f.n
    if len(s) != n:
        raise SizeMismatch(f"assignment has length {len(s)}, strategy has n={n}")
    rules = f.rules
    return sum(1 for k in range(n) if rules[k].table[s[k - 1]][s[(k + 1) % n]] == s[k])


def is_admissible(f: CycleStrategy, p: PathSegment) -> bool:
    s = p.colours
    for i in range(1, len(s) - 1):
        if s[i] == guess(f, p.start_layer + i, s[i - 1], s[i + 1]):
            return False
    return True


def is_defeating(f: CycleStrategy, g) -> bool:
    return correct_count(f, g) == 0


# JSON wire formats: colours are 0-based, rules listed for k = 0..n-1.

def strategy_to_dict(f: CycleStrategy) -> dict:
    return {"n": f.n, "rules": [[list(row) for row in r.table] for r in f.rules]}


def strategy_from_dict(data: dict) -> CycleStrategy:
    if not isinstance(data, dict) or "n" not in data or "rules" not in data:
        raise DomainError("strategy JSON needs keys 'n' and 'rules'")
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError("'n' must be an integer")
    return make_strategy(n, [LocalRule(r) for r in data["rules"]])


def assignment_to_dict(g: Assignment) -> dict:
    return {"colours": list(g.colours)}


def assignment_from_dict(data: dict) -> Assignment:
    if not isinstance(data, dict) or "colours" not in data:
        raise DomainError("assignment JSON needs key 'colours'")
    return Assignment(tuple(data["colours"]))


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True)


def all_assignments(n: int) -> Iterable[tuple[int, ...]]:
    from itertools import product

    return product(COLOURS, repeat=n)
