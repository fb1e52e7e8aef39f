"""Hat games on arbitrary visibility digraphs with per-vertex colour counts.

An edge ``(v, u)`` means player u sees player v.  Player u's strategy maps
the colours of its in-neighbours, listed in the game's vertex order, to a
guess below ``heights[u]``.  Everything here is exhaustive and meant for
tiny instances.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping

import networkx as nx
import numpy as np

from .errors import BudgetExceeded, DomainError, SizeMismatch

DEFAULT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class VisibilityGame:
    vertices: tuple
    edges: frozenset
    heights: tuple  # aligned with vertices

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        if isinstance(self.heights, Mapping):
            heights = tuple(self.heights[v] for v in self.vertices)
        else:
            heights = tuple(self.heights)
        object.__setattr__(self, "heights", heights)
        if len(set(self.vertices)) != len(self.vertices):
            raise DomainError("duplicate vertex")
        if len(heights) != len(self.vertices) or any(h < 1 for h in heights):
            raise DomainError("every vertex needs a height >= 1")
        vs = set(self.vertices)
        for v, u in self.edges:
            if v not in vs or u not in vs:
                raise DomainError(f"edge {(v, u)} leaves the vertex set")
            if v == u:
                raise DomainError("self-loops are not allowed")

    def height(self, v) -> int:
        return self.heights[self.vertices.index(v)]

    def seen_by(self, u) -> list:
        """In-neighbours of u in vertex order."""
        return [v for v in self.vertices if (v, u) in self.edges]

    def observation_size(self, u) -> int:
        return math.prod(self.height(v) for v in self.seen_by(u))

    @classmethod
    def cycle(cls, n: int, height=3) -> "VisibilityGame":
        edges = set()
        for k in range(n):
            edges.add(((k - 1) % n, k))
            edges.add(((k + 1) % n, k))
        heights = [height] * n if isinstance(height, int) else list(height)
        return cls(tuple(range(n)), frozenset(edges), tuple(heights))

    @classmethod
    def from_dict(cls, data: dict) -> "VisibilityGame":
        vertices = list(data["vertices"])
        heights = data["heights"]
        if isinstance(heights, dict):
            heights = [heights[str(v)] if str(v) in heights else heights[v] for v in vertices]
        return cls(tuple(vertices), frozenset(tuple(e) for e in data["edges"]), tuple(heights))

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": sorted([list(e) for e in self.edges], key=repr),
                "heights": {str(v): h for v, h in zip(self.vertices, self.heights)}}


@dataclass(frozen=True)
class GeneralStrategy:
    """``guesses[u]`` lists u's guess for every observation, in mixed-radix
    order over ``game.seen_by(u)`` (first in-neighbour most significant)."""

    guesses: Mapping

    def guess(self, game: VisibilityGame, u, selector: Mapping) -> int:
        idx = 0
        for v in game.seen_by(u):
            idx = idx * game.height(v) + selector[v]
        return self.guesses[u][idx]

    @classmethod
    def from_function(cls, game: VisibilityGame, fns: Mapping) -> "GeneralStrategy":
        """``fns[u](*observed colours)`` gives u's guess."""
        out = {}
        for u in game.vertices:
            nbrs = game.seen_by(u)
            obs = itertools.product(*(range(game.height(v)) for v in nbrs))
            out[u] = tuple(fns[u](*o) % game.height(u) for o in obs)
        return cls(out)

    @classmethod
    def from_cycle_strategy(cls, f) -> "GeneralStrategy":
        # in-neighbours of k in vertex order: for the cycle that is sorted(k-1, k+1)
        game = VisibilityGame.cycle(f.n)

        def rule(k):
            left, right = (k - 1) % f.n, (k + 1) % f.n
            if left < right:
                return lambda x, y: f.rules[k].table[x][y]
            return lambda x, y: f.rules[k].table[y][x]

        return cls.from_function(game, {k: rule(k) for k in range(f.n)})

    def to_dict(self) -> dict:
        return {"guesses": {str(u): list(g) for u, g in self.guesses.items()}}

    @classmethod
    def from_dict(cls, game: VisibilityGame, data: dict) -> "GeneralStrategy":
        raw = data["guesses"]
        out = {}
        for u in game.vertices:
            key = str(u) if str(u) in raw else u
            out[u] = tuple(raw[key])
        return cls(out)


def validate(game: VisibilityGame, f: GeneralStrategy) -> None:
    for u in game.vertices:
        g = f.guesses.get(u)
        if g is None or len(g) != game.observation_size(u):
            raise SizeMismatch(f"strategy of {u!r} must list {game.observation_size(u)} guesses")
        if any(not 0 <= x < game.height(u) for x in g):
            raise DomainError(f"guess of {u!r} outside its colours")


def star_graph(game: VisibilityGame) -> nx.DiGraph:
    """Enlarged graph: vertex (i, v) for each colour i of v, and an edge
    (i, v) -> (j, u) whenever u sees v."""
    G = nx.DiGraph()
    for v, h in zip(game.vertices, game.heights):
        G.add_nodes_from(((i, v) for i in range(h)), layer=v)
    for v, u in game.edges:
        for i in range(game.height(v)):
            for j in range(game.height(u)):
                G.add_edge((i, v), (j, u))
    return G


def general_correct_count(game: VisibilityGame, f: GeneralStrategy, g) -> int:
    if not isinstance(g, Mapping):
        if len(g) != len(game.vertices):
            raise SizeMismatch("selector length differs from the vertex count")
        g = dict(zip(game.vertices, g))
    if set(g) != set(game.vertices):
        raise SizeMismatch("selector must colour every vertex")
    for v in game.vertices:
        if not 0 <= g[v] < game.height(v):
            raise DomainError(f"colour of {v!r} outside its range")
    return sum(1 for u in game.vertices if f.guess(game, u, g) == g[u])


def _selectors(game: VisibilityGame) -> np.ndarray:
    return np.array(list(itertools.product(*(range(h) for h in game.heights))),
                    dtype=np.int64).reshape(-1, len(game.vertices))


def _obs_index(game: VisibilityGame, S: np.ndarray, u) -> np.ndarray:
    idx = np.zeros(len(S), dtype=np.int64)
    for v in game.seen_by(u):
        j = game.vertices.index(v)
        idx = idx * game.heights[j] + S[:, j]
    return idx


def min_over_assignments(game: VisibilityGame, f: GeneralStrategy,
                         budget: int = DEFAULT_BUDGET) -> int:
    """Exact minimum number of correct guesses over all selectors."""
    validate(game, f)
    total = math.prod(game.heights)
    if total > budget:
        raise BudgetExceeded(f"{total} selectors exceed the budget {budget}")
    S = _selectors(game)
    correct = np.zeros(len(S), dtype=np.int64)
    for j, u in enumerate(game.vertices):
        table = np.asarray(f.guesses[u], dtype=np.int64)
        correct += table[_obs_index(game, S, u)] == S[:, j]
    return int(correct.min())


def strategy_space_size(game: VisibilityGame) -> int:
    return math.prod(h ** game.observation_size(u) for u, h in zip(game.vertices, game.heights))


def game_value_bruteforce(game: VisibilityGame, budget: int = DEFAULT_BUDGET) -> int:
    """max over strategies of the min over selectors of the correct guesses.

    The strategies of all players but one are enumerated.  For the
    remaining player ``w`` the selectors split by what ``w`` observes and
    its guess only matters inside each class, so its best reply is
    ``min over classes of max over guesses of min over the class``.  ``w``
    is chosen as the player with the most strategies, and ``budget`` bounds
    the number of enumerated strategy profiles of the others.
    """
    sizes = [h ** game.observation_size(u) for u, h in zip(game.vertices, game.heights)]
    w = max(range(len(sizes)), key=lambda i: sizes[i])
    enumerated = math.prod(sizes) // sizes[w]
    if enumerated > budget:
        raise BudgetExceeded(f"{enumerated} strategy profiles exceed the budget {budget}")
    S = _selectors(game)
    if len(S) > budget:
        raise BudgetExceeded(f"{len(S)} selectors exceed the budget {budget}")
    others = [j for j in range(len(game.vertices)) if j != w]
    obs = {j: _obs_index(game, S, game.vertices[j]) for j in range(len(game.vertices))}
    w_obs = obs[w]
    n_classes = game.observation_size(game.vertices[w])
    hw = game.heights[w]
    w_hit = [S[:, w] == y for y in range(hw)]  # w correct if it guesses y
    tables = [itertools.product(range(game.heights[j]),
                                repeat=game.observation_size(game.vertices[j])) for j in others]
    best = 0
    for profile in itertools.product(*[list(t) for t in tables]):
        base = np.zeros(len(S), dtype=np.int64)
        for j, tab in zip(others, profile):
            base += np.asarray(tab, dtype=np.int64)[obs[j]] == S[:, j]
        # value = min over classes c of max over y of min over selectors in c
        per_y = np.stack([base + w_hit[y] for y in range(hw)])  # (hw, |S|)
        class_min = np.full((hw, n_classes), np.iinfo(np.int64).max)
        for y in range(hw):
            np.minimum.at(class_min[y], w_obs, per_y[y])
        value = int(class_min.max(axis=0).min())
        best = max(best, value)
    return best


def game_value_naive(game: VisibilityGame, budget: int = 10 ** 5) -> int:
    """Plain max-min over every strategy profile; reference for tiny games."""
    total = strategy_space_size(game)
    if total > budget:
        raise BudgetExceeded(f"{total} strategies exceed the budget {budget}")
    spaces = [list(itertools.product(range(h), repeat=game.observation_size(u)))
              for u, h in zip(game.vertices, game.heights)]
    best = 0
    for profile in itertools.product(*spaces):
        f = GeneralStrategy(dict(zip(game.vertices, profile)))
        best = max(best, min_over_assignments(game, f, budget=10 ** 9))
    return best
