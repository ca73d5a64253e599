"""Robber strategies for adversarial playouts.

All of them are deterministic given their construction arguments (the random
walker takes a seed), so transcripts replay bit-for-bit.
"""

from __future__ import annotations

import random

from .engine import GameConfig, GameState, Move, Phase, piece_destinations
from .graphs import Graph, Vertex, vkey


def _cop_dist(g: Graph, cops) -> dict:
    """Distance-to-nearest-cop map (one multi-source BFS per turn)."""
    return g.multi_source_distances(cops)


def _best_placement(g: Graph, cops) -> Vertex:
    """Vertex maximizing distance to the nearest cop (lex tie-break)."""
    d = _cop_dist(g, cops)
    return max(
        g.vertices(),
        key=lambda v: (d.get(v, float("inf")), tuple(reversed(vkey(v)))),
    )


class StallingRobber:
    """Stays put whenever allowed; otherwise takes the smallest-id neighbor."""

    def __call__(self, g: Graph, s: GameState, cfg: GameConfig) -> Move:
        if s.phase is Phase.ROBBER_PLACEMENT:
            return Move.robber(_best_placement(g, s.cops))
        if not cfg.robber_active:
            return Move.robber(s.robber)
        return Move.robber(min(g.neighbors(s.robber), key=vkey))


class GreedyEvader:
    """Moves to maximize distance to the nearest cop; deterministic tie-break."""

    def __call__(self, g: Graph, s: GameState, cfg: GameConfig) -> Move:
        if s.phase is Phase.ROBBER_PLACEMENT:
            return Move.robber(_best_placement(g, s.cops))
        d = _cop_dist(g, s.cops)
        opts = piece_destinations(g, s.robber, cfg.robber_active)
        best = max(
            opts,
            key=lambda v: (
                d.get(v, float("inf")),
                v == s.robber,  # prefer staying among ties
                tuple(reversed(vkey(v))),
            ),
        )
        return Move.robber(best)


class RandomWalkRobber:
    """Territory-aware seeded random walk: walks randomly among the moves that
    keep the nearest cop at distance >= 1, falling back to anything legal."""

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def __call__(self, g: Graph, s: GameState, cfg: GameConfig) -> Move:
        if s.phase is Phase.ROBBER_PLACEMENT:
            return Move.robber(_best_placement(g, s.cops))
        d = _cop_dist(g, s.cops)
        opts = list(piece_destinations(g, s.robber, cfg.robber_active))
        safe = [v for v in opts if d.get(v, 2) >= 2]
        pool = safe or [v for v in opts if v not in s.cops] or opts
        return Move.robber(self.rng.choice(sorted(pool, key=vkey)))


class ProbeRobber:
    """Adversary that attacks a guarded set: whenever it can step into the set
    without an adjacent cop ready to capture, it does; otherwise it evades.

    Used by the guard harnesses to hunt for guarantee gaps.
    """

    def __init__(self, guarded_set, seed: int = 0, warmup: int = 0):
        self.guarded = frozenset(guarded_set)
        self.rng = random.Random(seed)
        self.warmup = warmup
        self.turns = 0

    def __call__(self, g: Graph, s: GameState, cfg: GameConfig) -> Move:
        if s.phase is Phase.ROBBER_PLACEMENT:
            d = _cop_dist(g, s.cops)
            outside = [v for v in g.vertices() if v not in self.guarded]
            pool = outside or list(g.vertices())
            return Move.robber(
                max(pool, key=lambda v: (d.get(v, float("inf")), tuple(reversed(vkey(v)))))
            )
        self.turns += 1
        opts = list(piece_destinations(g, s.robber, cfg.robber_active))
        cops = set(s.cops)
        covered = set(cops)
        for c in cops:
            covered.update(g.neighbors(c))
        if self.turns > self.warmup:
            holes = [v for v in opts if v in self.guarded and v not in covered]
            if holes:
                return Move.robber(min(holes, key=vkey))
        d = _cop_dist(g, s.cops)
        safe = [v for v in opts if d.get(v, 2) >= 2]
        pool = safe or [v for v in opts if v not in cops] or opts
        if s.robber in pool and self.turns <= self.warmup:
            return Move.robber(s.robber)  # hold the staging spot while waiting
        return Move.robber(self.rng.choice(sorted(pool, key=vkey)))


class TableRobber:
    """Optimal evader backed by an exact-solver value table."""

    def __init__(self, solver_result):
        self.result = solver_result

    def __call__(self, g: Graph, s: GameState, cfg: GameConfig) -> Move:
        from .solver import best_robber_move, best_robber_placement

        if s.phase is Phase.ROBBER_PLACEMENT:
            return Move.robber(best_robber_placement(self.result, s.cops))
        return Move.robber(best_robber_move(self.result, s.cops, s.robber))


ROBBER_NAMES = ("greedy", "random", "stall")


def make_robber(name: str, seed: int = 0):
    if name == "greedy":
        return GreedyEvader()
    if name == "random":
        return RandomWalkRobber(seed)
    if name == "stall":
        return StallingRobber()
    raise ValueError(f"unknown robber heuristic {name!r}")
