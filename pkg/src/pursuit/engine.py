"""Rules engine for all four game variants and the strategy-vs-strategy playout loop.

Variant selection: each side is either flexible (may stay: closed neighborhood)
or active (must move: open neighborhood).  Turn order is cop placement, robber
placement, then alternating moves starting with the cops.  Capture is flagged
immediately after any move, placements included.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

from .graphs import Graph, Vertex, vkey


class Phase(enum.Enum):
    COP_PLACEMENT = "cop-placement"
    ROBBER_PLACEMENT = "robber-placement"
    COPS = "cop-turn"
    ROBBER = "robber-turn"
    CAPTURED = "captured"


@dataclass(frozen=True)
class GameConfig:
    num_cops: int = 1
    cops_active: bool = False
    robber_active: bool = False
    max_rounds: int | None = None

    def __post_init__(self):
        if self.num_cops < 1:
            raise ValueError("need at least one cop")

    def resolved_max_rounds(self, g: Graph) -> int:
        if self.max_rounds is not None:
            return self.max_rounds
        return default_max_rounds(g, self.num_cops)


def default_max_rounds(g: Graph, num_cops: int) -> int:
    """4 * |V| * C(|V| choose num_cops): beyond any winning strategy's horizon."""
    return 4 * g.n * math.comb(g.n + num_cops - 1, num_cops)


@dataclass(frozen=True)
class Move:
    """Either a per-cop destination tuple (cop phases) or a robber destination."""

    cop_dests: tuple[Vertex, ...] | None = None
    robber_dest: Vertex | None = None

    @staticmethod
    def cops(dests: Sequence[Vertex]) -> "Move":
        return Move(cop_dests=tuple(dests))

    @staticmethod
    def robber(dest: Vertex) -> "Move":
        return Move(robber_dest=dest)

    def is_cop_move(self) -> bool:
        return self.cop_dests is not None


@dataclass(frozen=True)
class GameState:
    """Immutable snapshot.  `round` counts completed cop turns; `ply` counts
    applied moves including placements."""

    phase: Phase
    cops: tuple[Vertex, ...] | None
    robber: Vertex | None
    round: int = 0
    ply: int = 0
    history: tuple[Move, ...] = ()

    @property
    def captured(self) -> bool:
        return (
            self.cops is not None
            and self.robber is not None
            and self.robber in self.cops
        )

    def position_key(self):
        """Canonical logical position (cop multiset, robber, phase)."""
        cops = tuple(sorted(self.cops, key=vkey)) if self.cops is not None else None
        return (cops, self.robber, self.phase)


def initial_state(cfg: GameConfig) -> GameState:
    return GameState(phase=Phase.COP_PLACEMENT, cops=None, robber=None)


class IllegalMove(ValueError):
    pass


def piece_destinations(g: Graph, v: Vertex, active: bool) -> tuple[Vertex, ...]:
    """Legal destinations for one piece at v."""
    return g.neighbors(v) if active else g.closed_neighbors(v)


def check_legal(g: Graph, s: GameState, m: Move, cfg: GameConfig) -> None:
    """Raise IllegalMove naming the violated constraint if m is not legal at s."""
    if s.captured:
        raise IllegalMove("game already over")
    if s.phase is Phase.COP_PLACEMENT:
        if not m.is_cop_move() or len(m.cop_dests) != cfg.num_cops:
            raise IllegalMove(f"cop placement must give {cfg.num_cops} vertices")
        for v in m.cop_dests:
            if v not in g:
                raise IllegalMove(f"placement on unknown vertex {v!r}")
    elif s.phase is Phase.ROBBER_PLACEMENT:
        if m.is_cop_move() or m.robber_dest not in g:
            raise IllegalMove("robber placement must name one vertex of the graph")
    elif s.phase is Phase.COPS:
        if not m.is_cop_move() or len(m.cop_dests) != cfg.num_cops:
            raise IllegalMove(f"cop move must give {cfg.num_cops} destinations")
        for c, d in zip(s.cops, m.cop_dests):
            if d not in piece_destinations(g, c, cfg.cops_active):
                kind = "open" if cfg.cops_active else "closed"
                raise IllegalMove(
                    f"cop at {c!r} cannot reach {d!r} ({kind} neighborhood rule)"
                )
    elif s.phase is Phase.ROBBER:
        if m.is_cop_move():
            raise IllegalMove("expected a robber move")
        if m.robber_dest not in piece_destinations(g, s.robber, cfg.robber_active):
            kind = "open" if cfg.robber_active else "closed"
            raise IllegalMove(
                f"robber at {s.robber!r} cannot reach {m.robber_dest!r} ({kind} neighborhood rule)"
            )
    else:
        raise IllegalMove(f"no moves in phase {s.phase}")


def legal_moves(g: Graph, s: GameState, cfg: GameConfig) -> list[Move]:
    """Enumerate the full move set.  Combinatorial in the number of cops;
    intended for solvers and tests at small sizes (drivers validate instead)."""
    import itertools

    if s.captured:
        return []
    if s.phase is Phase.COP_PLACEMENT:
        return [
            Move.cops(p)
            for p in itertools.combinations_with_replacement(g.vertices(), cfg.num_cops)
        ]
    if s.phase is Phase.ROBBER_PLACEMENT:
        return [Move.robber(v) for v in g.vertices()]
    if s.phase is Phase.COPS:
        options = [piece_destinations(g, c, cfg.cops_active) for c in s.cops]
        return [Move.cops(p) for p in itertools.product(*options)]
    return [
        Move.robber(v)
        for v in piece_destinations(g, s.robber, cfg.robber_active)
    ]


def apply_move(g: Graph, s: GameState, m: Move, cfg: GameConfig) -> GameState:
    check_legal(g, s, m, cfg)
    hist = s.history + (m,)
    if s.phase is Phase.COP_PLACEMENT:
        nxt = GameState(Phase.ROBBER_PLACEMENT, m.cop_dests, None, 0, s.ply + 1, hist)
    elif s.phase is Phase.ROBBER_PLACEMENT:
        nxt = GameState(Phase.COPS, s.cops, m.robber_dest, 0, s.ply + 1, hist)
    elif s.phase is Phase.COPS:
        nxt = GameState(Phase.ROBBER, m.cop_dests, s.robber, s.round + 1, s.ply + 1, hist)
    else:
        nxt = GameState(Phase.COPS, s.cops, m.robber_dest, s.round, s.ply + 1, hist)
    if nxt.captured:
        nxt = replace(nxt, phase=Phase.CAPTURED)
    return nxt


# -- playouts -----------------------------------------------------------------

Strategy = Callable[[Graph, GameState, GameConfig], Move]


@dataclass
class PlyRecord:
    phase: str
    move: Move
    cops: tuple[Vertex, ...] | None
    robber: Vertex | None
    round: int
    captured: bool


@dataclass
class Transcript:
    """Full record of one game: per-ply records plus the outcome."""

    config: GameConfig
    records: list[PlyRecord] = field(default_factory=list)
    outcome: str = "unresolved"  # captured | survived | forfeit-cops | forfeit-robber
    capture_round: int | None = None
    detail: str = ""

    def final_state(self, g: Graph) -> GameState:
        s = initial_state(self.config)
        for rec in self.records:
            s = apply_move(g, s, rec.move, self.config)
        return s


def playout(
    g: Graph,
    cfg: GameConfig,
    cop_strategy: Strategy,
    robber_strategy: Strategy,
    max_rounds: int | None = None,
    on_state: Callable[[GameState], None] | None = None,
    repetition_limit: int | None = None,
) -> Transcript:
    """Run a full game.  Illegal strategy output forfeits for that side.

    If `repetition_limit` is set, a logical position recurring more than that
    many times ends the game as survived (0-progress detection); the default
    budget is the config's max_rounds bound.
    """
    if not g.is_connected():
        raise ValueError("game entry requires a connected graph")
    limit = max_rounds if max_rounds is not None else cfg.resolved_max_rounds(g)
    t = Transcript(config=cfg)
    s = initial_state(cfg)
    seen: dict = {}
    while True:
        if s.captured:
            t.outcome = "captured"
            t.capture_round = s.round
            return t
        if s.round >= limit and s.phase in (Phase.COPS,):
            t.outcome = "survived"
            t.detail = f"max rounds ({limit}) reached"
            return t
        if repetition_limit is not None and s.phase in (Phase.COPS, Phase.ROBBER):
            key = s.position_key()
            seen[key] = seen.get(key, 0) + 1
            if seen[key] > repetition_limit:
                t.outcome = "survived"
                t.detail = "position repetition"
                return t
        mover = (
            cop_strategy
            if s.phase in (Phase.COP_PLACEMENT, Phase.COPS)
            else robber_strategy
        )
        try:
            m = mover(g, s, cfg)
            s2 = apply_move(g, s, m, cfg)
        except IllegalMove as exc:
            side = "cops" if s.phase in (Phase.COP_PLACEMENT, Phase.COPS) else "robber"
            t.outcome = f"forfeit-{side}"
            t.detail = str(exc)
            return t
        t.records.append(
            PlyRecord(
                phase=s.phase.value,
                move=m,
                cops=s2.cops,
                robber=s2.robber,
                round=s2.round,
                captured=s2.captured,
            )
        )
        s = s2
        if on_state is not None:
            on_state(s)
