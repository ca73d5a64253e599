"""Guard strategy automata: sheriff-and-deputies path guards.

Each guard is parameterized by a metric graph (where levels are computed), a
path, and a territory used for precondition checks.  Level sets are
D_j = {v : d(u0, v) = j for j < k; d(u0, v) >= j for j = k}, and index
arithmetic uses the boundary conventions u_{-1} = u_{-2} = u_0 and
u_{k+1} = u_{k+2} = u_k.

A guard's `step(robber)` is called once per cop turn with the robber's vertex
in the metric graph and returns the desired position per role.  Capture
opportunities are the composer's job (see GuardStrategy / the drivers): a cop
adjacent to the robber in the game graph simply takes it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .engine import GameConfig, GameState, Move, Phase
from .graphs import (
    Graph,
    Vertex,
    is_convex_path_relative,
    is_isometric_path_relative,
    is_path,
    vkey,
)


class GuardPreconditionError(ValueError):
    pass


class GuardInvariantError(AssertionError):
    """A settled guard observed a position its precondition should exclude."""


SHERIFF = 0  # role offsets double as role names


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


class FormationGuard:
    """Flexible-cop guard: the sheriff tracks the robber's level set along the
    path and each deputy holds a fixed index offset, clamped at the ends.

    offsets (0,) guards V(P) for a path isometric relative to the territory;
    (0, -2, -1, +1) guards N[P] for a convex path; (0, -2, -1, +1, +2) guards
    N[P] for an isometric path (the +2 deputy is the special deputy).
    """

    active = False

    def __init__(
        self,
        metric: Graph,
        path: Sequence[Vertex],
        offsets: Sequence[int],
        territory=None,
    ):
        if not is_path(metric, path):
            raise GuardPreconditionError("not a path of the metric graph")
        self.metric = metric
        self.path = tuple(path)
        self.k = len(path) - 1
        self.offsets = tuple(offsets)
        self.levels = metric.distances(path[0])
        self.idx = {off: 0 for off in offsets}
        self.settled = self.k == 0
        self.settle_moves = 0
        self.parked = False
        self.territory = frozenset(territory) if territory is not None else None
        self._on_path = frozenset(self.path)

    def roles(self):
        return self.offsets

    def clamp(self, i: int) -> int:
        return max(0, min(self.k, i))

    def level_of(self, robber: Vertex) -> int | None:
        d = self.levels.get(robber)
        return None if d is None else min(d, self.k)

    def positions(self) -> dict[int, Vertex]:
        return {off: self.path[i] for off, i in self.idx.items()}

    def step(self, robber: Vertex) -> dict[int, Vertex]:
        j = self.level_of(robber) if robber is not None else None
        if j is None or self.parked:
            return self.positions()  # park: hold formation
        self._check_entry_structure(robber, j)
        all_on_target = True
        for off in self.offsets:
            target = self.clamp(j + off)
            cur = self.idx[off]
            if cur != target:
                cur += _sign(target - cur)
                self.idx[off] = cur
            if cur != self.clamp(j + off):
                all_on_target = False
        if not self.settled:
            self.settle_moves += 1
            if all_on_target:
                self.settled = True
        return self.positions()

    def _check_entry_structure(self, robber: Vertex, j: int) -> None:
        """Structural consequence of convexity (4-cop arrangement): a settled
        guard may only see territory robbers in N[P] adjacent to u_{j-1}/u_j.
        A violation means the convexity precondition was wrong; fail loudly."""
        if (
            self.offsets != (0, -2, -1, 1)
            or not self.settled
            or self.territory is None
            or robber not in self.territory
            or robber in self._on_path
        ):
            return
        on_p = [v for v in self.metric.neighbors(robber) if v in self._on_path]
        if not on_p:
            return
        allowed = {self.path[max(0, j - 1)], self.path[j]}
        if not set(on_p) <= allowed:
            raise GuardInvariantError(
                f"robber at {robber!r} (level {j}) adjacent to {on_p!r} on the "
                f"guarded path; convexity precondition must have been violated"
            )


class ActiveConvexGuard:
    """One active cop guarding a convex path against a flexible robber.

    Invariant after each cop move: robber in D_i implies the cop is at v_i or
    v_{i-1}.  Maintenance is the three-case rule: robber level down -> step
    down; up -> step up; unchanged -> toggle between v_i and v_{i-1}.
    """

    active = True

    def __init__(self, metric: Graph, path: Sequence[Vertex]):
        if not is_path(metric, path):
            raise GuardPreconditionError("not a path of the metric graph")
        self.metric = metric
        self.path = tuple(path)
        self.k = len(path) - 1
        self.levels = metric.distances(path[0])
        self.pos = 0
        self.prev_level: int | None = None
        self.settled = False
        self.settle_moves = 0
        if self.k == 0:
            nbrs = metric.neighbors(path[0])
            if not nbrs:
                raise GuardPreconditionError(
                    "an active cop cannot guard a single vertex with no neighbor"
                )
            self._perch = min(nbrs, key=vkey)
            self._on_perch = False
            self.settled = True

    def level_of(self, robber: Vertex) -> int | None:
        d = self.levels.get(robber)
        return None if d is None else min(d, self.k)

    def positions(self) -> dict[int, Vertex]:
        if self.k == 0:
            return {SHERIFF: self._perch if self._on_perch else self.path[0]}
        return {SHERIFF: self.path[self.pos]}

    def _toggle_degenerate(self):
        self._on_perch = not self._on_perch
        return self.positions()

    def step(self, robber: Vertex) -> dict[int, Vertex]:
        if self.k == 0:
            return self._toggle_degenerate()
        j = self.level_of(robber) if robber is not None else None
        if j is None:
            # Park while staying active: oscillate along a path edge.
            self.pos += 1 if self.pos == 0 else -1
            return self.positions()
        if not self.settled:
            self.settle_moves += 1
            if self.pos == j and j > 0:
                self.pos -= 1  # forced move; stays inside {v_j, v_{j-1}}
            else:
                self.pos += _sign(j - self.pos)
            if self.pos in (j, j - 1):
                self.settled = True
                self.prev_level = j
            return self.positions()
        delta = j - self.prev_level
        if delta > 0:
            self.pos += 1
        elif delta < 0:
            self.pos -= 1
        else:
            self.pos = j - 1 if self.pos == j else j
        self.pos = max(0, min(self.k, self.pos))
        self.prev_level = j
        return self.positions()


class ActivePairGuard:
    """Two active cops guarding a path isometric relative to the territory.

    The sheriff role plays the classical flexible strategy; the deputy rides
    the adjacent vertex.  Whenever the classical strategy would stay, the two
    cops swap positions and roles, so the sheriff role never leaves the
    tracked vertex while both cops keep moving.
    """

    active = True
    SLOT_A = 0
    SLOT_B = 1

    def __init__(self, metric: Graph, path: Sequence[Vertex]):
        if not is_path(metric, path):
            raise GuardPreconditionError("not a path of the metric graph")
        self.metric = metric
        self.path = tuple(path)
        self.k = len(path) - 1
        self.levels = metric.distances(path[0])
        self.swaps = 0
        self.settled = False
        self.settle_moves = 0
        if self.k == 0:
            nbrs = metric.neighbors(path[0])
            if not nbrs:
                raise GuardPreconditionError(
                    "active cops cannot guard a single vertex of K1"
                )
            self._perch = min(nbrs, key=vkey)
            self._flip = False
            self.settled = True
            return
        # Pair occupies (lo, lo+1).  sheriff_hi marks which end carries the
        # sheriff role; slot_a_hi marks which end physical cop A occupies.
        self.lo = 0
        self.sheriff_hi = False
        self.slot_a_hi = False

    def level_of(self, robber: Vertex) -> int | None:
        d = self.levels.get(robber)
        return None if d is None else min(d, self.k)

    def positions(self) -> dict[int, Vertex]:
        if self.k == 0:
            a, b = self.path[0], self._perch
            if self._flip:
                a, b = b, a
            return {self.SLOT_A: a, self.SLOT_B: b}
        va, vb = self.path[self.lo], self.path[self.lo + 1]
        if self.slot_a_hi:
            va, vb = vb, va
        return {self.SLOT_A: va, self.SLOT_B: vb}

    def _sheriff_index(self) -> int:
        return self.lo + 1 if self.sheriff_hi else self.lo

    def _swap_through(self):
        """Both cops traverse the shared edge, exchanging vertices."""
        self.slot_a_hi = not self.slot_a_hi

    def step(self, robber: Vertex) -> dict[int, Vertex]:
        if self.k == 0:
            self._flip = not self._flip
            self.swaps += 1
            return self.positions()
        j = self.level_of(robber) if robber is not None else None
        if j is None:
            self._swap_through()  # park while staying active
            self.swaps += 1
            return self.positions()
        s = self._sheriff_index()
        delta = _sign(j - s)
        if delta == 0:
            # Classical stay: swap positions AND roles; the sheriff role ends
            # up on the same vertex, carried by the other cop.
            self._swap_through()
            self.swaps += 1
        else:
            new_lo = self.lo + delta
            if 0 <= new_lo and new_lo + 1 <= self.k:
                self.lo = new_lo  # slide: each cop steps one edge over
            else:
                # Pair is pinned at the path end: swap through the shared
                # edge and hand the sheriff role to the arriving cop.
                self._swap_through()
                self.sheriff_hi = not self.sheriff_hi
        if not self.settled:
            self.settle_moves += 1
            if self._sheriff_index() == j:
                self.settled = True
        return self.positions()


class SharedDeputyCoordinator:
    """Nine-cop coordination: a settled 5-cop guard on P1 plus four fresh cops
    on an extension path P sharing the suffix from index `shared_from`.

    The +2 deputy of the old team becomes the shared special deputy: it keeps
    serving P1 until the new sheriff settles at level l; if l < shared_from it
    walks to the junction u_i and then synchronizes to the new path's +2 slot.
    """

    def __init__(
        self,
        metric: Graph,
        old_guard: FormationGuard,
        new_path: Sequence[Vertex],
        shared_from: int,
    ):
        if old_guard.offsets != (0, -2, -1, 1, 2):
            raise GuardPreconditionError("old guard must be the 5-cop arrangement")
        if len(new_path) != len(old_guard.path):
            raise GuardPreconditionError("extension paths have equal length")
        if tuple(new_path[shared_from:]) != old_guard.path[shared_from:]:
            raise GuardPreconditionError("paths must share the suffix from the given index")
        if new_path[0] != old_guard.path[0]:
            raise GuardPreconditionError("paths must share their start vertex")
        self.metric = metric
        self.shared_from = shared_from
        self.old4 = FormationGuard(metric, old_guard.path, (0, -2, -1, 1))
        self.old4.idx = {off: old_guard.idx[off] for off in (0, -2, -1, 1)}
        self.old4.settled = old_guard.settled
        self.new4 = FormationGuard(metric, new_path, (0, -2, -1, 1))
        self.k = self.new4.k
        self.special_idx = old_guard.idx[2]  # index on old path, then new path
        self.phase = "new-settling"  # -> walk | sync | done
        self.cop_count = 9

    @property
    def coordinated(self) -> bool:
        return self.phase == "done"

    def positions(self) -> dict:
        out = {("old", off): v for off, v in self.old4.positions().items()}
        out.update({("new", off): v for off, v in self.new4.positions().items()})
        on_new = self.phase in ("sync", "done")
        path = self.new4.path if on_new else self.old4.path
        out["special"] = path[self.special_idx]
        return out

    def _clamp(self, i):
        return max(0, min(self.k, i))

    def step(self, robber: Vertex) -> dict:
        self.old4.step(robber)
        self.new4.step(robber)
        j = self.new4.level_of(robber)
        if self.phase == "new-settling":
            # Special keeps serving the old path's +2 slot.
            if j is not None:
                target = self._clamp(j + 2)
                self.special_idx += _sign(target - self.special_idx)
            if self.new4.settled:
                level = j if j is not None else self.k
                if level >= self.shared_from or self.special_idx >= self.shared_from:
                    self.phase = "done"
                else:
                    self.phase = "walk"
        elif self.phase == "walk":
            # March to the junction no matter what the sheriffs do.
            if self.special_idx < self.shared_from:
                self.special_idx += 1
            if self.special_idx >= self.shared_from:
                self.phase = "sync"
        elif self.phase == "sync":
            if j is not None:
                target = self._clamp(j + 2)
                if self.special_idx == target:
                    self.phase = "done"
                else:
                    self.special_idx += _sign(target - self.special_idx)
                    if self.special_idx == self._clamp(j + 2):
                        self.phase = "done"
        else:  # done: serve the new path's +2 slot
            if j is not None:
                target = self._clamp(j + 2)
                self.special_idx += _sign(target - self.special_idx)
        return self.positions()


# -- factories with precondition checks ---------------------------------------


def guard_isometric_1cop(g: Graph, t, p) -> FormationGuard:
    """One flexible cop guards V(P) for P isometric relative to t."""
    if not is_isometric_path_relative(g, t, p):
        raise GuardPreconditionError("path is not isometric relative to the territory")
    return FormationGuard(g, p, (0,), territory=t)


def guard_neighborhood_convex_4cops(g: Graph, t, p) -> FormationGuard:
    """Four flexible cops guard N[P] for P convex relative to t."""
    try:
        ok = is_convex_path_relative(g, t, p)
    except ValueError as exc:
        raise GuardPreconditionError(str(exc)) from None
    if not ok:
        raise GuardPreconditionError("path is not convex relative to the territory")
    return FormationGuard(g, p, (0, -2, -1, 1), territory=t)


def guard_neighborhood_isometric_5cops(g: Graph, t, p) -> FormationGuard:
    """Five flexible cops guard N[P] for P isometric relative to t."""
    if not is_isometric_path_relative(g, t, p):
        raise GuardPreconditionError("path is not isometric relative to the territory")
    return FormationGuard(g, p, (0, -2, -1, 1, 2), territory=t)


def guard_convex_active_1cop(g: Graph, t, p) -> ActiveConvexGuard:
    """One active cop guards V(P) for P convex relative to t, flexible robber."""
    try:
        ok = is_convex_path_relative(g, t, p)
    except ValueError as exc:
        raise GuardPreconditionError(str(exc)) from None
    if not ok:
        raise GuardPreconditionError("path is not convex relative to the territory")
    return ActiveConvexGuard(g, p)


def guard_isometric_active_2cops(g: Graph, t, p) -> ActivePairGuard:
    """Two active cops guard V(P) for P isometric relative to t."""
    if not is_isometric_path_relative(g, t, p):
        raise GuardPreconditionError("path is not isometric relative to the territory")
    return ActivePairGuard(g, p)


# -- standalone strategy wrapper ----------------------------------------------


@dataclass
class GuardReport:
    settled_at_ply: int | None = None
    settle_moves: int | None = None


class GuardStrategy:
    """Cop strategy wrapper for a single guard automaton on the game graph.

    Places all cops on the path start, runs the automaton with capture
    priority, and records when the guard settled (for harness assertions).
    """

    def __init__(self, guard_factory, path: Sequence[Vertex]):
        self.factory = guard_factory
        self.path = tuple(path)
        self.guard = None
        self.report = GuardReport()

    def roles(self):
        return sorted(self.guard.positions().keys())

    def __call__(self, g: Graph, s: GameState, cfg: GameConfig) -> Move:
        if s.phase is Phase.COP_PLACEMENT:
            self.guard = self.factory()
            initial = self.guard.positions()
            if cfg.num_cops != len(initial):
                raise ValueError(f"guard needs exactly {len(initial)} cops")
            return Move.cops([initial[r] for r in sorted(initial)])
        desired = self.guard.step(s.robber)
        order = sorted(desired.keys())
        dests = [desired[r] for r in order]
        # Capture priority: any cop adjacent to the robber takes it.
        for slot, cur in enumerate(s.cops):
            if g.has_edge(cur, s.robber) or cur == s.robber:
                dests = list(s.cops)
                dests[slot] = s.robber
                for other in range(len(dests)):
                    if other != slot and self.guard.active:
                        # Active teammates still must move; fall back to the
                        # formation step already computed for them.
                        dests[other] = desired[order[other]]
                break
        if self.guard.settled and self.report.settled_at_ply is None:
            self.report.settled_at_ply = s.ply + 1
            self.report.settle_moves = self.guard.settle_moves
        return Move.cops(dests)
