"""The 13-cop capture driver for string representations.

Safe states: (1) a top-bottom curve guarded by five cops with the robber
pinned to one side; (2) a two-curve pocket whose convex side is held by four
cops and isometric side by five; (3) a cut vertex held while five cops guard a
top-bottom curve of the robber's component.  Each reduce step extends the
bounding curve, re-classifies the robber, frees the right team, and strictly
shrinks the geometric territory (measured in segments of the territory
representation; the state-2 entry defers its decrease to the follow-up step).

Cops are flexible; freed cops walk to new assignments while standing guards
hold, so the robber never gains territory in transit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import GameConfig, GameState, Move, Phase
from .graphs import Graph, Vertex, shortest_path, vkey
from .guards import FormationGuard, SharedDeputyCoordinator
from .stringrep.curves import (
    INTERSECTS,
    Curve,
    bottommost_vertices,
    curve_to_path,
    relate_curve,
    top_bottom_curve,
    topmost_vertices,
)
from .stringrep.extend import ExtensionError, extend_curve, pocket_between
from .stringrep.model import Representation
from .stringrep.regions import (
    RegionDegeneracyError,
    reanchor_curve,
    restrict,
    side_region,
    subrepresentation,
    two_curve_region,
)

NUM_COPS = 13


class DriverError(RuntimeError):
    """Driver invariant broke; the transcript carries the diagnostics."""


@dataclass
class StepRecord:
    tag: str
    measure: int
    detail: str = ""
    curves: dict = field(default_factory=dict)
    assignments: dict = field(default_factory=dict)


@dataclass
class State1:
    rep: Representation
    curve: Curve
    side: str
    team: FormationGuard

    tag = "state1"


@dataclass
class State2:
    rep: Representation
    curve_convex: Curve
    team_convex: FormationGuard
    curve_iso: Curve
    team_iso: FormationGuard

    tag = "state2"


@dataclass
class State3:
    rep: Representation
    curve: Curve
    side: str
    team: FormationGuard
    held: list  # [(slot, label, polyline points)]

    tag = "state3"


def _extreme_pair(rep: Representation):
    u = min(topmost_vertices(rep), key=vkey)
    v = min(bottommost_vertices(rep), key=vkey)
    return u, v


def _top_bottom(rep: Representation, soft_avoid=frozenset()):
    """Deterministic top-bottom path and curve of a representation."""
    u, v = _extreme_pair(rep)
    if u == v:
        poly = rep.strings[u]
        from .stringrep.curves import extreme_point

        a = extreme_point(rep, u, top=True)
        b = extreme_point(rep, u, top=False)
        curve = relate_curve(rep, (u,), start_anchor=a, end_anchor=b)
        return (u,), curve
    path = shortest_path(rep.graph, u, v)
    if path is None:
        raise DriverError(f"extreme vertices {u!r},{v!r} are disconnected")
    return path, top_bottom_curve(rep, u, v, path, soft_avoid=soft_avoid)


def _root_bbox_side(rep: Representation, root: Representation, curve: Curve, pts):
    """Side classification with separator rays spanning the root bounding box,
    so strings living outside this representation's box classify soundly."""
    minx, miny, maxx, maxy = root.bbox()
    a = curve.start_point
    b = curve.end_point
    sep = [(a[0], maxy + 2)] + curve.geometry + [(b[0], miny - 2)]
    from .stringrep.geometry import double, edge_intersection, parity_inside_2x

    sep_edges = [(p, q) for p, q in zip(sep, sep[1:]) if p != q]
    own = list(zip(pts, pts[1:])) or [(pts[0], pts[0])]
    for e1 in own:
        for e2 in sep_edges:
            got = edge_intersection(e1, e2)
            if got == "overlap" or got:
                return INTERSECTS
    q2 = (2 * pts[0][0], 2 * pts[0][1])
    return "R" if parity_inside_2x(q2, double(sep), closed=False) else "L"


class StringCaptureDriver:
    """Cop strategy for the engine: flexible cops, any robber."""

    def __init__(self, rep: Representation, max_steps: int = 10_000):
        if rep.validate_normal_form():
            raise ValueError("driver requires a normal-form representation")
        self.root = rep
        self.graph = rep.graph
        if not self.graph.is_connected():
            raise ValueError("driver requires a connected representation")
        self.max_steps = max_steps
        self.state = None
        self.program: list = []
        self.slot_role: dict[int, tuple] = {i: ("idle",) for i in range(NUM_COPS)}
        self.teams: list[FormationGuard] = []
        self.team_slots: dict[int, dict] = {}  # id(team) -> {role: slot}
        self.coordinators: list[SharedDeputyCoordinator] = []
        self.coord_slots: dict[int, dict] = {}
        self.step_log: list[StepRecord] = []
        self.baseline_measure: int | None = None
        self.pending_deferred: bool = False
        self._positions: tuple | None = None
        self._robber_root = None
        self.max_cops_in_flight = 0

    # -- vertex bookkeeping ---------------------------------------------------

    def robber_in(self, rep: Representation):
        """The robber's vertex inside `rep`: unique whole string with the
        robber's root id."""
        r = self._robber_root
        cands = [v for v in rep.vertices() if rep.root_of(v) == r]
        whole = [
            v
            for v in cands
            if rep.strings[v].points == self.root.strings[r].points
        ]
        if len(whole) != 1:
            raise DriverError(
                f"robber string {r!r} is not whole inside the territory "
                f"(candidates {cands!r}); territory invariant violated"
            )
        return whole[0]

    def root_of(self, rep: Representation, v: Vertex):
        return rep.root_of(v)

    # -- slot management --------------------------------------------------------

    def _free_slots(self):
        return [s for s in range(NUM_COPS) if self.slot_role[s][0] == "idle"]

    def _assign_team(self, team: FormationGuard, slots: dict):
        self.teams.append(team)
        self.team_slots[id(team)] = dict(slots)
        for role, slot in slots.items():
            self.slot_role[slot] = ("team", team, role)

    def _release_team(self, team: FormationGuard):
        slots = self.team_slots.pop(id(team), {})
        self.teams = [t for t in self.teams if t is not team]
        freed = []
        for role, slot in slots.items():
            self.slot_role[slot] = ("idle",)
            freed.append(slot)
        return freed

    def _hold(self, slot: int, root_vertex):
        self.slot_role[slot] = ("hold", root_vertex)

    def _transit(self, slot: int, target_root):
        cur = self._positions[slot]
        path = shortest_path(self.graph, cur, target_root)
        if path is None:
            raise DriverError(f"no transit route from {cur!r} to {target_root!r}")
        self.slot_role[slot] = ("transit", list(path[1:]), target_root)

    # -- program ops -------------------------------------------------------------

    def _push(self, *ops):
        self.program.extend(ops)

    def _op_blocking_done(self, op) -> bool:
        kind = op[0]
        if kind == "wait-transits":
            return all(
                self.slot_role[s][0] != "transit" for s in range(NUM_COPS)
            )
        if kind == "wait-settled":
            return op[1].settled
        if kind == "wait-coordinated":
            return op[1].coordinated
        if kind == "await-side":
            return self._current_side(op[1], op[2]) != INTERSECTS
        if kind == "chase":
            return False  # runs until capture ends the game
        return True

    def _current_side(self, rep, curve):
        rv = self.robber_in(rep)
        return _root_bbox_side(rep, self.root, curve, list(rep.strings[rv].points))

    # -- measure / logging ---------------------------------------------------------

    def _log_state(self, state, work_measure: int | None, detail: str, deferred=False):
        measure = work_measure if work_measure is not None else -1
        assignments = {
            s: (role[0] if role[0] != "team" else f"team:{role[2]}")
            for s, role in self.slot_role.items()
            if role[0] != "idle"
        }
        curves = {}
        if isinstance(state, State1):
            curves["curve"] = state.curve.segment_ids()
        elif isinstance(state, State2):
            curves["convex"] = state.curve_convex.segment_ids()
            curves["isometric"] = state.curve_iso.segment_ids()
        elif isinstance(state, State3):
            curves["curve"] = state.curve.segment_ids()
        self.step_log.append(
            StepRecord(
                tag=state.tag if state else "none",
                measure=measure,
                detail=detail,
                curves=curves,
                assignments=assignments,
            )
        )
        if measure >= 0:
            if self.baseline_measure is not None and not deferred:
                if measure >= self.baseline_measure:
                    raise DriverError(
                        f"territory measure failed to decrease: {measure} >= "
                        f"{self.baseline_measure} at step {detail!r}"
                    )
            if deferred:
                self.pending_deferred = True
            else:
                self.baseline_measure = measure
                self.pending_deferred = False

    # -- engine strategy interface ----------------------------------------------------

    def __call__(self, g: Graph, s: GameState, cfg: GameConfig) -> Move:
        if cfg.num_cops != NUM_COPS or cfg.cops_active or cfg.robber_active:
            raise ValueError("string driver plays 13 flexible cops vs flexible robber")
        if s.phase is Phase.COP_PLACEMENT:
            return self._place()
        self._positions = tuple(s.cops)
        self._robber_root = s.robber
        if len(self.step_log) > self.max_steps:
            raise DriverError("driver exceeded its step budget")
        # capture priority
        for slot, cur in enumerate(s.cops):
            if cur == s.robber or g.has_edge(cur, s.robber):
                dests = list(s.cops)
                dests[slot] = s.robber
                return Move.cops(dests)
        self._advance_program()
        return Move.cops(self._moves())

    def _place(self) -> Move:
        path, curve = _top_bottom(self.root)
        team = FormationGuard(self.graph, path, (0, -2, -1, 1, 2), territory=None)
        team.metric_rep = self.root
        slots = {role: i for i, role in enumerate(team.offsets)}
        self._assign_team(team, slots)
        start = path[0]
        self._push(
            ("wait-settled", team),
            ("call", lambda: self._enter_state1(team, curve)),
        )
        self._log_state(None, self.root.segment_count(), "placement")
        self.baseline_measure = None  # first real measure set at state entry
        return Move.cops([start] * NUM_COPS)

    def _enter_state1(self, team, curve):
        side = self._current_side(self.root, curve)
        if side == INTERSECTS:
            self._push(
                ("await-side", self.root, curve),
                ("call", lambda: self._enter_state1(team, curve)),
            )
            return
        self.state = State1(self.root, curve, side, team)
        work = restrict(self.root, side_region(self.root, curve, side))
        self._log_state(self.state, work.territory_measure(), "initial safe state 1")
        self._push(("call", self._reduce))

    # -- per-turn mechanics ----------------------------------------------------------

    def _advance_program(self):
        guard = 0
        while self.program:
            op = self.program[0]
            if op[0] == "call":
                self.program.pop(0)
                op[1]()
            elif self._op_blocking_done(op):
                self.program.pop(0)
            else:
                break
            guard += 1
            if guard > 10_000:
                raise DriverError("program loop did not converge")

    def _moves(self) -> list:
        in_flight = sum(1 for s in range(NUM_COPS) if self.slot_role[s][0] != "idle")
        self.max_cops_in_flight = max(self.max_cops_in_flight, in_flight)
        dests = list(self._positions)
        stepped = set()
        for team in self.teams:
            rv = None
            try:
                rv = self.robber_in(team.metric_rep)
            except DriverError:
                rv = None
            desired = team.step(rv)
            for role, vertex in desired.items():
                slot = self.team_slots[id(team)].get(role)
                if slot is None:
                    continue
                dests[slot] = team.metric_rep.root_of(vertex)
                stepped.add(slot)
        for coord in self.coordinators:
            rv = None
            try:
                rv = self.robber_in(coord.metric_rep)
            except DriverError:
                rv = None
            desired = coord.step(rv)
            for key, vertex in desired.items():
                slot = self.coord_slots[id(coord)].get(key)
                if slot is None:
                    continue
                dests[slot] = coord.metric_rep.root_of(vertex)
                stepped.add(slot)
        for slot in range(NUM_COPS):
            role = self.slot_role[slot]
            if role[0] == "transit" and slot not in stepped:
                queue = role[1]
                if queue:
                    dests[slot] = queue.pop(0)
                if not queue:
                    self.slot_role[slot] = ("hold", role[2])
            elif role[0] == "chase":
                path = shortest_path(self.graph, self._positions[slot], self._robber_root)
                if path is not None and len(path) > 1:
                    dests[slot] = path[1]
        return dests

    # -- the reduce step ----------------------------------------------------------------

    def _reduce(self):
        state = self.state
        if isinstance(state, State1):
            self._reduce_state1(state)
        elif isinstance(state, State2):
            self._reduce_state2(state)
        elif isinstance(state, State3):
            self._reduce_state3(state)
        else:
            raise DriverError(f"reduce called in {state!r}")

    # ---- state 1 ----

    def _reduce_state1(self, state: State1):
        work = restrict(state.rep, side_region(state.rep, state.curve, state.side))
        pi1 = reanchor_curve(state.curve, work)
        path1 = curve_to_path(pi1)
        if len(path1) == 1:
            self._branch_cut(state, work, pi1, cut=path1[0], held_before=[])
            return
        robber = self.robber_in(work)
        try:
            res = extend_curve(work, pi1, robber=robber)
        except ExtensionError as exc:
            raise DriverError(f"extension failed in state 1: {exc}") from exc
        if res.kind == "cannot_extend":
            self._branch_cut(state, work, pi1, cut=res.cut_vertex, held_before=[])
        else:
            self._branch_extend(
                state,
                work,
                pi1,
                res,
                old_team=state.team,
                convex_team=None,
                held=[],
                prior_side=state.side,
            )

    # ---- state 2 ----

    def _reduce_state2(self, state: State2):
        try:
            region = two_curve_region(state.rep, state.curve_convex, state.curve_iso)
        except RegionDegeneracyError as exc:
            raise DriverError(f"state-2 region degenerate: {exc}") from exc
        work = restrict(state.rep, region)
        ccvx = reanchor_curve(state.curve_convex, work)
        ciso = reanchor_curve(state.curve_iso, work)
        robber = self.robber_in(work)
        try:
            res = extend_curve(work, ciso, other=ccvx, robber=robber)
        except ExtensionError as exc:
            raise DriverError(f"extension failed in state 2: {exc}") from exc
        if res.kind == "cannot_extend":
            self._branch_cut(
                state, work, ciso, cut=res.cut_vertex, held_before=[], other_curve=ccvx
            )
        else:
            self._branch_extend(
                state,
                work,
                ciso,
                res,
                old_team=state.team_iso,
                convex_team=(state.team_convex, ccvx),
                held=[],
                prior_side=None,
            )

    # ---- state 3 ----

    def _reduce_state3(self, state: State3):
        work = restrict(state.rep, side_region(state.rep, state.curve, state.side))
        pi1 = reanchor_curve(state.curve, work)
        path1 = curve_to_path(pi1)
        if len(path1) == 1:
            self._branch_cut(state, work, pi1, cut=path1[0], held_before=state.held)
            return
        robber = self.robber_in(work)
        try:
            res = extend_curve(work, pi1, robber=robber)
        except ExtensionError as exc:
            raise DriverError(f"extension failed in state 3: {exc}") from exc
        if res.kind == "cannot_extend":
            self._branch_cut(state, work, pi1, cut=res.cut_vertex, held_before=state.held)
        else:
            self._branch_extend(
                state,
                work,
                pi1,
                res,
                old_team=state.team,
                convex_team=None,
                held=state.held,
                prior_side=state.side,
            )

    # ---- shared branch machinery ----

    def _branch_extend(self, state, work, old_curve, res, old_team, convex_team, held, prior_side):
        """Extend the isometric curve, then classify the robber and commit.

        Constructed extensions have the old path's length and run the shared
        special deputy coordination (nine cops over the pair).  The
        already-convex branch instead drops the old guard to four cops and
        sends the freed deputy to the fresh five-cop team.
        """
        new_path = res.new_path
        old_path = curve_to_path(old_curve)
        old_slots = dict(self.team_slots[id(old_team)])
        self._release_team(old_team)

        if res.kind == "extended" and len(new_path) == len(old_path):
            # rebase the standing 5-guard to the territory metric; it keeps
            # tracking while the four fresh cops walk to the start vertex
            rebased = FormationGuard(work.graph, old_path, (0, -2, -1, 1, 2))
            rebased.metric_rep = work
            for off in rebased.offsets:
                rebased.idx[off] = min(old_team.idx.get(off, 0), rebased.k)
            self._assign_team(rebased, old_slots)
            free = self._free_slots()
            if len(free) < 4:
                raise DriverError(f"need 4 free cops for the extension, have {len(free)}")
            new_slots = free[:4]
            for s in new_slots:
                self._transit(s, work.root_of(new_path[0]))

            def start_coordination():
                self._release_team(rebased)
                coord = SharedDeputyCoordinator(work.graph, rebased, new_path, res.shared_from)
                coord.metric_rep = work
                self.coordinators.append(coord)
                self.coord_slots[id(coord)] = {
                    ("old", 0): old_slots[0],
                    ("old", -2): old_slots[-2],
                    ("old", -1): old_slots[-1],
                    ("old", 1): old_slots[1],
                    "special": old_slots[2],
                    ("new", 0): new_slots[0],
                    ("new", -2): new_slots[1],
                    ("new", -1): new_slots[2],
                    ("new", 1): new_slots[3],
                }
                for role, slot in self.coord_slots[id(coord)].items():
                    self.slot_role[slot] = ("coord", coord, role)
                self._push(
                    ("wait-coordinated", coord),
                    ("call", lambda: self._finish_coordination(
                        state, work, old_curve, res, coord, convex_team, held, prior_side
                    )),
                )

            self._push(("wait-transits",), ("call", start_coordination))
            return

        # already-convex (or longer alternative): four cops suffice on the old
        # curve; its special deputy joins four fresh cops on the new path
        old4 = FormationGuard(work.graph, old_path, (0, -2, -1, 1))
        old4.metric_rep = work
        for off in old4.offsets:
            old4.idx[off] = min(old_team.idx.get(off, 0), old4.k)
        self._assign_team(old4, {off: old_slots[off] for off in (0, -2, -1, 1)})
        self.slot_role[old_slots[2]] = ("idle",)
        free = self._free_slots()
        if len(free) < 5:
            raise DriverError(f"need 5 cops for the alternative path, have {len(free)}")
        slots5 = {0: free[0], -2: free[1], -1: free[2], 1: free[3], 2: free[4]}
        for s in slots5.values():
            self._transit(s, work.root_of(new_path[0]))
        new_team = FormationGuard(work.graph, new_path, (0, -2, -1, 1, 2))
        new_team.metric_rep = work

        def engage_new():
            self._assign_team(new_team, slots5)
            self._push(
                ("wait-settled", new_team),
                ("call", lambda: self._classify_after_extension(
                    state, work, old_curve, res, old4, new_team, convex_team, held, prior_side
                )),
            )

        self._push(("wait-transits",), ("call", engage_new))

    def _finish_coordination(self, state, work, old_curve, res, coord, convex_team, held, prior_side):
        """Dissolve the coordinator into standing four- and five-cop teams."""
        slots = self._dissolve_coordinator(coord)
        new_team = FormationGuard(work.graph, res.new_path, (0, -2, -1, 1, 2))
        new_team.metric_rep = work
        new_team.idx = {
            0: coord.new4.idx[0],
            -2: coord.new4.idx[-2],
            -1: coord.new4.idx[-1],
            1: coord.new4.idx[1],
            2: coord.special_idx,
        }
        new_team.settled = coord.new4.settled
        self._assign_team(
            new_team,
            {
                0: slots[("new", 0)],
                -2: slots[("new", -2)],
                -1: slots[("new", -1)],
                1: slots[("new", 1)],
                2: slots["special"],
            },
        )
        old4 = coord.old4
        old4.metric_rep = work
        self._assign_team(old4, {off: slots[("old", off)] for off in (0, -2, -1, 1)})
        self._classify_after_extension(
            state, work, old_curve, res, old4, new_team, convex_team, held, prior_side
        )

    def _dissolve_coordinator(self, coord):
        slots = self.coord_slots.pop(id(coord), {})
        self.coordinators = [c for c in self.coordinators if c is not coord]
        return slots

    def _classify_after_extension(self, state, work, old_curve, res, old4, new_team, convex_team, held, prior_side):
        new_curve = res.curve
        side = self._current_side(work, new_curve)
        if side == INTERSECTS:
            self._push(
                ("await-side", work, new_curve),
                (
                    "call",
                    lambda: self._classify_after_extension(
                        state, work, old_curve, res, old4, new_team, convex_team, held, prior_side
                    ),
                ),
            )
            return

        robber_beyond = prior_side is not None and side == prior_side
        if robber_beyond:
            # 1(b): free the old guard entirely; five cops hold the new curve
            self._release_team(old4)
            for slot, label, pts in list(held):
                h_side = _root_bbox_side(work, self.root, new_curve, pts)
                if h_side in ("L", "R") and h_side != side:
                    self.slot_role[slot] = ("idle",)
                    held = [h for h in held if h[0] != slot]
            if held:
                self.state = State3(work, new_curve, side, new_team, held)
            else:
                self.state = State1(work, new_curve, side, new_team)
            nxt_work = restrict(work, side_region(work, new_curve, side))
            self._log_state(self.state, nxt_work.territory_measure(), "robber beyond the extension")
            self._push(("call", self._reduce))
            return

        # the robber sits in a pocket: find which boundary pair bounds it
        robber_v = self.robber_in(work)
        rv_pts = list(work.strings[robber_v].points)
        try:
            m, w, mid_old, mid_new, pocket = pocket_between(work, old_curve, new_curve)
        except Exception as exc:
            raise DriverError(f"pocket construction failed: {exc}") from exc
        in_old_new = all(pocket.contains_point(p) for p in rv_pts)
        if in_old_new:
            # pocket between the old isometric curve and the extension: the
            # old sub-curve is convex there (four cops), five on the new
            if convex_team is not None:
                self._release_team(convex_team[0])
            for slot, label, pts in list(held):
                self.slot_role[slot] = ("idle",)
                held = [h for h in held if h[0] != slot]
            self.state = State2(work, mid_old, old4, mid_new, new_team)
            deferred = prior_side is not None  # 1(c) defers its decrease
            nxt_work = restrict(work, two_curve_region(work, mid_old, mid_new))
            self._log_state(
                self.state,
                nxt_work.territory_measure(),
                "robber between the curves",
                deferred=deferred,
            )
            self._push(("call", self._reduce))
            return
        if convex_team is not None:
            # state 2: robber between the standing convex curve and the extension
            cvx_team, ccvx = convex_team
            self._release_team(old4)
            try:
                m2, w2, mid_cvx, mid_new2, pocket2 = pocket_between(work, ccvx, new_curve)
            except Exception as exc:
                raise DriverError(f"convex-side pocket failed: {exc}") from exc
            if not all(pocket2.contains_point(p) for p in rv_pts):
                raise DriverError("robber is in no pocket after the extension")
            self.state = State2(work, mid_cvx, cvx_team, mid_new2, new_team)
            nxt_work = restrict(work, two_curve_region(work, mid_cvx, mid_new2))
            self._log_state(self.state, nxt_work.territory_measure(), "robber behind the old isometric curve")
            self._push(("call", self._reduce))
            return
        raise DriverError("robber is neither beyond the extension nor in a pocket")

    def _branch_cut(self, state, work, old_curve, cut, held_before, other_curve=None):
        """No alternative path: hold the unique attachment vertex, release the
        guards, and rebuild a top-bottom guard inside the robber's component."""
        robber = self.robber_in(work)
        boundary = set(curve_to_path(old_curve))
        if other_curve is not None:
            boundary |= set(curve_to_path(other_curve))
        comp = work.graph.without(boundary).component_of(robber)
        cut_root = work.root_of(cut)
        cut_pts = list(work.strings[cut].points)

        free = self._free_slots()
        if not free:
            raise DriverError("no free cop available to hold the cut vertex")
        hold_slot = free[0]
        self._transit(hold_slot, cut_root)

        def after_hold():
            self._hold(hold_slot, cut_root)
            # the guards release only now that the attachment is held
            if isinstance(state, (State1, State3)):
                self._release_team(state.team)
            else:
                self._release_team(state.team_iso)
                self._release_team(state.team_convex)
            sub = subrepresentation(work, comp)
            if len(comp) == 1:
                for slot, label, pts in held_before:
                    self.slot_role[slot] = ("idle",)
                self._log_state(self.state, None, "robber cornered on a single string")
                extra = self._free_slots()[0]
                self.slot_role[extra] = ("chase",)
                self._push(("chase", None))
                return
            path, curve = _top_bottom(sub)
            team = FormationGuard(sub.graph, path, (0, -2, -1, 1, 2))
            team.metric_rep = sub
            free2 = self._free_slots()
            if len(free2) < 5:
                raise DriverError("not enough cops for the component guard")
            slots = {off: free2[i] for i, off in enumerate(team.offsets)}
            start = sub.root_of(path[0])
            for s in slots.values():
                self._transit(s, start)
            self._push(
                ("wait-transits",),
                ("call", lambda: self._assign_team(team, slots)),
                ("wait-settled", team),
                (
                    "call",
                    lambda: self._classify_after_cut(
                        sub, curve, team, (hold_slot, cut, cut_pts), held_before
                    ),
                ),
            )

        self._push(("wait-transits",), ("call", after_hold))

    def _classify_after_cut(self, sub, curve, team, new_hold, held_before):
        side = self._current_side(sub, curve)
        if side == INTERSECTS:
            self._push(
                ("await-side", sub, curve),
                (
                    "call",
                    lambda: self._classify_after_cut(sub, curve, team, new_hold, held_before),
                ),
            )
            return
        held = []
        for slot, label, pts in [new_hold] + list(held_before):
            h_side = _root_bbox_side(sub, self.root, curve, pts)
            if h_side == side or h_side == INTERSECTS:
                held.append((slot, label, pts))
            else:
                self.slot_role[slot] = ("idle",)
        if len(held) > 2:
            raise DriverError(f"more than two open exits after a cut: {held!r}")
        nxt_work = restrict(sub, side_region(sub, curve, side))
        if held:
            self.state = State3(sub, curve, side, team, held)
            self._log_state(self.state, nxt_work.territory_measure(), "cut vertex held with the robber")
        else:
            self.state = State1(sub, curve, side, team)
            self._log_state(self.state, nxt_work.territory_measure(), "cut vertex sealed; back to one curve")
        self._push(("call", self._reduce))


def make_string_driver(rep: Representation) -> StringCaptureDriver:
    return StringCaptureDriver(rep)
