"""Planar capture drivers with component-based territory tracking.

Two flavors share one loop:
  * active4 — four active cops vs a flexible robber: one active cop holds a
    convex path (toggle tracking), two hold an isometric path (swap pair), and
    the fourth establishes extensions; extending shares a suffix with the old
    isometric path so its prefix turns convex and a cop is freed.
  * classical3 — three flexible cops, one per isometric path, the classical
    planar loop.

Territory is purely combinatorial: the robber's component of the graph minus
the guarded path vertex sets; planarity guarantees the separation, and the
vertex count strictly decreases per completed step.  If the cop budget ever
falls short in a reachable configuration, the driver aborts with a
counterexample transcript (this is the falsifiable part of the construction).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .engine import GameConfig, GameState, Move, Phase
from .graphs import (
    min_path_through_with_path,
    Graph,
    Vertex,
    alternative_paths,
    is_convex_path_relative,
    is_isometric_path_relative,
    shortest_path,
    shortest_path_avoiding,
    vkey,
)
from .guards import ActiveConvexGuard, ActivePairGuard, FormationGuard


class PlanarDriverError(RuntimeError):
    pass


def is_planar(g: Graph) -> bool:
    gx = nx.Graph()
    gx.add_nodes_from(g.vertices())
    gx.add_edges_from(g.edges())
    ok, _ = nx.check_planarity(gx)
    return ok


@dataclass
class PlanarStep:
    tag: str
    territory: tuple
    detail: str = ""


def _diameter_pair(g: Graph):
    """Deterministic far pair: double BFS sweep with lex tie-breaks."""
    a = min(g.vertices(), key=vkey)
    da = g.distances(a)
    u = max(g.vertices(), key=lambda v: (da.get(v, -1), tuple(reversed(vkey(v)))))
    du = g.distances(u)
    v = max(g.vertices(), key=lambda w: (du.get(w, -1), tuple(reversed(vkey(w)))))
    return u, v


def _odd_closed_walk(g: Graph, start: Vertex):
    """Shortest odd-length closed walk from start (BFS over vertex-parity
    pairs); None in bipartite components."""
    from collections import deque

    dist = {(start, 0): None}
    queue = deque([(start, 0)])
    while queue:
        v, b = queue.popleft()
        for w in g.neighbors(v):
            key = (w, 1 - b)
            if key not in dist:
                dist[key] = (v, b)
                queue.append(key)
    if (start, 1) not in dist:
        return None
    walk = []
    node = (start, 1)
    while node is not None:
        walk.append(node[0])
        node = dist[node]
    walk.reverse()  # start ... start, odd length
    return walk[1:]


def _violator_level(g: Graph, t: set, path):
    d0 = g.distances(path[0])
    for i in range(1, len(path)):
        xs = sorted(
            (x for x in g.neighbors(path[i]) if x in t and d0.get(x) == i - 1),
            key=vkey,
        )
        if xs:
            return i, xs
    return None


class PlanarCaptureDriver:
    """Engine cop strategy; `style` is "active4" or "classical3"."""

    def __init__(self, g: Graph, style: str = "active4", max_steps: int = 10_000):
        if not is_planar(g):
            raise ValueError("driver requires a planar graph (planarity check failed)")
        if not g.is_connected():
            raise ValueError("driver requires a connected graph")
        if style not in ("active4", "classical3"):
            raise ValueError(f"unknown planar driver style {style!r}")
        self.graph = g
        self.style = style
        self.num_cops = 4 if style == "active4" else 3
        self.active = style == "active4"
        self.max_steps = max_steps
        self.guards: list = []  # [(path, team, "pair" | "solo")]
        self.program: list = []
        self.slot_role: dict[int, tuple] = {i: ("idle",) for i in range(self.num_cops)}
        self.teams: list = []
        self.team_slots: dict[int, dict] = {}
        self.step_log: list[PlanarStep] = []
        self.prev_territory_size: int | None = None
        self._positions = None
        self._robber = None
        # BFS 2-coloring: in bipartite graphs, two active cops can only ever
        # stand on adjacent vertices if their current colors differ, so pair
        # partners must be drawn from the opposite class.
        self.color: dict[Vertex, int] = {}
        for comp_start in g.vertices():
            if comp_start in self.color:
                continue
            self.color[comp_start] = 0
            stack = [comp_start]
            while stack:
                u = stack.pop()
                for w in g.neighbors(u):
                    if w not in self.color:
                        self.color[w] = 1 - self.color[u]
                        stack.append(w)

    # -- plumbing (mirrors the string driver at a smaller scale) -------------

    def _free_slots(self):
        return [s for s in range(self.num_cops) if self.slot_role[s][0] == "idle"]

    def _assign_team(self, team, slots: dict):
        self.teams.append(team)
        self.team_slots[id(team)] = dict(slots)
        for role, slot in slots.items():
            self.slot_role[slot] = ("team", team, role)

    def _release_team(self, team):
        slots = self.team_slots.pop(id(team), {})
        self.teams = [t for t in self.teams if t is not team]
        for slot in slots.values():
            self.slot_role[slot] = ("idle",)

    def _transit(self, slot, target):
        path = shortest_path(self.graph, self._positions[slot], target)
        if path is None:
            raise PlanarDriverError(f"no transit route to {target!r}")
        self.slot_role[slot] = ("transit", list(path[1:]), target)

    def _hold(self, slot, vertex):
        """Flexible cops sit; active cops toggle between the vertex and its
        smallest neighbor, capturing anything that steps on."""
        if self.active:
            perch = min(self.graph.neighbors(vertex), key=vkey)
            self.slot_role[slot] = ("toggle", vertex, perch, False)
        else:
            self.slot_role[slot] = ("hold", vertex)

    def _guard_team(self, path, territory):
        if self.style == "classical3":
            team = FormationGuard(self.graph, path, (0,))
        elif len(path) == 0:
            raise PlanarDriverError("empty path")
        else:
            team = ActivePairGuard(self.graph, path)
        return team

    def _log(self, tag, territory, detail=""):
        self.step_log.append(PlanarStep(tag, tuple(sorted(territory, key=vkey)), detail))
        size = len(territory)
        if self.prev_territory_size is not None and size >= self.prev_territory_size:
            raise PlanarDriverError(
                f"territory failed to shrink: {size} >= {self.prev_territory_size}"
            )
        self.prev_territory_size = size

    # -- engine interface ------------------------------------------------------

    def __call__(self, g: Graph, s: GameState, cfg: GameConfig) -> Move:
        if cfg.num_cops != self.num_cops or cfg.cops_active != self.active or cfg.robber_active:
            raise ValueError(
                f"{self.style} driver plays {self.num_cops} "
                f"{'active' if self.active else 'flexible'} cops vs a flexible robber"
            )
        if s.phase is Phase.COP_PLACEMENT:
            return self._place()
        self._positions = tuple(s.cops)
        self._robber = s.robber
        if len(self.step_log) > self.max_steps:
            raise PlanarDriverError("step budget exceeded")
        for slot, cur in enumerate(s.cops):
            if cur == s.robber or g.has_edge(cur, s.robber):
                dests = list(s.cops)
                dests[slot] = s.robber
                if self.active:
                    # active teammates must still move; use their planned steps
                    planned = self._moves()
                    planned[slot] = s.robber
                    return Move.cops(planned)
                return Move.cops(dests)
        self._advance_program()
        return Move.cops(self._moves())

    def _place(self) -> Move:
        u, v = _diameter_pair(self.graph)
        if u == v:
            # single-vertex graph: place everyone there (placement captures)
            return Move.cops([u] * self.num_cops)
        path = shortest_path(self.graph, u, v)
        team = self._guard_team(path, None)
        roles = sorted(team.positions())
        slots = {role: i for i, role in enumerate(roles)}
        self._assign_team(team, slots)
        self._push(
            ("wait-settled", team),
            ("call", lambda: self._enter_s1(path, team)),
        )
        initial = team.positions()
        dests = [initial[r] for r in roles]
        # spare cops alternate between the path's first two vertices so both
        # parity classes stay available for future pair guards
        spare_cycle = [path[0], path[1]] if len(path) > 1 else [path[0]]
        i = 0
        while len(dests) < self.num_cops:
            dests.append(spare_cycle[i % len(spare_cycle)])
            i += 1
        return Move.cops(dests)

    def _enter_s1(self, path, team):
        self.guards = [(tuple(path), team, "pair")]
        comp = self._robber_component(set(path))
        self._log("s1", comp, "initial guarded path")
        self._push(("call", self._reduce))

    # -- per-turn mechanics ------------------------------------------------------

    def _push(self, *ops):
        self.program.extend(ops)

    def _advance_program(self):
        guard = 0
        while self.program:
            op = self.program[0]
            if op[0] == "call":
                self.program.pop(0)
                op[1]()
            elif op[0] == "wait-transits":
                if all(self.slot_role[s][0] != "transit" for s in range(self.num_cops)):
                    self.program.pop(0)
                else:
                    break
            elif op[0] == "wait-at":
                if all(self._positions[slot] == v for slot, v in op[1]):
                    self.program.pop(0)
                else:
                    break
            elif op[0] == "wait-pair":
                slot, wpath, wsolo, stuck = op[1], op[2], op[3], op[4]
                cur = self._positions[slot]
                sp = wsolo.positions()[0]
                if (
                    cur in wpath
                    and sp in wpath
                    and abs(wpath.index(cur) - wpath.index(sp)) == 1
                ):
                    self.program.pop(0)
                    continue
                if self.slot_role[slot][0] == "toggle":
                    # back from a parity detour: resume walking the path
                    self.slot_role[slot] = ("pathwalk", wpath, wsolo)
                if cur in wpath and sp in wpath:
                    gap = abs(wpath.index(cur) - wpath.index(sp))
                    stuck[0] = stuck[0] + 1 if gap % 2 == 0 else 0
                    if stuck[0] > 12 and self.slot_role[slot][0] == "pathwalk":
                        detour = _odd_closed_walk(self.graph, cur)
                        if detour is not None:
                            self.slot_role[slot] = ("transit", detour, cur)
                            stuck[0] = -20  # give the detour time to run
                break
            elif op[0] == "wait-settled":
                if op[1].settled:
                    self.program.pop(0)
                else:
                    break
            elif op[0] == "chase":
                break
            else:
                raise PlanarDriverError(f"unknown op {op!r}")
            guard += 1
            if guard > 10_000:
                raise PlanarDriverError("program loop did not converge")

    def _moves(self) -> list:
        dests = list(self._positions)
        for team in self.teams:
            desired = team.step(self._robber)
            for role, vertex in desired.items():
                slot = self.team_slots[id(team)].get(role)
                if slot is not None:
                    dests[slot] = vertex
        for slot in range(self.num_cops):
            role = self.slot_role[slot]
            if role[0] == "transit":
                queue = role[1]
                if queue:
                    dests[slot] = queue.pop(0)
                    if not queue and not self.active:
                        self.slot_role[slot] = ("hold", role[2])
                elif self.active:
                    # arrived last turn: step onto the perch and keep toggling
                    perch = min(self.graph.neighbors(role[2]), key=vkey)
                    dests[slot] = perch
                    self.slot_role[slot] = ("toggle", role[2], perch, True)
                else:
                    self.slot_role[slot] = ("hold", role[2])
            elif role[0] == "toggle":
                _, vertex, perch, on_perch = role
                dests[slot] = vertex if on_perch else perch
                self.slot_role[slot] = ("toggle", vertex, perch, not on_perch)
            elif role[0] == "pathwalk":
                _, wpath, wsolo = role
                cur = self._positions[slot]
                if cur not in wpath:
                    hop = min(
                        (v for v in wpath if self.graph.has_edge(cur, v)),
                        key=vkey,
                        default=None,
                    )
                    if hop is None:
                        route = shortest_path(self.graph, cur, wpath[0])
                        hop = route[1]
                    dests[slot] = hop
                else:
                    q = wpath.index(cur)
                    sp = wsolo.positions()[0]
                    p = wpath.index(sp) if sp in wpath else 0
                    if q == p:
                        dests[slot] = wpath[q + 1] if q + 1 < len(wpath) else wpath[q - 1]
                    else:
                        dests[slot] = wpath[q + (1 if p > q else -1)]
            elif role[0] == "chase":
                path = shortest_path(self.graph, self._positions[slot], self._robber)
                if path is not None and len(path) > 1:
                    dests[slot] = path[1]
            elif role[0] == "idle" and self.active:
                # idle active cops oscillate in place to stay legal
                cur = self._positions[slot]
                dests[slot] = min(self.graph.neighbors(cur), key=vkey)
        return dests

    # -- the reduction loop --------------------------------------------------------

    def _working_graph(self, comp: set, *paths) -> Graph:
        keep = set(comp)
        for p in paths:
            if p:
                keep.update(p)
        return self.graph.subgraph(keep)

    def _robber_component(self, boundary: set) -> set:
        if self._robber in boundary:
            return {self._robber}
        return self.graph.without(boundary).component_of(self._robber)

    def _all_paths(self) -> set:
        out = set()
        for path, _, _ in self.guards:
            out.update(path)
        return out

    def _borders(self, comp: set, path) -> bool:
        ps = set(path)
        return any(self.graph.has_edge(w, p) for w in comp for p in ps)

    def _free_nonbordering(self, comp: set, keep=None) -> None:
        """Release every standing solo guard whose unique vertices (not shared
        with other standing paths) the component cannot touch; the robber
        cannot exploit their absence."""
        changed = True
        while changed:
            changed = False
            for entry in list(self.guards):
                path, team, kind = entry
                if kind == "pair" or (keep is not None and team is keep):
                    continue
                others = set()
                for p2, t2, _ in self.guards:
                    if t2 is not team:
                        others.update(p2)
                unique = set(path) - others
                if not any(
                    self.graph.has_edge(w, p) for w in comp for p in unique
                ):
                    self._release_team(team)
                    self.guards.remove(entry)
                    changed = True
                    break

    def _primary(self):
        """The isometric boundary guard the loop extends: the unique pair."""
        pairs = [e for e in self.guards if e[2] == "pair"]
        if len(pairs) != 1:
            raise PlanarDriverError(f"expected exactly one pair guard, have {len(pairs)}")
        return pairs[0]

    def _reduce(self):
        comp = self._robber_component(self._all_paths())
        if comp == {self._robber} or not comp:
            self._endgame()
            return
        self._free_nonbordering(comp)
        path, team, _ = self._primary()
        others = [e for e in self.guards if e[1] is not team]
        pa = others[0][0] if others else None
        new_path = (
            self._extension_path(comp, path, pa) if len(path) > 1 else None
        )
        if new_path is None:
            self._cut_branch(comp)
            return
        if not self._free_slots():
            raise PlanarDriverError(
                "budget violated: no free cop to establish the extension"
            )
        solo = (
            ActiveConvexGuard(self.graph, new_path)
            if self.active
            else FormationGuard(self.graph, new_path, (0,))
        )
        free = self._free_slots()
        start = solo.positions()[0]
        self._transit(free[0], start)

        def engage_solo():
            self._assign_team(solo, {0: free[0]})
            self.guards.append((tuple(new_path), solo, "solo"))
            self._push(
                ("wait-settled", solo),
                ("call", lambda: self._after_extension(path, team, new_path, solo)),
            )

        self._push(
            ("wait-transits",),
            ("wait-at", [(free[0], start)]),
            ("call", engage_solo),
        )

    def _after_extension(self, path, team, new_path, solo):
        """The extension's solo stands.  For the classical driver this already
        seals the path; the active driver upgrades it to the pair by freeing a
        cop through a checked seamless downgrade of the old pair."""
        if not self.active:
            # a single flexible cop fully seals an isometric path: the new
            # guard becomes the primary and the old one is demoted
            for i, entry in enumerate(self.guards):
                if entry[1] is solo:
                    self.guards[i] = (tuple(new_path), solo, "pair")
                elif entry[2] == "pair":
                    self.guards[i] = (entry[0], entry[1], "solo")
            self._commit(new_path)
            return
        comp = self._robber_component(self._all_paths())
        self._free_nonbordering(comp)
        if not self._free_slots():
            downgraded = self._checked_downgrade(path, team, new_path, comp)
            if downgraded is None:
                raise PlanarDriverError(
                    "budget violated: old pair cannot downgrade and nothing is freeable"
                )

        def paired(pair_team):
            for i, entry in enumerate(self.guards):
                if entry[1] is solo:
                    self.guards[i] = (tuple(new_path), pair_team, "pair")
                    break
            # the old pair (or its downgrade) may now be a second pair; demote
            # bookkeeping so exactly one pair remains
            for i, entry in enumerate(self.guards):
                if entry[1] is not pair_team and entry[2] == "pair":
                    self.guards[i] = (entry[0], entry[1], "solo")
            self._commit(new_path)

        self._pair_up(solo, new_path, paired)

    def _checked_downgrade(self, path, team, new_path, comp):
        """Seamlessly drop the old pair to the Lemma-2 single-cop guard when
        every convexity violator enters on the shared suffix (covered by the
        new guard); returns the solo or None."""
        if team not in [e[1] for e in self.guards]:
            return None
        t = set(comp)
        d0 = self.graph.distances(path[0])
        new_set = set(new_path)
        for i in range(1, len(path)):
            for x in self.graph.neighbors(path[i]):
                if x in t and d0.get(x) == i - 1 and path[i] not in new_set:
                    return None  # a violator enters off the shared suffix
        if not isinstance(team, ActivePairGuard):
            return None
        pos_map = team.positions()
        sheriff_vertex = path[team._sheriff_index()]
        sheriff_role = (
            team.SLOT_A if pos_map[team.SLOT_A] == sheriff_vertex else team.SLOT_B
        )
        slots = dict(self.team_slots[id(team)])
        keep_slot = slots[sheriff_role]
        self._release_team(team)
        solo = ActiveConvexGuard(self.graph, path)
        solo.pos = path.index(sheriff_vertex)
        solo.settled = True
        solo.prev_level = solo.level_of(self._robber)
        self._assign_team(solo, {0: keep_slot})
        for i, entry in enumerate(self.guards):
            if entry[1] is team:
                self.guards[i] = (entry[0], solo, "solo")
                break
        return solo

    def _commit(self, new_path):
        comp = self._robber_component(self._all_paths())
        self._free_nonbordering(comp)
        if self.active:
            # demoted pair guards still hold two cops: shed one wherever the
            # checked downgrade applies
            primary_path = self._primary()[0]
            for path2, team2, kind2 in list(self.guards):
                if kind2 == "solo" and isinstance(team2, ActivePairGuard):
                    self._checked_downgrade(path2, team2, primary_path, comp)
        kinds = [e[2] for e in self.guards]
        tag = "s1" if kinds.count("solo") == 0 else "s2"
        self._log(tag, comp, "extension committed")
        self._push(("call", self._reduce))

    def _pair_up(self, solo, path, done):
        """Grow the establishing solo guard into the full pair: an idle cop
        chases the vertex adjacent to the (moving) solo cop on the path, then
        both re-form as the pair guard with the solo as sheriff.  Classical
        guards stay single.  Calls done(team) when the pair stands."""
        slots = dict(self.team_slots[id(solo)])
        if not self.active:
            pos = solo.positions()[0]
            self._release_team(solo)
            team = FormationGuard(self.graph, path, (0,))
            team.idx[0] = path.index(pos) if pos in path else 0
            self._assign_team(team, {0: slots[0]})
            done(team)
            return
        free = self._free_slots()
        if not free:
            raise PlanarDriverError("budget violated: no partner for the pair guard")
        # pick a partner from the opposite parity class (mandatory in
        # bipartite graphs; a sound preference elsewhere)
        solo_color = self.color.get(solo.positions()[0], 0)
        opposite = [
            s for s in free if self.color.get(self._positions[s], 0) != solo_color
        ]
        partner_slot = (opposite or free)[0]

        def engage():
            cur = solo.positions()[0]
            p = path.index(cur)
            partner_pos = self._positions[partner_slot]
            q = path.index(partner_pos)
            lo = min(p, q)
            self._release_team(solo)
            team = ActivePairGuard(self.graph, path)
            team.lo = lo
            team.sheriff_hi = p == lo + 1
            team.slot_a_hi = p == lo + 1
            self._assign_team(team, {team.SLOT_A: slots[0], team.SLOT_B: partner_slot})
            done(team)

        def start_walk():
            # march along the path toward the solo; the solo's toggle offers
            # two alternating meeting spots, and a stuck even gap is broken by
            # an odd-cycle detour (non-bipartite graphs only need it rarely)
            self.slot_role[partner_slot] = ("pathwalk", path, solo)
            self._push(("wait-pair", partner_slot, path, solo, [0]), ("call", engage))

        entry = min(
            path,
            key=lambda v: (
                self.graph.distance(self._positions[partner_slot], v),
                path.index(v),
            ),
        )
        self._transit(partner_slot, entry)
        self._push(("wait-transits",), ("call", start_walk))

    # -- helpers -------------------------------------------------------------------

    def _extension_path(self, comp: set, pb, pa):
        """Extension mirroring the string construction: least violator level,
        smallest violator, shortest prefix to it, then the old suffix.

        Everything is measured in the full game graph (the guard metric): the
        path may route through regions the robber cannot reach.  Returns None
        when no endpoint path passes through the territory: the component
        hangs off a single attachment vertex and the cut branch applies.
        """
        g = self.graph
        t = set(comp)
        found = _violator_level(g, t, pb)
        if found is not None:
            i, xs = found
            for v in xs:
                pq = shortest_path(g, pb[0], v)
                if pq is None or len(pq) - 1 != i - 1:
                    continue
                cand = tuple(pq) + tuple(pb[i:])
                if len(set(cand)) != len(cand):
                    continue
                if is_isometric_path_relative(g, t, cand):
                    return cand
        avoid = [pb] + ([pa] if pa else [])
        cands = list(alternative_paths(g, pb[0], pb[-1], avoid))
        # also the best path whose interior runs entirely inside the territory
        inner = g.subgraph(t | {pb[0], pb[-1]})
        if pb[0] in inner and pb[-1] in inner:
            interior = shortest_path(inner, pb[0], pb[-1])
            if interior is not None and len(interior) > 1:
                cands.append(tuple(interior))
        for cand in cands:
            # a path missing the territory entirely cannot shrink it
            if not any(v in t for v in cand):
                continue
            if is_isometric_path_relative(g, t, cand):
                return tuple(cand)
        # guaranteed fallback: the overall shortest endpoint path meeting the
        # territory is relative-isometric by definition
        du, dv = g.distances(pb[0]), g.distances(pb[-1])
        best = None
        for x in sorted(
            t, key=lambda w: (du.get(w, len(t) + g.n) + dv.get(w, len(t) + g.n), vkey(w))
        ):
            bound = du.get(x, None)
            bound = None if bound is None else bound + dv.get(x, 10 * g.n)
            if bound is None:
                continue
            if best is not None and bound >= best[0]:
                break
            ln, p = min_path_through_with_path(g, pb[0], pb[-1], x)
            if p is not None and (best is None or ln < best[0]):
                best = (ln, p)
        if best is not None:
            return tuple(best[1])
        return None

    def _cut_branch(self, comp):
        """Unique attachment vertex: hold it, rebuild inside the component."""
        paths = self._all_paths()
        attach = sorted(
            {p for p in paths if any(self.graph.has_edge(p, w) for w in comp)},
            key=vkey,
        )
        if len(attach) != 1:
            raise PlanarDriverError(
                f"no unique attachment vertex: {attach!r}"
            )
        x = attach[0]
        free = self._free_slots()
        if not free:
            raise PlanarDriverError("budget violated: no cop to hold the cut vertex")
        hold_slot = free[0]
        self._transit(hold_slot, x)

        def after_hold():
            if self.slot_role[hold_slot][0] == "transit":
                raise PlanarDriverError("hold transit incomplete")
            self._hold(hold_slot, x)
            for _, team, _ in list(self.guards):
                self._release_team(team)
            self.guards = []
            sub = self.graph.subgraph(comp)
            if len(comp) == 1:
                extra = self._free_slots()
                slot = extra[0] if extra else hold_slot
                self.slot_role[slot] = ("chase",)
                self._log("s1", comp, "robber cornered")
                self._push(("chase",))
                return
            u, v = _diameter_pair(sub)
            # the guard metric is the full graph: a global geodesic is always
            # isometric relative to the component
            path = shortest_path(self.graph, u, v) if u != v else (u,)
            need = 2 if self.active and len(path) > 1 else 1
            if len(self._free_slots()) < need:
                raise PlanarDriverError("budget violated rebuilding inside the component")
            self._establish_inside(path, hold_slot, x, comp)

        self._push(("wait-transits",), ("call", after_hold))

    def _establish_inside(self, path, hold_slot, x, comp):
        solo = (
            ActiveConvexGuard(self.graph, path)
            if self.active
            else FormationGuard(self.graph, path, (0,))
        )
        free = self._free_slots()
        start = solo.positions()[0]
        self._transit(free[0], start)

        def engage_solo():
            self._assign_team(solo, {0: free[0]})
            self.guards.append((tuple(path), solo, "solo"))

            def to_pair():
                if not self.active or len(path) == 1:
                    self._after_cut(path, solo, hold_slot, x, comp)
                    return

                def paired(team):
                    for i, entry in enumerate(self.guards):
                        if entry[1] is solo:
                            self.guards[i] = (tuple(path), team, "pair")
                            break
                    self._after_cut(path, team, hold_slot, x, comp)

                self._pair_up(solo, path, paired)

            self._push(("wait-settled", solo), ("call", to_pair))

        self._push(
            ("wait-transits",),
            ("wait-at", [(free[0], start)]),
            ("call", engage_solo),
        )

    def _after_cut(self, path, team, hold_slot, x, comp):
        if len(path) == 1 and self.guards and self.guards[-1][1] is team:
            self.guards[-1] = (tuple(path), team, "pair")  # a toggling solo seals it
        sub_comp = self._robber_component(self._all_paths() | {x})
        sub_comp &= comp
        if any(self.graph.has_edge(x, w) for w in sub_comp):
            pass  # keep holding the attachment
        else:
            self.slot_role[hold_slot] = ("idle",)
        self._log("s1", sub_comp, "rebuilt inside the component")
        self._push(("call", self._reduce))

    def _endgame(self):
        free = self._free_slots()
        slot = free[0] if free else 0
        self.slot_role[slot] = ("chase",)
        self._log("s1", {self._robber}, "endgame chase")
        self._push(("chase",))


def capture_planar_active(g: Graph, robber_strategy, max_rounds=None):
    """Theorem-level entry point: 4 active cops capture a flexible robber."""
    from .engine import playout

    driver = PlanarCaptureDriver(g, "active4")
    cfg = GameConfig(num_cops=4, cops_active=True)
    t = playout(g, cfg, driver, robber_strategy, max_rounds=max_rounds or 4000)
    return driver, t


def capture_planar_classical(g: Graph, robber_strategy, max_rounds=None):
    """Classical three-flexible-cop planar loop."""
    from .engine import playout

    driver = PlanarCaptureDriver(g, "classical3")
    cfg = GameConfig(num_cops=3)
    t = playout(g, cfg, driver, robber_strategy, max_rounds=max_rounds or 4000)
    return driver, t


def c_upper_bound_report(g: Graph, robber_factory):
    """Run both planar drivers to capture; returns their transcripts."""
    d3, t3 = capture_planar_classical(g, robber_factory())
    d4, t4 = capture_planar_active(g, robber_factory())
    return {"classical_3cop": (d3, t3), "active_4cop": (d4, t4)}
