"""Exact game solver: backward induction over the full position space.

Positions are (sorted cop multiset, robber vertex, side to move).  Values are
optimal capture distances counted in cop moves; positions absent from the
table are robber wins.  Placement phases are folded in: the cop player picks
the best placement multiset, the robber answers with the worst vertex.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field

from .graphs import Graph, Vertex, vkey

COP = 0
ROB = 1


class SolverBudgetError(RuntimeError):
    def __init__(self, positions: int, budget: int):
        super().__init__(
            f"state space of {positions} positions exceeds the budget of {budget}"
        )
        self.positions = positions
        self.budget = budget


DEFAULT_BUDGET = 50_000_000


@dataclass
class SolverResult:
    graph: Graph
    k: int
    cops_active: bool
    robber_active: bool
    cop_wins: bool
    values: dict  # (cops, robber, side) -> int capture distance; absent = robber win
    best_placement: tuple | None

    def value(self, cops, robber, side) -> float:
        key = (tuple(sorted(cops, key=vkey)), robber, side)
        return self.values.get(key, math.inf)


def _position_count(n: int, k: int) -> int:
    return math.comb(n + k - 1, k) * n * 2


def cop_wins(
    g: Graph,
    k: int,
    cops_active: bool = False,
    robber_active: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> SolverResult:
    """Decide whether k cops win under the given variant, with the full
    optimal-capture-time table."""
    if not g.is_connected():
        raise ValueError("solver requires a connected graph")
    if k < 1:
        raise ValueError("k must be positive")
    n = g.n
    npos = _position_count(n, k)
    if npos > budget:
        raise SolverBudgetError(npos, budget)
    verts = list(g.vertices())

    if n == 1:
        v = verts[0]
        cops = (v,) * k
        values = {(cops, v, COP): 0, (cops, v, ROB): 0}
        return SolverResult(g, k, cops_active, robber_active, True, values, cops)

    def cop_piece_opts(c):
        return g.neighbors(c) if cops_active else g.closed_neighbors(c)

    def robber_opts(r):
        return g.neighbors(r) if robber_active else g.closed_neighbors(r)

    multisets = [
        tuple(sorted(p, key=vkey))
        for p in itertools.combinations_with_replacement(verts, k)
    ]
    # Successor multisets per cop multiset; by symmetry of the move relation
    # these are also the predecessor multisets.
    succ: dict[tuple, tuple] = {}
    for ms in multisets:
        outs = set()
        for dests in itertools.product(*(cop_piece_opts(c) for c in ms)):
            outs.add(tuple(sorted(dests, key=vkey)))
        succ[ms] = tuple(outs)

    values: dict = {}
    heap: list = []

    def settle(key, val):
        if key not in values:
            values[key] = val
            heapq.heappush(heap, (val, _poskey(key)))
            lookup[_poskey(key)] = key

    _poskey = lambda key: (key[2], tuple(vkey(c) for c in key[0]), vkey(key[1]))
    lookup: dict = {}

    # Robber-side positions need all successors settled; count them down.
    pending: dict = {}
    for ms in multisets:
        for r in verts:
            if r in ms:
                settle((ms, r, COP), 0)
                settle((ms, r, ROB), 0)
            else:
                pending[(ms, r, ROB)] = len(robber_opts(r))

    while heap:
        val, pk = heapq.heappop(heap)
        key = lookup[pk]
        if values[key] != val:
            continue
        ms, r, side = key
        if side == COP:
            # Predecessor robber-side positions (ms, r_prev, ROB) lose an escape.
            for r_prev in robber_opts(r):
                pkey = (ms, r_prev, ROB)
                if pkey in values:
                    continue
                left = pending.get(pkey)
                if left is None:
                    continue
                pending[pkey] = left - 1
                if pending[pkey] == 0:
                    settle(pkey, val)  # max over successors = last settled
        else:
            # Predecessor cop-side positions (ms_prev, r, COP) can reach here.
            for ms_prev in succ[ms]:
                pkey = (ms_prev, r, COP)
                if pkey not in values:
                    settle(pkey, val + 1)

    best_placement = None
    best_worst = math.inf
    for ms in multisets:
        worst = 0
        ok = True
        for r in verts:
            v = values.get((ms, r, COP))
            if v is None:
                ok = False
                break
            worst = max(worst, v)
        if ok and worst < best_worst:
            best_worst = worst
            best_placement = ms
    return SolverResult(
        g, k, cops_active, robber_active, best_placement is not None, values, best_placement
    )


def cop_number(
    g: Graph,
    cops_active: bool = False,
    robber_active: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Smallest k for which k cops win under the variant."""
    k = 1
    while True:
        res = cop_wins(g, k, cops_active, robber_active, budget)
        if res.cop_wins:
            return k
        k += 1


def best_robber_placement(res: SolverResult, cops) -> Vertex:
    ms = tuple(sorted(cops, key=vkey))
    return max(
        res.graph.vertices(),
        key=lambda r: (res.values.get((ms, r, COP), math.inf), tuple(reversed(vkey(r)))),
    )


def best_robber_move(res: SolverResult, cops, robber) -> Vertex:
    """Move maximizing the capture distance; infinity (robber win) preferred."""
    g = res.graph
    ms = tuple(sorted(cops, key=vkey))
    opts = g.neighbors(robber) if res.robber_active else g.closed_neighbors(robber)
    return max(
        opts,
        key=lambda r2: (
            res.values.get((ms, r2, COP), math.inf),
            r2 == robber,
            tuple(reversed(vkey(r2))),
        ),
    )


def best_cop_move(res: SolverResult, cops, robber) -> tuple[Vertex, ...]:
    """A per-slot destination tuple realizing the optimal capture distance."""
    g = res.graph
    best_ms = None
    best_val = math.inf
    opts = [
        (g.neighbors(c) if res.cops_active else g.closed_neighbors(c)) for c in cops
    ]
    for dests in itertools.product(*opts):
        ms = tuple(sorted(dests, key=vkey))
        v = 0 if robber in ms else res.values.get((ms, robber, ROB), math.inf)
        cand = (v, tuple(vkey(x) for x in dests))
        if best_ms is None or cand < (best_val, tuple(vkey(x) for x in best_ms)):
            best_val = v
            best_ms = dests
    return tuple(best_ms)


def export_table(res: SolverResult, fh) -> None:
    """Text dump of the value table, keyed by canonical position."""
    from .graphs import _format_id

    fh.write(
        f"# k={res.k} cops_active={int(res.cops_active)} "
        f"robber_active={int(res.robber_active)} cop_wins={int(res.cop_wins)}\n"
    )
    for (ms, r, side), val in sorted(
        res.values.items(),
        key=lambda kv: (tuple(vkey(c) for c in kv[0][0]), vkey(kv[0][1]), kv[0][2]),
    ):
        cops_txt = ",".join(_format_id(c) for c in ms)
        fh.write(f"{cops_txt} | {_format_id(r)} | {side} | {val}\n")
