"""Deterministic fixture generators: string representations, planar graphs,
and named graphs.

String generators place axis-parallel staircases on a coarse cell grid where
every string owns private coordinate residues, so distinct strings can never
overlap collinearly, touch at endpoints, or form triple points: normal form
holds by construction and is re-validated before returning.
"""

from __future__ import annotations

import random

import networkx as nx

from .graphs import Graph
from .stringrep.geometry import Polyline
from .stringrep.model import Representation


def _from_nx(gx) -> Graph:
    return Graph(gx.nodes(), gx.edges())


# -- named graph fixtures -----------------------------------------------------

NAMED_GRAPHS = {
    "petersen": lambda: _from_nx(nx.petersen_graph()),
    "dodecahedron": lambda: _from_nx(nx.dodecahedral_graph()),
    "icosahedron": lambda: _from_nx(nx.icosahedral_graph()),
    "k4": lambda: _from_nx(nx.complete_graph(4)),
    "k5": lambda: _from_nx(nx.complete_graph(5)),
}


def named_graph(name: str) -> Graph:
    try:
        return NAMED_GRAPHS[name]()
    except KeyError:
        raise ValueError(f"unknown named graph {name!r}") from None


def path_graph(n: int) -> Graph:
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid_graph(w: int, h: int) -> Graph:
    """w x h grid with integer ids (row-major) for clean file round-trips."""
    gx = nx.grid_2d_graph(w, h)
    relabel = {(x, y): y * w + x for x, y in gx.nodes()}
    return Graph(relabel.values(), [(relabel[a], relabel[b]) for a, b in gx.edges()])


def random_planar_triangulation(n: int, seed: int) -> Graph:
    """Delaunay triangulation of seeded random integer points: planar and
    connected by construction."""
    from scipy.spatial import Delaunay

    rng = random.Random(f"planar:{seed}")
    pts = set()
    while len(pts) < n:
        pts.add((rng.randint(0, 10 * n), rng.randint(0, 10 * n)))
    pts = sorted(pts)
    tri = Delaunay(pts)
    edges = set()
    for simplex in tri.simplices:
        a, b, c = (int(x) for x in simplex)
        edges.update([(a, b), (b, c), (a, c)])
    g = Graph(range(n), edges)
    assert g.is_connected()
    return g


def random_tree(n: int, seed: int) -> Graph:
    return _from_nx(nx.random_labeled_tree(n, seed=seed))


# -- string representation generators -------------------------------------------


def _staircase(rng: random.Random, idx: int, n: int, cells: int, runs: int) -> Polyline:
    """x-monotone staircase whose horizontal rows sit at y = c*n + idx and
    vertical columns at x = c*n + idx (private residues)."""

    def X(c):
        return c * n + idx

    def Y(c):
        return c * n + idx

    cx = rng.randrange(0, max(1, cells - runs - 1))
    cy = rng.randrange(0, cells)
    pts = [(X(cx), Y(cy))]
    for _ in range(runs):
        cx2 = cx + rng.randint(1, 2)
        if cx2 >= cells:
            break
        pts.append((X(cx2), Y(cy)))
        cy2 = cy
        while cy2 == cy:
            cy2 = max(0, min(cells - 1, cy + rng.randint(-3, 3)))
        pts.append((X(cx2), Y(cy2)))
        cx, cy = cx2, cy2
    if len(pts) == 1:
        pts.append((X(cx + 1), Y(cy)))
    return Polyline(pts)


def random_string_rep(n: int, seed: int, max_attempts: int = 200) -> Representation:
    """Connected normal-form representation of n random staircase strings."""
    if n == 1:
        return Representation({0: Polyline([(0, 0), (2, 0)])})
    cells = max(5, int(round(1.7 * n**0.5)) + 2)
    for attempt in range(max_attempts):
        rng = random.Random(f"strings:{n}:{seed}:{attempt}")
        strings = {}
        for i in range(n):
            runs = rng.randint(2, 5)
            strings[i] = _staircase(rng, i, n, cells, runs)
        rep = Representation(strings)
        if rep.validate_normal_form():
            continue
        try:
            g = rep.graph
        except Exception:
            continue
        if g.n == n and g.is_connected():
            return rep
    raise RuntimeError(f"could not generate a connected representation (n={n}, seed={seed})")


class _Strand:
    """Bookkeeping for one gamma-shaped string on the girth-5 cell grid:
    vertical run at x=col spanning [y_a, row], horizontal run at y=row
    spanning [col, x_b] (either may be flipped by the attachment tail)."""

    def __init__(self, cell, col, row, y_a, x_b):
        self.cell = cell
        self.col = col
        self.row = row
        self.y_a = y_a
        self.x_b = x_b
        self.child_orientation = None  # 'v' or 'h' tails only, never both

    def v_span(self):
        return (min(self.y_a, self.row), max(self.y_a, self.row))

    def h_span(self):
        return (min(self.col, self.x_b), max(self.col, self.x_b))

    def polyline(self) -> Polyline:
        return Polyline([(self.col, self.y_a), (self.col, self.row), (self.x_b, self.row)])


def girth5_string_rep(n: int, seed: int, max_attempts: int = 400) -> Representation:
    """Connected normal-form representation whose graph has girth >= 5.

    The crossing pattern is a tree: each string is a gamma shape in its own
    grid cell whose tail extends into the parent's cell and crosses exactly
    one parent run.  Tails of siblings share an orientation per parent, so
    they stay pairwise disjoint; everything is re-validated before returning.
    """
    if n == 1:
        return Representation({0: Polyline([(0, 0), (2, 0)])})
    C = 2 * n + 4
    for attempt in range(max_attempts):
        rng = random.Random(f"girth5:{n}:{seed}:{attempt}")
        strands: dict[int, _Strand] = {}
        parents: dict[int, int | None] = {0: None}
        occupied = {(0, 0)}
        strands[0] = _Strand((0, 0), n + 2, 1, 2 * n + 3, 2 * n + 3)
        ok = True
        for i in range(1, n):
            placed = False
            for parent in rng.sample(sorted(strands), len(strands)):
                ps = strands[parent]
                px, py = ps.cell
                sides = [
                    ("above", (px, py + 1), "v"),
                    ("below", (px, py - 1), "v"),
                    ("left", (px - 1, py), "h"),
                    ("right", (px + 1, py), "h"),
                ]
                rng.shuffle(sides)
                for side, cell, orient in sides:
                    if cell in occupied:
                        continue
                    if ps.child_orientation not in (None, orient):
                        continue
                    hx, hy = cell
                    col = hx * C + n + 2 + i
                    row = hy * C + 1 + i
                    if orient == "v":
                        # vertical tail must cross the parent's horizontal run
                        lo, hi = ps.h_span()
                        if not lo < col < hi:
                            continue
                        tail = py * C if side == "above" else py * C + n + 1
                        cand = _Strand(cell, col, row, tail, hx * C + 2 * n + 3)
                        span = cand.v_span()
                        if not span[0] < ps.row < span[1]:
                            continue
                    else:
                        # horizontal tail must cross the parent's vertical run
                        lo, hi = ps.v_span()
                        if not lo < row < hi:
                            continue
                        tail = px * C + 2 * n + 2 if side == "left" else px * C + n + 1
                        cand = _Strand(cell, col, row, hy * C + 2 * n + 3, tail)
                        span = cand.h_span()
                        if not span[0] < ps.col < span[1]:
                            continue
                    strands[i] = cand
                    parents[i] = parent
                    occupied.add(cell)
                    ps.child_orientation = orient
                    placed = True
                    break
                if placed:
                    break
            if not placed:
                ok = False
                break
        if not ok:
            continue
        rep = Representation({i: s.polyline() for i, s in strands.items()})
        if rep.validate_normal_form():
            continue
        try:
            g = rep.graph
        except Exception:
            continue
        from .graphs import girth

        want = {(min(i, p), max(i, p)) for i, p in parents.items() if p is not None}
        have = {(min(u, v), max(u, v)) for u, v in g.edges()}
        if g.n == n and g.is_connected() and want == have and girth(g) >= 5:
            return rep
    raise RuntimeError(f"could not generate a girth-5 representation (n={n}, seed={seed})")
