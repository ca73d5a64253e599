"""Exact integer geometry for axis-parallel polylines.

Everything is integer arithmetic; no epsilon comparisons anywhere.  Points on
a polyline are addressed by their L1 arc parameter from the start, which is an
integer for every crossing point in normal form.  Parity tests run in doubled
coordinates so that segment midpoints stay integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Point = tuple[int, int]


def _is_axis_parallel(p: Point, q: Point) -> bool:
    return (p[0] == q[0]) != (p[1] == q[1])


class Polyline:
    """Simple axis-parallel polyline with integer vertices.

    A single-point polyline is a degenerate string (produced by clipping).
    """

    __slots__ = ("points", "_prefix")

    def __init__(self, points: Sequence[Point]):
        pts = [tuple(p) for p in points]
        if not pts:
            raise ValueError("empty polyline")
        clean = [pts[0]]
        for p in pts[1:]:
            if p != clean[-1]:
                clean.append(p)
        self.points: tuple[Point, ...] = tuple(clean)
        for a, b in zip(self.points, self.points[1:]):
            if not _is_axis_parallel(a, b):
                raise ValueError(f"edge {a}-{b} is not axis-parallel")
        acc = [0]
        for a, b in zip(self.points, self.points[1:]):
            acc.append(acc[-1] + abs(b[0] - a[0]) + abs(b[1] - a[1]))
        self._prefix = tuple(acc)

    @property
    def is_point(self) -> bool:
        return len(self.points) == 1

    @property
    def total_len(self) -> int:
        return self._prefix[-1]

    def edges(self) -> list[tuple[Point, Point]]:
        return list(zip(self.points, self.points[1:]))

    def start(self) -> Point:
        return self.points[0]

    def end(self) -> Point:
        return self.points[-1]

    # -- parameter addressing ------------------------------------------------

    def param_of(self, p: Point) -> int | None:
        """Arc parameter of a point on the polyline, or None if absent."""
        if self.is_point:
            return 0 if tuple(p) == self.points[0] else None
        x, y = p
        for i, (a, b) in enumerate(self.edges()):
            if a[1] == b[1] == y and min(a[0], b[0]) <= x <= max(a[0], b[0]):
                return self._prefix[i] + abs(x - a[0])
            if a[0] == b[0] == x and min(a[1], b[1]) <= y <= max(a[1], b[1]):
                return self._prefix[i] + abs(y - a[1])
        return None

    def point_at(self, t: int) -> Point:
        if not 0 <= t <= self.total_len:
            raise ValueError("parameter out of range")
        if self.is_point:
            return self.points[0]
        for i, (a, b) in enumerate(self.edges()):
            if t <= self._prefix[i + 1]:
                off = t - self._prefix[i]
                dx = (b[0] > a[0]) - (b[0] < a[0])
                dy = (b[1] > a[1]) - (b[1] < a[1])
                return (a[0] + dx * off, a[1] + dy * off)
        return self.points[-1]

    def sub(self, t0: int, t1: int) -> list[Point]:
        """Directed geometry between two parameters (t0 > t1 reverses)."""
        if t0 == t1:
            return [self.point_at(t0)]
        rev = t0 > t1
        lo, hi = (t1, t0) if rev else (t0, t1)
        pts = [self.point_at(lo)]
        for i, p in enumerate(self.points):
            t = self._prefix[i]
            if lo < t < hi:
                pts.append(p)
        pts.append(self.point_at(hi))
        out = [pts[0]]
        for p in pts[1:]:
            if p != out[-1]:
                out.append(p)
        if rev:
            out.reverse()
        return out

    def contains_point(self, p: Point) -> bool:
        return self.param_of(p) is not None

    def bbox(self) -> tuple[int, int, int, int]:
        xs = [p[0] for p in self.points]
        ys = [p[1] for p in self.points]
        return (min(xs), min(ys), max(xs), max(ys))

    def self_intersects(self) -> bool:
        """True if any two non-consecutive edges meet, or consecutive edges
        overlap beyond their shared bend."""
        es = self.edges()
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                pts = edge_intersection(es[i], es[j])
                if pts == "overlap":
                    return True
                if not pts:
                    continue
                if j == i + 1:
                    if len(pts) > 1 or pts[0] != self.points[i + 1]:
                        return True
                else:
                    return True
        return False

    def __repr__(self):
        return f"Polyline({list(self.points)})"


def edge_intersection(e1: tuple[Point, Point], e2: tuple[Point, Point]):
    """Intersection of two axis-parallel integer edges.

    Returns "overlap" for a shared collinear interval, else the list of
    shared points (0 or 1 entries; endpoint touches included).
    """
    (a1, b1), (a2, b2) = e1, e2
    h1 = a1[1] == b1[1]
    h2 = a2[1] == b2[1]
    if h1 and h2:
        if a1[1] != a2[1]:
            return []
        lo = max(min(a1[0], b1[0]), min(a2[0], b2[0]))
        hi = min(max(a1[0], b1[0]), max(a2[0], b2[0]))
        if lo > hi:
            return []
        if lo == hi:
            return [(lo, a1[1])]
        return "overlap"
    if not h1 and not h2:
        if a1[0] != a2[0]:
            return []
        lo = max(min(a1[1], b1[1]), min(a2[1], b2[1]))
        hi = min(max(a1[1], b1[1]), max(a2[1], b2[1]))
        if lo > hi:
            return []
        if lo == hi:
            return [(a1[0], lo)]
        return "overlap"
    if h2:  # make e1 horizontal, e2 vertical
        (a1, b1), (a2, b2) = (a2, b2), (a1, b1)
    hy = a1[1]
    vx = a2[0]
    if min(a1[0], b1[0]) <= vx <= max(a1[0], b1[0]) and min(a2[1], b2[1]) <= hy <= max(
        a2[1], b2[1]
    ):
        return [(vx, hy)]
    return []


def polyline_intersections(p1: Polyline, p2: Polyline):
    """All shared points of two polylines ("overlap" wins if any interval is
    shared).  Point-degenerate polylines are handled."""
    if p1.is_point:
        return [p1.points[0]] if p2.contains_point(p1.points[0]) else []
    if p2.is_point:
        return [p2.points[0]] if p1.contains_point(p2.points[0]) else []
    pts: set[Point] = set()
    for e1 in p1.edges():
        for e2 in p2.edges():
            got = edge_intersection(e1, e2)
            if got == "overlap":
                return "overlap"
            pts.update(got)
    return sorted(pts)


# -- even-odd parity against closed walks --------------------------------------


def walk_edges_2x(walk: Sequence[Point], closed: bool = True):
    """Edges of a walk given in doubled coordinates."""
    pts = list(walk)
    if closed and pts[0] != pts[-1]:
        pts.append(pts[0])
    return [(a, b) for a, b in zip(pts, pts[1:]) if a != b]


def point_on_walk_2x(q: Point, walk_2x: Sequence[Point], closed: bool = True) -> bool:
    for a, b in walk_edges_2x(walk_2x, closed):
        if a[1] == b[1] == q[1] and min(a[0], b[0]) <= q[0] <= max(a[0], b[0]):
            return True
        if a[0] == b[0] == q[0] and min(a[1], b[1]) <= q[1] <= max(a[1], b[1]):
            return True
    return False


def parity_inside_2x(q: Point, walk_2x: Sequence[Point], closed: bool = True) -> bool:
    """Even-odd containment of q in the closed walk (both in 2x coordinates).

    Uses the standard half-open rule: a vertical edge counts iff exactly one
    endpoint is strictly above the horizontal ray through q and the edge lies
    strictly to the left of q.  Points on the walk must be screened first.
    """
    crossings = 0
    qx, qy = q
    for a, b in walk_edges_2x(walk_2x, closed):
        if a[0] != b[0]:
            continue  # horizontal edges never satisfy the half-open rule
        if (a[1] > qy) != (b[1] > qy) and a[0] < qx:
            crossings += 1
    return crossings % 2 == 1


def walk_has_overlapping_edges_2x(walk_2x: Sequence[Point], closed: bool = True) -> bool:
    """Detect collinear edge pairs sharing more than a point (these break
    even-odd parity and mark a degenerate region)."""
    es = walk_edges_2x(walk_2x, closed)
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            if edge_intersection(es[i], es[j]) == "overlap":
                return True
    return False


def double(points: Iterable[Point]) -> list[Point]:
    return [(2 * x, 2 * y) for x, y in points]
