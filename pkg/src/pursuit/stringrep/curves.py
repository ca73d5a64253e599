"""Curves related to paths: construction, path recovery, side classification.

A curve is a simple arc composed of directed pieces of strings, one contiguous
block per path vertex in order (the monotone block structure).  Construction
is a deterministic DP over the choice of junction crossing per consecutive
string pair, with interval-disjointness checks that keep the arc simple.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from ..graphs import Vertex
from .geometry import Point, double, edge_intersection, parity_inside_2x
from .model import Representation


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class CurvePiece:
    """Directed arc on one string from parameter t0 to t1 (t0 > t1 reverses)."""

    owner: Vertex
    t0: int
    t1: int

    def interval(self) -> tuple[int, int]:
        return (min(self.t0, self.t1), max(self.t0, self.t1))


class Curve:
    def __init__(self, rep: Representation, pieces: Sequence[CurvePiece], path, junctions):
        self.rep = rep
        self.pieces = tuple(pieces)
        self.path = tuple(path)
        self.junctions = tuple(junctions)  # crossing point per consecutive pair

    @cached_property
    def geometry(self) -> list[Point]:
        pts: list[Point] = []
        for piece in self.pieces:
            seg = self.rep.strings[piece.owner].sub(piece.t0, piece.t1)
            if pts and pts[-1] == seg[0]:
                seg = seg[1:]
            pts.extend(seg)
        return pts

    @property
    def start_point(self) -> Point:
        return self.rep.strings[self.pieces[0].owner].point_at(self.pieces[0].t0)

    @property
    def end_point(self) -> Point:
        return self.rep.strings[self.pieces[-1].owner].point_at(self.pieces[-1].t1)

    def edges(self) -> list[tuple[Point, Point]]:
        g = self.geometry
        return [(a, b) for a, b in zip(g, g[1:]) if a != b]

    def length(self) -> int:
        return sum(abs(b[0] - a[0]) + abs(b[1] - a[1]) for a, b in self.edges())

    def segment_ids(self) -> list[int]:
        """Ids of rep segments the curve covers (ends may cover partially)."""
        out = []
        for piece in self.pieces:
            lo, hi = piece.interval()
            for seg in self.rep.segments_of(piece.owner):
                if max(seg.t0, lo) < min(seg.t1, hi):
                    out.append(seg.sid)
                elif seg.t0 == seg.t1 == lo == hi:
                    out.append(seg.sid)
        return out

    def covers_point(self, p: Point) -> bool:
        return self.locate(p) is not None

    def locate(self, p: Point) -> tuple[int, int] | None:
        """(piece index, param on owner) for a point on the curve."""
        for i, piece in enumerate(self.pieces):
            lo, hi = piece.interval()
            t = self.rep.strings[piece.owner].param_of(p)
            if t is not None and lo <= t <= hi:
                return (i, t)
        return None

    def _order_key(self, loc: tuple[int, int]):
        i, t = loc
        return (i, abs(t - self.pieces[i].t0))

    def subcurve(self, a: Point, b: Point) -> "Curve":
        """Sub-curve between two points on the curve, in curve direction."""
        la, lb = self.locate(a), self.locate(b)
        if la is None or lb is None:
            raise CurveError("subcurve endpoints must lie on the curve")
        if self._order_key(la) > self._order_key(lb):
            la, lb = lb, la
        (ia, ta), (ib, tb) = la, lb
        pieces: list[CurvePiece] = []
        for i in range(ia, ib + 1):
            p = self.pieces[i]
            t0 = ta if i == ia else p.t0
            t1 = tb if i == ib else p.t1
            if t0 != t1:
                pieces.append(CurvePiece(p.owner, t0, t1))
        if not pieces:  # degenerate single-point sub-curve
            pieces = [CurvePiece(self.pieces[ia].owner, ta, tb)]
        owners: list[Vertex] = []
        for p in pieces:
            if not owners or owners[-1] != p.owner:
                owners.append(p.owner)
        sub = Curve(self.rep, pieces, tuple(owners), ())
        sub.junctions = tuple(q for q in self.junctions if sub.covers_point(q))
        return sub

    def is_simple(self) -> bool:
        """Edges meet only at consecutive shared endpoints."""
        es = self.edges()
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                got = edge_intersection(es[i], es[j])
                if got == "overlap":
                    return False
                if not got:
                    continue
                if j != i + 1 or got[0] != es[i][1]:
                    return False
        return True

    def has_overlap(self) -> bool:
        """True if any two edges share a collinear interval.  Isolated
        self-touch points are tolerated (the curve stays a sound parity
        separator); overlaps are not."""
        es = self.edges()
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                if edge_intersection(es[i], es[j]) == "overlap":
                    return True
        return False


# -- construction ----------------------------------------------------------------


def relate_curve(
    rep: Representation,
    path: Sequence[Vertex],
    start_anchor: Point | None = None,
    end_anchor: Point | None = None,
    soft_avoid: frozenset | set = frozenset(),
    forbid: frozenset | set = frozenset(),
) -> Curve:
    """Monotone simple curve related to `path`, deterministic.

    `soft_avoid`/`forbid` are segment-id sets: forbidden segments are never
    covered, avoided ones carry a cost penalty (used to keep new curves off
    old ones so region walks stay parity-clean).  Anchors pin the curve
    endpoints; defaults are chosen deterministically among the end strings'
    endpoints.
    """
    path = tuple(path)
    g = rep.graph
    for v in path:
        if v not in rep.strings:
            raise CurveError(f"unknown vertex {v!r}")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise CurveError(f"{a!r}-{b!r} is not an edge of the representation")
    if len(set(path)) != len(path):
        raise CurveError("path revisits a vertex")
    # chords between non-consecutive blocks are tolerated here; the final
    # simplicity check rejects any actual block collision
    k = len(path) - 1

    def arc(owner, ta, tb):
        """(cost, lo, hi) of covering [ta, tb] on owner, or None if forbidden."""
        lo, hi = min(ta, tb), max(ta, tb)
        penalty = 0
        for seg in rep.segments_of(owner):
            if max(seg.t0, lo) < min(seg.t1, hi):
                if seg.sid in forbid:
                    return None
                if seg.sid in soft_avoid:
                    penalty += 1000
        return (hi - lo + penalty, lo, hi)

    if k == 0:
        poly = rep.strings[path[0]]
        t0 = poly.param_of(start_anchor) if start_anchor is not None else 0
        t1 = poly.param_of(end_anchor) if end_anchor is not None else poly.total_len
        if t0 is None or t1 is None:
            raise CurveError("anchor not on the string")
        return Curve(rep, [CurvePiece(path[0], t0, t1)], path, ())

    junctions = [rep.crossings_of(path[i], path[i + 1]) for i in range(k)]
    for i, js in enumerate(junctions):
        if not js:
            raise CurveError(f"no crossing between {path[i]!r} and {path[i+1]!r}")
    by_point = [{c.point: c for c in js} for js in junctions]

    def anchor_params(v, anchor, where):
        poly = rep.strings[v]
        if anchor is not None:
            t = poly.param_of(anchor)
            if t is None:
                raise CurveError(f"{where} anchor not on string {v!r}")
            return [t]
        return sorted({0, poly.total_len})

    starts = anchor_params(path[0], start_anchor, "start")
    ends = anchor_params(path[-1], end_anchor, "end")

    strict_mode = [True]

    def disjoint_enough(i, arcs, q_choice, new_int):
        """The block-i arc may share only junction q_{i-1} with block i-1 and
        nothing at all with earlier blocks (including chorded ones).  In the
        relaxed pass, isolated point touches are tolerated: they keep the
        curve a sound parity separator."""
        if not strict_mode[0]:
            return True
        for j in range(i):
            shared = rep.crossings_of(path[j], path[i])
            if not shared:
                continue
            lo_j, hi_j = arcs[j]
            for r in shared:
                if j == i - 1 and q_choice is not None and r.point == q_choice:
                    continue
                tj = r.param_on(path[j])
                ti = r.param_on(path[i])
                if lo_j <= tj <= hi_j and new_int[0] <= ti <= new_int[1]:
                    return False
        return True

    # Deterministic backtracking over junction choices with full pairwise
    # disjointness pruning: the first completed assignment wins, candidates
    # ordered by (penalty, arc length, junction point).
    budget = [200_000]
    result: dict = {}

    def dfs(i, prev_param, arcs, chain):
        budget[0] -= 1
        if budget[0] <= 0:
            raise CurveError(f"curve search budget exhausted for {path!r}")
        if i == k:
            options = []
            for e in ends:
                ak = arc(path[k], prev_param, e)
                if ak is None:
                    continue
                options.append((ak[0], e, (ak[1], ak[2])))
            for _, e, interval in sorted(options):
                if disjoint_enough(k, arcs, chain[-1].point if chain else None, interval):
                    result["chain"] = list(chain)
                    result["end"] = e
                    return True
            return False
        options = []
        for q in junctions[i]:
            ai = arc(path[i], prev_param, q.param_on(path[i]))
            if ai is None:
                continue
            options.append((ai[0], q.point, q, (ai[1], ai[2])))
        options.sort(key=lambda o: (o[0], o[1]))
        for _, _, q, interval in options:
            prev_q = chain[-1].point if chain else None
            if not disjoint_enough(i, arcs, prev_q, interval):
                continue
            arcs.append(interval)
            chain.append(q)
            if dfs(i + 1, q.param_on(path[i + 1]), arcs, chain):
                return True
            arcs.pop()
            chain.pop()
        return False

    done = False
    for relax in (False, True):
        strict_mode[0] = not relax
        budget[0] = 200_000
        for s in sorted(starts):
            if dfs(0, s, [], []):
                result["start"] = s
                done = True
                break
        if done:
            break
    if not done:
        raise CurveError(f"no monotone curve exists for path {path!r}")

    chosen = result["chain"]
    pieces = []
    prev_t = result["start"]
    for i in range(k):
        pieces.append(CurvePiece(path[i], prev_t, chosen[i].param_on(path[i])))
        prev_t = chosen[i].param_on(path[i + 1])
    pieces.append(CurvePiece(path[k], prev_t, result["end"]))
    curve = Curve(rep, pieces, path, tuple(c.point for c in chosen))
    if curve.has_overlap():
        raise CurveError(f"constructed curve for {path!r} overlaps itself")
    return curve


def curve_to_path(curve: Curve) -> tuple[Vertex, ...]:
    """Unique path a monotone curve relates to, recovered from its blocks."""
    owners: list[Vertex] = []
    for piece in curve.pieces:
        if not owners or owners[-1] != piece.owner:
            owners.append(piece.owner)
    if len(set(owners)) != len(owners):
        raise CurveError("curve blocks revisit a string: not monotone")
    if tuple(owners) != curve.path:
        raise CurveError("curve block order disagrees with its declared path")
    return tuple(owners)


# -- top-bottom curves and side classification ---------------------------------


def extreme_point(rep: Representation, v: Vertex, top: bool) -> Point:
    pts = rep.strings[v].points
    if top:
        return max(pts, key=lambda p: (p[1], -p[0]))
    return min(pts, key=lambda p: (p[1], -p[0]))


def topmost_vertices(rep: Representation) -> list[Vertex]:
    maxy = rep.bbox()[3]
    return [v for v in rep.vertices() if rep.strings[v].bbox()[3] == maxy]


def bottommost_vertices(rep: Representation) -> list[Vertex]:
    miny = rep.bbox()[1]
    return [v for v in rep.vertices() if rep.strings[v].bbox()[1] == miny]


def top_bottom_curve(
    rep: Representation,
    u: Vertex,
    v: Vertex,
    path: Sequence[Vertex],
    soft_avoid=frozenset(),
    forbid=frozenset(),
) -> Curve:
    """Monotone curve related to `path` joining the representation's top
    extreme point (on u's string) to the bottom extreme point (on v's)."""
    if u not in topmost_vertices(rep):
        raise CurveError(f"{u!r} is not a top-most vertex")
    if v not in bottommost_vertices(rep):
        raise CurveError(f"{v!r} is not a bottom-most vertex")
    if path[0] != u or path[-1] != v:
        raise CurveError("path endpoints must be the top/bottom vertices")
    return relate_curve(
        rep,
        path,
        start_anchor=extreme_point(rep, u, top=True),
        end_anchor=extreme_point(rep, v, top=False),
        soft_avoid=soft_avoid,
        forbid=forbid,
    )


def separator_points(rep: Representation, curve: Curve) -> list[Point]:
    """Curve geometry extended by vertical rays to just beyond the bounding
    box: the top-bottom separator used for side parity."""
    minx, miny, maxx, maxy = rep.bbox()
    a = curve.start_point
    b = curve.end_point
    if a[1] != maxy or b[1] != miny:
        raise CurveError("separator requires a top-bottom curve")
    return [(a[0], maxy + 1)] + curve.geometry + [(b[0], miny - 1)]


LEFT, RIGHT, INTERSECTS = "L", "R", "X"


def side_of_points(rep: Representation, curve: Curve, pts: Sequence[Point]) -> str:
    """Side of raw polyline geometry against a top-bottom curve."""
    sep = separator_points(rep, curve)
    sep_edges = [(p, q) for p, q in zip(sep, sep[1:]) if p != q]
    own_edges = list(zip(pts, pts[1:])) or [(pts[0], pts[0])]
    for e1 in own_edges:
        for e2 in sep_edges:
            got = edge_intersection(e1, e2)
            if got == "overlap" or got:
                return INTERSECTS
    q2 = (2 * pts[0][0], 2 * pts[0][1])
    inside = parity_inside_2x(q2, double(sep), closed=False)
    return RIGHT if inside else LEFT


def side_of(rep: Representation, curve: Curve, x: Vertex) -> str:
    """Classify string x against a top-bottom curve: L, R, or X (touches)."""
    return side_of_points(rep, curve, list(rep.strings[x].points))
