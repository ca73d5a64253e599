"""String representations: per-vertex polylines, segment arrangements, normal
form validation, the induced intersection graph, and the file format.

Normal form (primary representations): axis-parallel integer polylines, all
pairwise contacts are transversal crossings interior to both local edges, no
triple points, no collinear overlaps.  Restricted representations (built by
regions.restrict) may additionally contain point-strings and endpoint touches;
the arrangement machinery here handles both.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from ..graphs import Graph, Vertex, vkey
from .geometry import Point, Polyline, polyline_intersections


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    """Shared point of two strings; params address it on each polyline."""

    point: Point
    a: Vertex
    b: Vertex
    param_a: int
    param_b: int

    def param_on(self, v: Vertex) -> int:
        if v == self.a:
            return self.param_a
        if v == self.b:
            return self.param_b
        raise KeyError(v)

    def other(self, v: Vertex) -> Vertex:
        return self.b if v == self.a else self.a


@dataclass(frozen=True)
class Segment:
    """Maximal piece of a string free of interior intersection points."""

    sid: int
    owner: Vertex
    index: int
    t0: int
    t1: int

    def midpoint_2x(self, poly: Polyline) -> Point:
        t2 = self.t0 + self.t1  # doubled-parameter midpoint
        lo = 0
        pts = poly.points
        for i in range(len(pts) - 1):
            a, b = pts[i], pts[i + 1]
            step = abs(b[0] - a[0]) + abs(b[1] - a[1])
            if t2 <= 2 * (lo + step):
                off = t2 - 2 * lo
                dx = (b[0] > a[0]) - (b[0] < a[0])
                dy = (b[1] > a[1]) - (b[1] < a[1])
                return (2 * a[0] + dx * off, 2 * a[1] + dy * off)
            lo += step
        return (2 * pts[-1][0], 2 * pts[-1][1])


class Representation:
    """A set of named strings (one polyline per vertex)."""

    def __init__(self, strings: dict[Vertex, Polyline | Sequence[Point]]):
        self.strings: dict[Vertex, Polyline] = {}
        for v, s in strings.items():
            self.strings[v] = s if isinstance(s, Polyline) else Polyline(s)
        if not self.strings:
            raise RepresentationError("empty representation")
        self.provenance: dict[Vertex, tuple[Vertex, int]] = {}
        self.parent: Representation | None = None

    def vertices(self) -> list[Vertex]:
        return sorted(self.strings, key=vkey)

    def bbox(self) -> tuple[int, int, int, int]:
        boxes = [p.bbox() for p in self.strings.values()]
        return (
            min(b[0] for b in boxes),
            min(b[1] for b in boxes),
            max(b[2] for b in boxes),
            max(b[3] for b in boxes),
        )

    def root_of(self, v: Vertex) -> Vertex:
        """Original vertex behind a (possibly nested) clipped portion."""
        rep: Representation | None = self
        while rep is not None and v in rep.provenance:
            v = rep.provenance[v][0]
            rep = rep.parent
        return v

    # -- arrangement ---------------------------------------------------------

    @cached_property
    def _arrangement(self):
        verts = self.vertices()
        crossings: list[Crossing] = []
        overlaps: list[tuple[Vertex, Vertex]] = []
        per_vertex: dict[Vertex, list[Crossing]] = {v: [] for v in verts}
        for i, u in enumerate(verts):
            pu = self.strings[u]
            for v in verts[i + 1 :]:
                pv = self.strings[v]
                got = polyline_intersections(pu, pv)
                if got == "overlap":
                    overlaps.append((u, v))
                    continue
                for pt in got:
                    c = Crossing(pt, u, v, pu.param_of(pt), pv.param_of(pt))
                    crossings.append(c)
                    per_vertex[u].append(c)
                    per_vertex[v].append(c)
        for v in per_vertex:
            per_vertex[v].sort(key=lambda c: c.param_on(v))
        return crossings, per_vertex, overlaps

    @property
    def crossings(self) -> list[Crossing]:
        return self._arrangement[0]

    def crossings_on(self, v: Vertex) -> list[Crossing]:
        return self._arrangement[1][v]

    def crossings_of(self, u: Vertex, v: Vertex) -> list[Crossing]:
        return [c for c in self.crossings_on(u) if c.other(u) == v]

    @cached_property
    def _segments(self) -> dict[Vertex, list[Segment]]:
        out: dict[Vertex, list[Segment]] = {}
        sid = 0
        for v in self.vertices():
            poly = self.strings[v]
            cuts = sorted({c.param_on(v) for c in self.crossings_on(v)})
            bounds = [0] + [t for t in cuts if 0 < t < poly.total_len] + [poly.total_len]
            segs = []
            if poly.is_point or poly.total_len == 0:
                segs.append(Segment(sid, v, 0, 0, 0))
                sid += 1
            else:
                for idx in range(len(bounds) - 1):
                    segs.append(Segment(sid, v, idx, bounds[idx], bounds[idx + 1]))
                    sid += 1
            out[v] = segs
        return out

    def segments_of(self, v: Vertex) -> list[Segment]:
        return self._segments[v]

    def all_segments(self) -> list[Segment]:
        return [s for v in self.vertices() for s in self._segments[v]]

    def segment_count(self) -> int:
        return sum(len(self._segments[v]) for v in self.vertices())

    def segment_by_id(self, sid: int) -> Segment:
        return {s.sid: s for s in self.all_segments()}[sid]

    # -- induced graph ---------------------------------------------------------

    @cached_property
    def graph(self) -> Graph:
        _, per_vertex, overlaps = self._arrangement
        if overlaps:
            raise RepresentationError(f"collinear string overlaps: {overlaps}")
        edges = set()
        for c in self.crossings:
            edges.add((c.a, c.b))
        return Graph(self.vertices(), edges)

    # -- validation -------------------------------------------------------------

    def validate_normal_form(self) -> list[str]:
        """All normal-form invariants, each violation located."""
        violations: list[str] = []
        for v in self.vertices():
            poly = self.strings[v]
            if poly.is_point:
                violations.append(f"string {v!r} is a degenerate point")
                continue
            if poly.self_intersects():
                violations.append(f"string {v!r} is self-intersecting")
        crossings, per_vertex, overlaps = self._arrangement
        for u, v in overlaps:
            violations.append(f"strings {u!r} and {v!r} share a collinear interval")
        for c in crossings:
            for side, param, poly in (
                (c.a, c.param_a, self.strings[c.a]),
                (c.b, c.param_b, self.strings[c.b]),
            ):
                if poly.is_point:
                    continue
                if param in (0, poly.total_len):
                    violations.append(
                        f"contact at {c.point} is an endpoint of string {side!r}"
                    )
                elif c.point in poly.points:
                    violations.append(
                        f"contact at {c.point} sits on a bend of string {side!r}"
                    )
        by_point: dict[Point, set] = {}
        for c in crossings:
            by_point.setdefault(c.point, set()).update((c.a, c.b))
        for pt, owners in by_point.items():
            if len(owners) > 2:
                violations.append(f"{len(owners)} strings meet at {pt}")
        return violations

    def require_normal_form(self) -> None:
        bad = self.validate_normal_form()
        if bad:
            raise RepresentationError("; ".join(bad))


def graph_of(rep: Representation) -> Graph:
    """Intersection graph of the representation (original vertex ids)."""
    return rep.graph


# -- file format -----------------------------------------------------------------

# Header line `bbox minx miny maxx maxy`, then one record per vertex:
#   <id> x,y; x,y; ...
# ids are unsigned integers or quoted names.


def _format_id(v: Vertex) -> str:
    if isinstance(v, int) and v >= 0:
        return str(v)
    return '"%s"' % str(v).replace('"', '\\"')


def _parse_id(tok: str) -> Vertex:
    if tok.isdigit():
        return int(tok)
    return tok


def write_representation(rep: Representation, fh) -> None:
    fh.write("bbox %d %d %d %d\n" % rep.bbox())
    for v in rep.vertices():
        pts = "; ".join(f"{x},{y}" for x, y in rep.strings[v].points)
        fh.write(f"{_format_id(v)} {pts}\n")


def read_representation(fh) -> Representation:
    strings: dict[Vertex, Polyline] = {}
    for raw in fh:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("bbox "):
            continue  # informative header; recomputed on demand
        toks = line.split(None, 1)
        if len(toks) != 2:
            raise RepresentationError(f"bad representation line: {raw!r}")
        vid = _parse_id(shlex.split(toks[0])[0])
        pts = []
        for chunk in toks[1].split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            xs, ys = chunk.split(",")
            pts.append((int(xs), int(ys)))
        strings[vid] = Polyline(pts)
    return Representation(strings)


def load_representation(path: str) -> Representation:
    with open(path, "r", encoding="utf-8") as fh:
        return read_representation(fh)


def save_representation(rep: Representation, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_representation(rep, fh)


# -- rectangle (2-BOX) conversion ---------------------------------------------


def rectangles_to_representation(
    rects: dict[Vertex, tuple[int, int, int, int]], cut: int = 1
) -> Representation:
    """Convert axis-parallel rectangles to boundary strings, each cut open
    just after its lower-left corner so the boundary is a simple open curve.

    Requires strictly overlapping rectangles (no nesting, no shared boundary
    lines) so that area intersection and boundary crossing coincide; the
    caller validates the resulting graph.
    """
    strings = {}
    for v, (x1, y1, x2, y2) in rects.items():
        if not (x1 < x2 and y1 < y2):
            raise RepresentationError(f"degenerate rectangle for {v!r}")
        strings[v] = Polyline(
            [
                (x1 + cut, y1),
                (x2, y1),
                (x2, y2),
                (x1, y2),
                (x1, y1),
                (x1 + cut - 1, y1) if cut > 1 else (x1, y1),
            ]
        )
    return Representation(strings)


def rectangle_graph(rects: dict[Vertex, tuple[int, int, int, int]]) -> Graph:
    """Area-intersection graph of axis-parallel rectangles."""
    vs = sorted(rects, key=vkey)
    edges = []
    for i, u in enumerate(vs):
        x1, y1, x2, y2 = rects[u]
        for v in vs[i + 1 :]:
            a1, b1, a2, b2 = rects[v]
            if x1 <= a2 and a1 <= x2 and y1 <= b2 and b1 <= y2:
                edges.append((u, v))
    return Graph(vs, edges)
