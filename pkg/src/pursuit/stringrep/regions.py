"""Regions and the representation-restricted-to-a-region construction.

A region is a closed area bounded by curve geometry: either two internally
disjoint a,b-curves, or one side of a top-bottom curve closed through the
bounding box.  Restriction is combinatorial on the segment arrangement:
segments never cross a region boundary except at intersection points, so each
segment is wholly in or out, and clipped strings split into portions at
boundary crossings (single boundary points survive as point-strings).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from ..graphs import Graph, Vertex, vkey
from .curves import Curve, CurveError, separator_points
from .geometry import (
    Point,
    Polyline,
    double,
    parity_inside_2x,
    point_on_walk_2x,
    walk_has_overlapping_edges_2x,
)
from .model import Representation, RepresentationError


class RegionDegeneracyError(ValueError):
    pass


class Region:
    """Closed polygonal area given by a boundary walk (doubled coordinates).

    `cuts` are points where the boundary turns in the middle of a string
    segment (curve anchors); restriction must split strings there too.
    """

    kind = "region"

    def __init__(self, walk: Sequence[Point], boundary_curves: Sequence[Curve],
                 cuts: Sequence[Point] = ()):
        self.walk = [tuple(p) for p in walk]
        self.curves = tuple(boundary_curves)
        self.cuts = tuple(tuple(p) for p in cuts)
        self.walk_2x = double(self.walk)
        if walk_has_overlapping_edges_2x(self.walk_2x):
            raise RegionDegeneracyError(
                "region boundary has collinear overlapping edges; parity "
                "classification would be unsound"
            )

    def on_boundary_2x(self, q: Point) -> bool:
        return point_on_walk_2x(q, self.walk_2x)

    def contains_2x(self, q: Point) -> bool:
        """Closed containment: boundary points count as inside."""
        if self.on_boundary_2x(q):
            return True
        return parity_inside_2x(q, self.walk_2x)

    def contains_point(self, p: Point) -> bool:
        return self.contains_2x((2 * p[0], 2 * p[1]))


def two_curve_region(rep: Representation, c1: Curve, c2: Curve) -> Region:
    """Region bounded by two internally disjoint curves sharing endpoints."""
    if c1.start_point != c2.start_point or c1.end_point != c2.end_point:
        raise RegionDegeneracyError("curves must share both endpoints")
    fwd = c1.geometry
    back = list(reversed(c2.geometry))
    walk = fwd + back[1:]
    if walk[0] == walk[-1]:
        walk = walk[:-1]
    return Region(walk, (c1, c2), cuts=(c1.start_point, c1.end_point))


def side_region(rep: Representation, curve: Curve, side: str) -> Region:
    """Closed region on one side of a top-bottom curve, completed by vertical
    rays and the bounding box."""
    minx, miny, maxx, maxy = rep.bbox()
    sep = separator_points(rep, curve)
    top, bot = sep[0], sep[-1]
    if side == "L":
        closure = [(minx - 1, bot[1]), (minx - 1, top[1])]
    elif side == "R":
        closure = [(maxx + 1, bot[1]), (maxx + 1, top[1])]
    else:
        raise ValueError(f"side must be 'L' or 'R', got {side!r}")
    return Region(sep + closure, (curve,), cuts=(curve.start_point, curve.end_point))


class RestrictedRep(Representation):
    """Representation clipped to a region, with provenance to the parent."""

    def __init__(self, strings, parent: Representation, provenance, region: Region,
                 boundary_touching: frozenset):
        super().__init__(strings)
        self.parent = parent
        self.provenance = dict(provenance)
        self.region = region
        self.boundary_touching = boundary_touching

    def accessible_vertices(self) -> list[Vertex]:
        """Strings the robber may occupy: those not touching the boundary."""
        return [v for v in self.vertices() if v not in self.boundary_touching]

    def territory_measure(self) -> int:
        return self.segment_count()


def _portion_id(base: Vertex, idx: int, split: bool) -> Vertex:
    if not split:
        return base
    return f"{base}|{idx}"


def _point_at_2x(poly: Polyline, t2: int) -> Point:
    """Point at doubled parameter t2, in doubled coordinates."""
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


def restrict(rep: Representation, region: Region) -> RestrictedRep:
    """Clip every string to the region.

    Strings fragment at intersection points and at the region's anchor cuts
    (boundary turning points).  Whole inside strings keep their id;
    boundary-crossing strings split into portions (new vertices), including
    degenerate single-point portions where the string only touches the region.
    """
    strings: dict[Vertex, Polyline] = {}
    provenance: dict[Vertex, tuple[Vertex, int]] = {}
    touching: set[Vertex] = set()

    for v in rep.vertices():
        poly = rep.strings[v]
        if poly.is_point:
            if region.contains_point(poly.points[0]):
                strings[v] = poly
                provenance[v] = (v, 0)
                if region.on_boundary_2x(double(poly.points)[0]):
                    touching.add(v)
            continue
        cut_params = {c.param_on(v) for c in rep.crossings_on(v)}
        for p in region.cuts:
            t = poly.param_of(p)
            if t is not None:
                cut_params.add(t)
        bounds = [0] + sorted(t for t in cut_params if 0 < t < poly.total_len) + [
            poly.total_len
        ]
        frags = list(zip(bounds, bounds[1:]))
        inside = [region.contains_2x(_point_at_2x(poly, a + b)) for a, b in frags]
        portions: list[tuple[int, int]] = []  # param intervals
        point_portions: list[int] = []  # params of isolated boundary contacts
        run_start = None
        for i, (fa, fb) in enumerate(frags):
            if inside[i]:
                if run_start is None:
                    run_start = fa
                if i == len(frags) - 1:
                    portions.append((run_start, fb))
            else:
                if run_start is not None:
                    portions.append((run_start, fa))
                    run_start = None
                # isolated contact: the cut point between two outside
                # fragments may lie exactly on the region boundary
                if i + 1 < len(frags) and not inside[i + 1]:
                    p2 = double([poly.point_at(fb)])[0]
                    if region.on_boundary_2x(p2):
                        point_portions.append(fb)
        # a string endpoint resting on the boundary with its end fragment
        # outside also contributes a single-point portion
        if not inside[0]:
            p2 = double([poly.points[0]])[0]
            if region.on_boundary_2x(p2):
                point_portions.append(0)
        if not inside[-1]:
            p2 = double([poly.points[-1]])[0]
            if region.on_boundary_2x(p2):
                point_portions.append(poly.total_len)
        whole = len(portions) == 1 and portions[0] == (0, poly.total_len) and not point_portions
        pieces: list[Polyline] = []
        for (a, b) in portions:
            pieces.append(Polyline(poly.sub(a, b)))
        for t in point_portions:
            pieces.append(Polyline([poly.point_at(t)]))
        if not pieces:
            continue
        for idx, piece in enumerate(pieces):
            vid = _portion_id(v, idx, split=not whole)
            strings[vid] = piece
            provenance[vid] = (v, idx)
            if not whole:
                touching.add(vid)
            else:
                # a whole string still touches the boundary if any of its
                # crossing points lies on it
                for c in rep.crossings_on(v):
                    if region.on_boundary_2x(double([c.point])[0]):
                        touching.add(vid)
                        break
    if not strings:
        raise RegionDegeneracyError("region clips away every string")
    return RestrictedRep(strings, rep, provenance, region, frozenset(touching))


def subrepresentation(rep: Representation, keep: Sequence[Vertex]) -> RestrictedRep:
    """Representation on a subset of the strings, geometry unchanged."""
    ks = set(keep)
    strings = {v: rep.strings[v] for v in rep.vertices() if v in ks}
    if not strings:
        raise RepresentationError("empty subrepresentation")
    out = RestrictedRep(
        strings,
        rep,
        {v: (v, 0) for v in strings},
        region=None,  # type: ignore[arg-type]
        boundary_touching=frozenset(),
    )
    return out


def reanchor_curve(curve: Curve, child: Representation) -> Curve:
    """Re-express a curve of the parent representation inside a child whose
    boundary kept the curve's geometry.

    Each piece maps onto the child portion containing its geometry; the
    related path becomes the portion path (the segment geometry is identical).
    """
    from .curves import CurvePiece

    pieces = []
    owners = []
    for piece in curve.pieces:
        parent_poly = curve.rep.strings[piece.owner]
        p0 = parent_poly.point_at(piece.t0)
        p1 = parent_poly.point_at(piece.t1)
        # locate a child string owning this whole piece
        cands = [
            v
            for v in child.vertices()
            if child.root_of(v) == curve.rep.root_of(piece.owner)
            or child.provenance.get(v, (None,))[0] == piece.owner
            or v == piece.owner
        ]
        placed = False
        for v in sorted(cands, key=vkey):
            poly = child.strings[v]
            t0 = poly.param_of(p0)
            t1 = poly.param_of(p1)
            if t0 is None or t1 is None:
                continue
            mid = parent_poly.point_at((piece.t0 + piece.t1) // 2)
            if poly.param_of(mid) is None:
                continue
            pieces.append(CurvePiece(v, t0, t1))
            owners.append(v)
            placed = True
            break
        if not placed:
            raise CurveError(
                f"curve piece on {piece.owner!r} has no home in the child representation"
            )
    path = []
    for v in owners:
        if not path or path[-1] != v:
            path.append(v)
    juncs = tuple(curve.junctions)
    return Curve(child, pieces, tuple(path), juncs)


# -- dominated-string pruning -----------------------------------------------------


def prune_dominated(rep: Representation):
    """Iteratively delete strings whose closed neighborhood is contained in
    another string's (safe for the game's value); returns (new rep, removed).

    Ties (equal closed neighborhoods) drop the geometrically shorter string,
    mirroring the string-containment picture.
    """
    strings = dict(rep.strings)
    removed: list[Vertex] = []
    changed = True
    while changed and len(strings) > 1:
        changed = False
        cur = Representation(strings)
        g = cur.graph

        def drop_order(v):
            return (strings[v].total_len, tuple(reversed(vkey(v))))

        for v in sorted(strings, key=drop_order):
            nv = set(g.closed_neighbors(v))
            for u in sorted(strings, key=vkey):
                if u == v:
                    continue
                nu = set(g.closed_neighbors(u))
                if nv < nu or (nv == nu and drop_order(v) < drop_order(u)):
                    removed.append(v)
                    del strings[v]
                    changed = True
                    break
            if changed:
                break
    out = RestrictedRep(
        strings,
        rep,
        {v: (v, 0) for v in strings},
        region=None,  # type: ignore[arg-type]
        boundary_touching=frozenset(
            v for v in strings if isinstance(rep, RestrictedRep) and v in rep.boundary_touching
        ),
    )
    return out, removed
