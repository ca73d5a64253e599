"""Extending an isometric curve: the construction that makes the old curve
convex relative to every pocket it bounds with the new one.

Given the territory representation whose boundary is an isometric curve (plus
optionally a second curve or a box side), the extension either reports that no
other endpoint path exists (the unique attachment cut vertex), returns a
shortest alternative when the old curve is already convex, or builds the
three-case extension: pick the least level i carrying a convexity violator,
pick the violator v whose crossing with the string of u_i is closest along the
designated sub-curve (pi_u, pi_p, or pi_b), and splice
new = (isometric u0,v-curve) + (v..p' along u_i) + (old curve from p' down).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..graphs import (
    alternative_paths,
    Graph,
    Vertex,
    is_convex_path_relative,
    shortest_path,
    shortest_path_avoiding,
    vkey,
)
from .curves import Curve, CurveError, CurvePiece, curve_to_path, relate_curve
from .geometry import Point
from .model import Representation


class ExtensionError(RuntimeError):
    """The construction hit a geometric degeneracy; diagnostics attached."""


@dataclass
class ExtensionResult:
    kind: str  # cannot_extend | extended | already_convex
    cut_vertex: Vertex | None = None
    curve: Curve | None = None
    case: str | None = None  # Xu | Xp | Xb | already-convex
    new_path: tuple | None = None
    shared_from: int | None = None
    least_i: int | None = None
    v: Vertex | None = None
    p_point: Point | None = None
    p_prime_point: Point | None = None


def territory_of(g: Graph, *paths) -> set:
    """Robber-side territory: everything off the boundary paths."""
    on = set()
    for p in paths:
        if p:
            on.update(p)
    return {v for v in g.vertices() if v not in on}


def _reversed_curve(c: Curve) -> Curve:
    pieces = tuple(CurvePiece(p.owner, p.t1, p.t0) for p in reversed(c.pieces))
    return Curve(c.rep, pieces, tuple(reversed(c.path)), tuple(reversed(c.junctions)))


def curve_divergence(c1: Curve, c2: Curve) -> Point:
    """Last point of the maximal common prefix of two curves from their
    shared start point."""
    if c1.start_point != c2.start_point:
        raise CurveError("curves do not share a start point")
    last = c1.start_point
    for p1, p2 in zip(c1.pieces, c2.pieces):
        if p1.owner != p2.owner or p1.t0 != p2.t0:
            break
        d1 = 1 if p1.t1 >= p1.t0 else -1
        d2 = 1 if p2.t1 >= p2.t0 else -1
        if d1 != d2 and p1.t1 != p1.t0 and p2.t1 != p2.t0:
            break
        len1, len2 = abs(p1.t1 - p1.t0), abs(p2.t1 - p2.t0)
        overlap = min(len1, len2)
        poly = c1.rep.strings[p1.owner]
        last = poly.point_at(p1.t0 + d1 * overlap)
        if len1 != len2:
            break
    return last


def curve_merge(c1: Curve, c2: Curve) -> Point:
    """First point of the maximal common suffix (walking from the shared end)."""
    return curve_divergence(_reversed_curve(c1), _reversed_curve(c2))


def pocket_between(rep: Representation, c_old: Curve, c_new: Curve):
    """The bounded region between two curves sharing their endpoints: trims
    the maximal common prefix/suffix and builds the two-curve region over the
    internally disjoint middles.

    Returns (divergence point, merge point, old middle, new middle, region).
    """
    from .regions import two_curve_region

    m = curve_divergence(c_old, c_new)
    w = curve_merge(c_old, c_new)
    mid_old = c_old.subcurve(m, w)
    mid_new = c_new.subcurve(m, w)
    region = two_curve_region(rep, mid_old, mid_new)
    return m, w, mid_old, mid_new, region


def is_convex_curve_relative(rep: Representation, curve: Curve, territory) -> bool:
    """Convexity of the curve's related path relative to the territory."""
    path = curve_to_path(curve)
    return is_convex_path_relative(rep.graph, territory, path)


def _least_violator_level(g: Graph, t: set, path) -> tuple[int, list] | None:
    """Least i such that some x in t has d(u0,x)=i-1 and x in N(u_i)."""
    d0 = g.distances(path[0])
    for i in range(1, len(path)):
        xs = [
            x
            for x in g.neighbors(path[i])
            if x in t and d0.get(x) == i - 1
        ]
        if xs:
            return i, sorted(xs, key=vkey)
    return None


def _away_interval(poly, t_anchor: int, t_block_other: int, stops: list[int]) -> tuple[int, int]:
    """Open param interval of the maximal sub-curve of the string clinging to
    the anchor on the side away from the block, stopping before any param in
    `stops` (points where the old curve passes)."""
    if t_anchor <= t_block_other:  # block extends upward: away side is below
        lo = 0
        inside = [s for s in stops if s < t_anchor]
        if inside:
            lo = max(inside)
        return (lo, t_anchor)
    hi = poly.total_len
    inside = [s for s in stops if s > t_anchor]
    if inside:
        hi = min(inside)
    return (t_anchor, hi)


def _crossings_strictly_inside(rep, x: Vertex, ui: Vertex, lo: int, hi: int):
    """Crossing params (on ui) of pair (x, ui) strictly inside (lo, hi)."""
    out = []
    for c in rep.crossings_of(ui, x):
        t = c.param_on(ui)
        if lo < t < hi:
            out.append((t, c.point))
    return out


def _diverse_paths(g: Graph, u0, uk, avoid, limit: int = 40):
    """Alternative endpoint paths: the edge-exclusion sweep plus a budgeted
    run of shortest-simple-path enumeration for diversity."""
    import networkx as nx

    out = list(alternative_paths(g, u0, uk, avoid))
    seen = set(out)
    avoid_set = {tuple(p) for p in avoid} | {tuple(reversed(p)) for p in avoid}
    gx = nx.Graph()
    gx.add_nodes_from(g.vertices())
    gx.add_edges_from(g.edges())
    try:
        gen = nx.shortest_simple_paths(gx, u0, uk)
        for i, p in enumerate(gen):
            if i >= limit:
                break
            tp = tuple(p)
            if tp in avoid_set or tp in seen:
                continue
            seen.add(tp)
            out.append(tp)
    except nx.NetworkXNoPath:
        pass
    return out


def _alternate_curve_same_path(rep, curve1: Curve, p1, base_avoid):
    """A simple monotone curve related to p1 itself that differs from curve1
    in at least one covered segment, or None."""
    own = frozenset(curve1.segment_ids())
    for sid in sorted(own):
        try:
            cand = relate_curve(
                rep,
                p1,
                start_anchor=curve1.start_point,
                end_anchor=curve1.end_point,
                soft_avoid=base_avoid,
                forbid=frozenset([sid]),
            )
        except CurveError:
            continue
        if cand.pieces != curve1.pieces:
            return cand
    return None


def extend_curve(
    rep: Representation,
    curve1: Curve,
    other: Curve | None = None,
    robber: Vertex | None = None,
) -> ExtensionResult:
    """Lemma-style curve extension inside the current territory representation.

    `other` is the second bounding curve when the territory is a two-curve
    region; None when it is a side region.  `robber` pins the component used
    to find the unique attachment vertex in the cannot-extend branch.
    """
    g = rep.graph
    p1 = curve_to_path(curve1)
    p2 = curve_to_path(other) if other is not None else None
    u0, uk = p1[0], p1[-1]
    t = territory_of(g, p1, p2)

    avoid = [p1] + ([p2] if p2 else [])
    alt = shortest_path_avoiding(g, u0, uk, avoid)
    if alt is None:
        cut = None
        if robber is not None:
            boundary = set(p1) | set(p2 or ())
            comp = g.without(boundary).component_of(robber)
            attach = sorted(
                {w for w in boundary if any(x in comp for x in g.neighbors(w))},
                key=vkey,
            )
            if len(attach) != 1:
                raise ExtensionError(
                    f"robber component attaches to {attach!r}; a unique cut "
                    "vertex was promised when no alternative path exists"
                )
            cut = attach[0]
        return ExtensionResult(kind="cannot_extend", cut_vertex=cut)

    base_avoid = frozenset(curve1.segment_ids()) | (
        frozenset(other.segment_ids()) if other is not None else frozenset()
    )

    if is_convex_path_relative(g, t, p1):
        last_exc: Exception | None = None
        for cand in _diverse_paths(g, u0, uk, avoid):
            try:
                curve = relate_curve(
                    rep,
                    cand,
                    start_anchor=curve1.start_point,
                    end_anchor=curve1.end_point,
                    soft_avoid=base_avoid,
                )
            except CurveError as exc:
                last_exc = exc
                continue
            t_len = 0
            while (
                t_len < min(len(cand), len(p1))
                and cand[len(cand) - 1 - t_len] == p1[len(p1) - 1 - t_len]
            ):
                t_len += 1
            return ExtensionResult(
                kind="already_convex",
                curve=curve,
                case="already-convex",
                new_path=tuple(cand),
                shared_from=len(cand) - t_len,
            )
        # final fallback: a different curve related to the same convex path;
        # every pocket it bounds with the old curve trivially satisfies the
        # extended-curve contract (its sub-paths are sub-paths of p1)
        alt_curve = _alternate_curve_same_path(rep, curve1, p1, base_avoid)
        if alt_curve is not None:
            return ExtensionResult(
                kind="already_convex",
                curve=alt_curve,
                case="already-convex",
                new_path=tuple(p1),
                shared_from=0,
            )
        raise ExtensionError(
            f"no alternative path admits a simple related curve: {last_exc}"
        )

    found = _least_violator_level(g, t, p1)
    if found is None:
        raise ExtensionError("path not convex yet no violator level found")
    i, xs = found
    k = len(p1) - 1
    ui = p1[i]
    poly = rep.strings[ui]
    p_u = curve1.junctions[i - 1]
    p_b = curve1.junctions[i] if i < k else curve1.end_point
    t_pu = poly.param_of(p_u)
    t_pb = poly.param_of(p_b)
    if t_pu is None or t_pb is None:
        raise ExtensionError(f"junction points not on string {ui!r}")
    blo, bhi = min(t_pu, t_pb), max(t_pu, t_pb)

    # params on ui where the old curve passes (stop marks for pi_u / pi_b)
    stops = []
    for c in rep.crossings_on(ui):
        if curve1.covers_point(c.point) and not (blo <= c.param_on(ui) <= bhi):
            stops.append(c.param_on(ui))
    iu = _away_interval(poly, t_pu, t_pb, stops)
    ib = _away_interval(poly, t_pb, t_pu, stops)

    def candidates(interval, ref_param, strict=True):
        lo, hi = interval
        out = []
        for x in xs:
            hits = _crossings_strictly_inside(rep, x, ui, lo, hi)
            for t_hit, pt in hits:
                out.append((abs(t_hit - ref_param), vkey(x), x, pt))
        return sorted(out)

    cand_u = candidates(iu, t_pu)
    cand_p = [
        (abs(t_hit - t_pu), vkey(x), x, pt)
        for x in xs
        for (t_hit, pt) in _crossings_strictly_inside(rep, x, ui, blo, bhi)
    ]
    cand_p.sort()
    cand_b = candidates(ib, t_pb)

    if cand_u:
        case, pool, p_prime = "Xu", cand_u, p_u
    elif cand_p:
        case, pool, p_prime = "Xp", cand_p, None  # p' = p itself
    elif cand_b:
        case, pool, p_prime = "Xb", cand_b, p_b
    else:
        raise ExtensionError(
            f"violators {xs!r} at level {i} have no crossing on the string of "
            f"{ui!r} near the curve; geometry and graph disagree"
        )

    suffix_curve = None
    last_error: Exception | None = None
    for _, _, v, p_pt in pool:
        pp = p_pt if p_prime is None else p_prime
        try:
            pq_path = shortest_path(g, u0, v)
            if pq_path is None or len(pq_path) - 1 != i - 1:
                raise ExtensionError(
                    f"violator {v!r} is at graph distance {len(pq_path or ()) - 1}, "
                    f"expected {i - 1}"
                )
            pi_s = curve1.subcurve(pp, curve1.end_point)
            forbid = frozenset(pi_s.segment_ids())
            t_p = poly.param_of(p_pt)
            t_pp = poly.param_of(pp)
            pi_r = None
            if t_p != t_pp:
                r_ids = set()
                rlo, rhi = min(t_p, t_pp), max(t_p, t_pp)
                for seg in rep.segments_of(ui):
                    if max(seg.t0, rlo) < min(seg.t1, rhi):
                        r_ids.add(seg.sid)
                forbid = forbid | frozenset(r_ids)
                pi_r = CurvePiece(ui, t_p, t_pp)
            pi_q = relate_curve(
                rep,
                pq_path,
                start_anchor=curve1.start_point,
                end_anchor=p_pt,
                soft_avoid=base_avoid,
                forbid=forbid,
            )
            pieces = list(pi_q.pieces)
            if pi_r is not None:
                pieces.append(pi_r)
            pieces.extend(pi_s.pieces)
            new_path = tuple(pq_path) + tuple(p1[i:])
            new_junctions = tuple(pi_q.junctions) + (p_pt,) + tuple(curve1.junctions[i:])
            curve = Curve(rep, pieces, new_path, new_junctions)
            if curve_to_path(curve) != new_path:
                raise ExtensionError("assembled curve does not relate to the extension path")
            if curve.has_overlap():
                raise ExtensionError("assembled extension curve overlaps itself")
            return ExtensionResult(
                kind="extended",
                curve=curve,
                case=case,
                new_path=new_path,
                shared_from=i,
                least_i=i,
                v=v,
                p_point=p_pt,
                p_prime_point=pp,
            )
        except (CurveError, ExtensionError) as exc:
            last_error = exc
            continue
    raise ExtensionError(
        f"no candidate violator admits a simple extension curve at level {i}: "
        f"last failure: {last_error}"
    )
