import pytest

from pursuit.generators import girth5_string_rep, random_string_rep
from pursuit.graphs import (
    is_convex_path_relative,
    is_isometric_path_relative,
    shortest_path,
    vkey,
)
from pursuit.stringrep import (
    Polyline,
    Representation,
    curve_to_path,
    reanchor_curve,
    relate_curve,
    restrict,
    side_region,
    top_bottom_curve,
)
from pursuit.stringrep.curves import bottommost_vertices, topmost_vertices
from pursuit.stringrep.extend import (
    ExtensionError,
    extend_curve,
    is_convex_curve_relative,
    pocket_between,
    territory_of,
)


def fixture_xu():
    """Violator crossing the u2 stub above the curve: case Xu, p' = p_u."""
    rep = Representation(
        {
            "u0": Polyline([(0, 14), (0, 6)]),
            "u1": Polyline([(-2, 8), (10, 8)]),
            "u2": Polyline([(6, 10), (6, -6)]),
            "x": Polyline([(-4, 9), (8, 9)]),
        }
    )
    curve = top_bottom_curve(rep, "u0", "u2", ("u0", "u1", "u2"))
    return rep, curve


def fixture_xp():
    """Violator crossing inside the curve's u2 block: case Xp, p' = p."""
    rep = Representation(
        {
            "u0": Polyline([(0, 14), (0, 6)]),
            "u1": Polyline([(-2, 8), (10, 8)]),
            "u2": Polyline([(6, 10), (6, -6)]),
            "x": Polyline([(-4, 7), (8, 7)]),
        }
    )
    curve = top_bottom_curve(rep, "u0", "u2", ("u0", "u1", "u2"))
    return rep, curve


def fixture_xb():
    """Violator reachable only through the stub beyond p_b: case Xb, p' = p_b."""
    rep = Representation(
        {
            "u0": Polyline([(0, 14), (0, 6)]),
            "u1": Polyline([(-2, 8), (10, 8)]),
            "u2": Polyline([(6, 10), (6, -2)]),
            "u3": Polyline([(2, 0), (12, 0), (12, -4)]),
            "x": Polyline([(-4, 7), (1, 7), (1, -1), (8, -1)]),
        }
    )
    curve = top_bottom_curve(rep, "u0", "u3", ("u0", "u1", "u2", "u3"))
    return rep, curve


class TestExtensionCases:
    def test_case_xu(self):
        rep, curve = fixture_xu()
        res = extend_curve(rep, curve, robber="x")
        assert res.kind == "extended" and res.case == "Xu"
        assert res.v == "x"
        assert res.p_point == (6, 9)
        assert res.p_prime_point == (6, 8)
        assert res.new_path == ("u0", "x", "u2")
        assert res.shared_from == 2
        assert curve_to_path(res.curve) == res.new_path
        assert res.curve.is_simple()
        assert res.curve.start_point == curve.start_point
        assert res.curve.end_point == curve.end_point

    def test_case_xp(self):
        rep, curve = fixture_xp()
        res = extend_curve(rep, curve, robber="x")
        assert res.kind == "extended" and res.case == "Xp"
        assert res.p_point == (6, 7)
        assert res.p_prime_point == (6, 7)
        assert res.new_path == ("u0", "x", "u2")

    def test_case_xb(self):
        rep, curve = fixture_xb()
        res = extend_curve(rep, curve, robber="x")
        assert res.kind == "extended" and res.case == "Xb"
        assert res.p_point == (6, -1)
        assert res.p_prime_point == (6, 0)
        assert res.new_path == ("u0", "x", "u2", "u3")
        assert res.shared_from == 2

    def test_cannot_extend_cut_vertex(self):
        rep = Representation(
            {
                "u0": Polyline([(0, 14), (0, 6)]),
                "u1": Polyline([(-2, 8), (10, 8)]),
                "u2": Polyline([(6, 10), (6, -6)]),
                "h": Polyline([(-4, 7), (2, 7)]),  # hangs off u0 only
            }
        )
        curve = top_bottom_curve(rep, "u0", "u2", ("u0", "u1", "u2"))
        res = extend_curve(rep, curve, robber="h")
        assert res.kind == "cannot_extend"
        assert res.cut_vertex == "u0"

    def test_already_convex(self):
        # the only alternative route is strictly longer: the guarded path is
        # convex relative to the territory, and a freed cop takes the detour
        rep = Representation(
            {
                "u0": Polyline([(0, 14), (0, -2)]),
                "u1": Polyline([(-2, 8), (10, 8)]),
                "c1": Polyline([(-2, 0), (3, 0)]),
                "c2": Polyline([(3, 1), (3, -3), (8, -3)]),
                "u2": Polyline([(6, 10), (6, -6)]),
            }
        )
        curve = top_bottom_curve(rep, "u0", "u2", ("u0", "u1", "u2"))
        g = rep.graph
        t = territory_of(g, ("u0", "u1", "u2"))
        assert is_convex_path_relative(g, t, ("u0", "u1", "u2"))
        res = extend_curve(rep, curve, robber="c1")
        assert res.kind == "already_convex"
        assert res.new_path == ("u0", "c1", "c2", "u2")


class TestExtensionContract:
    def _check_contract(self, rep, curve, res, side):
        # every bounded pocket: old sub-curve convex, new sub-curve isometric,
        # both relative to the pocket restriction; the new curve is isometric
        # relative to its own side region.
        m, w, mid_old, mid_new, region = pocket_between(rep, curve, res.curve)
        pocket = restrict(rep, region)
        old_in = reanchor_curve(mid_old, pocket)
        new_in = reanchor_curve(mid_new, pocket)
        g_b = pocket.graph
        p_old = curve_to_path(old_in)
        p_new = curve_to_path(new_in)
        t_b = territory_of(g_b, p_old, p_new)
        assert is_isometric_path_relative(g_b, t_b, p_new)
        assert is_convex_path_relative(g_b, t_b, p_old)
        # the extension is isometric relative to the remaining side region
        outer = restrict(rep, side_region(rep, res.curve, side))
        new_out = reanchor_curve(res.curve, outer)
        p_out = curve_to_path(new_out)
        t_out = territory_of(outer.graph, p_out)
        assert is_isometric_path_relative(outer.graph, t_out, p_out)

    def test_contract_xu(self):
        rep, curve = fixture_xu()
        res = extend_curve(rep, curve, robber="x")
        self._check_contract(rep, curve, res, "L")

    def test_contract_xb(self):
        rep, curve = fixture_xb()
        res = extend_curve(rep, curve, robber="x")
        self._check_contract(rep, curve, res, "L")

    def test_pocket_contains_violator(self):
        rep, curve = fixture_xu()
        res = extend_curve(rep, curve, robber="x")
        _, _, _, _, region = pocket_between(rep, curve, res.curve)
        # a portion of x's string sits between the curves
        pocket = restrict(rep, region)
        bases = {pocket.provenance[v][0] for v in pocket.vertices()}
        assert "x" in bases
        # but not the whole string: x pokes out of the pocket on both sides
        assert all(
            pocket.provenance[v][0] != "x" or pocket.strings[v].points != rep.strings["x"].points
            for v in pocket.vertices()
        )


def top_bottom_of(rep):
    g = rep.graph
    u = min(topmost_vertices(rep), key=vkey)
    v = min(bottommost_vertices(rep), key=vkey)
    if u == v:
        return None
    p = shortest_path(g, u, v)
    if p is None or len(p) < 2:
        return None
    try:
        return top_bottom_curve(rep, u, v, p)
    except Exception:
        return None


class TestRestrictionLemmas:
    def test_subcurve_isometry_under_restriction(self):
        # an isometric curve clipped to a side region stays isometric there
        checked = 0
        for seed in range(12):
            rep = random_string_rep(10, seed)
            curve = top_bottom_of(rep)
            if curve is None:
                continue
            for side in ("L", "R"):
                sub = restrict(rep, side_region(rep, curve, side))
                try:
                    inner = reanchor_curve(curve, sub)
                except Exception:
                    continue
                path = curve_to_path(inner)
                g_b = sub.graph
                d = g_b.distances(path[0]).get(path[-1])
                assert d == len(path) - 1, (seed, side)
                checked += 1
        assert checked >= 8

    def test_subcurve_convexity_under_restriction(self):
        # girth-5 fixtures have unique shortest paths: convex curves abound
        checked = 0
        for seed in range(8):
            rep = girth5_string_rep(10, seed)
            curve = top_bottom_of(rep)
            if curve is None:
                continue
            g = rep.graph
            path = curve_to_path(curve)
            t = territory_of(g, path)
            if not is_convex_path_relative(g, t, path):
                continue
            assert is_convex_curve_relative(rep, curve, t)
            for side in ("L", "R"):
                sub = restrict(rep, side_region(rep, curve, side))
                try:
                    inner = reanchor_curve(curve, sub)
                except Exception:
                    continue
                p_in = curve_to_path(inner)
                g_b = sub.graph
                t_b = territory_of(g_b, p_in)
                assert is_convex_path_relative(g_b, t_b, p_in), (seed, side)
                checked += 1
        assert checked >= 4

    def test_convexity_monotone_under_territory_subset(self):
        rep = girth5_string_rep(9, 1)
        curve = top_bottom_of(rep)
        assert curve is not None
        g = rep.graph
        path = curve_to_path(curve)
        t = territory_of(g, path)
        if is_convex_curve_relative(rep, curve, t):
            smaller = set(sorted(t, key=vkey)[: len(t) // 2])
            assert is_convex_curve_relative(rep, curve, smaller)
        assert is_convex_curve_relative(rep, curve, set())
