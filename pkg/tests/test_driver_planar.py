import networkx as nx
import pytest

from pursuit.driver_planar import (
    PlanarCaptureDriver,
    c_upper_bound_report,
    capture_planar_active,
    capture_planar_classical,
    is_planar,
)
from pursuit.generators import (
    cycle_graph,
    grid_graph,
    named_graph,
    path_graph,
    random_planar_triangulation,
)
from pursuit.graphs import Graph
from pursuit.robbers import GreedyEvader, RandomWalkRobber, StallingRobber
from pursuit.solver import cop_wins


def from_nx(gx):
    return Graph(gx.nodes(), gx.edges())


FIXTURES = [
    ("path6", path_graph(6)),
    ("c5", cycle_graph(5)),
    ("c8", cycle_graph(8)),
    ("wheel6", from_nx(nx.wheel_graph(6))),
    ("k4", named_graph("k4")),
    ("dodecahedron", named_graph("dodecahedron")),
    ("icosahedron", named_graph("icosahedron")),
    ("grid4x4", grid_graph(4, 4)),
    ("grid8x8", grid_graph(8, 8)),
    ("tri16", random_planar_triangulation(16, 0)),
    ("tri28", random_planar_triangulation(28, 1)),
    ("tri40", random_planar_triangulation(40, 2)),
]


class TestPlanarityGate:
    def test_petersen_rejected(self):
        with pytest.raises(ValueError, match="planar"):
            PlanarCaptureDriver(named_graph("petersen"), "active4")

    def test_planarity_check(self):
        assert is_planar(grid_graph(5, 5))
        assert not is_planar(named_graph("petersen"))


class TestActiveFour:
    def test_captures_everywhere(self):
        for name, g in FIXTURES:
            for robber in (GreedyEvader(), StallingRobber(), RandomWalkRobber(7)):
                driver, t = capture_planar_active(g, robber)
                assert t.outcome == "captured", (name, robber, t.detail)

    def test_active_legality_every_ply(self):
        g = grid_graph(6, 5)
        driver, t = capture_planar_active(g, RandomWalkRobber(2))
        assert t.outcome == "captured"
        prev = None
        for rec in t.records:
            if rec.phase == "cop-turn" and prev is not None:
                for a, b in zip(prev, rec.cops):
                    assert a != b, "an active cop stayed"
                    assert g.has_edge(a, b)
            if rec.cops is not None:
                prev = rec.cops

    def test_territory_strictly_shrinks(self):
        g = random_planar_triangulation(30, 5)
        driver, t = capture_planar_active(g, GreedyEvader())
        assert t.outcome == "captured"
        sizes = [len(s.territory) for s in driver.step_log]
        assert all(a > b for a, b in zip(sizes, sizes[1:]))

    def test_solver_agrees_four_active_suffice_small(self):
        # independent confirmation on n <= 12 planar fixtures
        small = [
            path_graph(5),
            cycle_graph(6),
            from_nx(nx.wheel_graph(6)),
            named_graph("k4"),
            grid_graph(3, 3),
            random_planar_triangulation(10, 3),
        ]
        for g in small:
            k = 1
            while not cop_wins(g, k, cops_active=True, robber_active=False).cop_wins:
                k += 1
            assert k <= 4, f"active cop number {k} exceeds four"


class TestClassicalThree:
    def test_captures_everywhere(self):
        for name, g in FIXTURES:
            driver, t = capture_planar_classical(g, GreedyEvader())
            assert t.outcome == "captured", (name, t.detail)

    def test_report_runs_both(self):
        report = c_upper_bound_report(named_graph("icosahedron"), GreedyEvader)
        assert report["classical_3cop"][1].outcome == "captured"
        assert report["active_4cop"][1].outcome == "captured"

    def test_report_k4(self):
        report = c_upper_bound_report(named_graph("k4"), StallingRobber)
        assert report["classical_3cop"][1].outcome == "captured"
        assert report["active_4cop"][1].outcome == "captured"
