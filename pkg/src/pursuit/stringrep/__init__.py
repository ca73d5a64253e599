"""Exact computational geometry for string representations."""

from .curves import (
    Curve,
    CurveError,
    CurvePiece,
    INTERSECTS,
    LEFT,
    RIGHT,
    curve_to_path,
    relate_curve,
    side_of,
    side_of_points,
    top_bottom_curve,
)
from .geometry import Point, Polyline
from .model import (
    Crossing,
    Representation,
    RepresentationError,
    Segment,
    graph_of,
    load_representation,
    read_representation,
    rectangle_graph,
    rectangles_to_representation,
    save_representation,
    write_representation,
)
from .regions import (
    Region,
    RegionDegeneracyError,
    RestrictedRep,
    prune_dominated,
    reanchor_curve,
    restrict,
    side_region,
    subrepresentation,
    two_curve_region,
)

__all__ = [
    "Curve",
    "CurveError",
    "CurvePiece",
    "Crossing",
    "INTERSECTS",
    "LEFT",
    "Point",
    "Polyline",
    "Region",
    "RegionDegeneracyError",
    "Representation",
    "RepresentationError",
    "RestrictedRep",
    "RIGHT",
    "Segment",
    "curve_to_path",
    "graph_of",
    "load_representation",
    "prune_dominated",
    "read_representation",
    "reanchor_curve",
    "rectangle_graph",
    "rectangles_to_representation",
    "relate_curve",
    "restrict",
    "save_representation",
    "side_of",
    "side_of_points",
    "side_region",
    "subrepresentation",
    "top_bottom_curve",
    "two_curve_region",
    "write_representation",
]
