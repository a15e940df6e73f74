"""Geometric thickness of complete and complete bipartite graphs.

Constructions, exact verification, bound formulas, the 15-point case audit
and a placement search, all over exact rational coordinates.
"""

from .geometry import CrossKind, RationalPoint, Segment, classify_crossing, convex_hull, orientation
from .model import (
    CompleteBipartite,
    CompleteGraph,
    ExplicitEdges,
    LayeredDrawing,
    deserialize,
    edge_set,
    serialize,
)
from .verifier import VerificationReport, crossing_graph, greedy_layers, min_layers_fixed, verify

__all__ = [
    "CompleteBipartite",
    "CompleteGraph",
    "CrossKind",
    "ExplicitEdges",
    "LayeredDrawing",
    "RationalPoint",
    "Segment",
    "VerificationReport",
    "classify_crossing",
    "convex_hull",
    "crossing_graph",
    "deserialize",
    "edge_set",
    "greedy_layers",
    "min_layers_fixed",
    "orientation",
    "serialize",
    "verify",
]
