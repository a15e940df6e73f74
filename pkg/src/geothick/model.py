"""Graphs, layered drawings and their JSON interchange format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Mapping, Sequence, Union

from .geometry import RationalPoint, to_fraction

FORMAT_VERSION = 1


class ParseError(ValueError):
    """Malformed drawing document; ``where`` names the line or field."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class InvariantViolation(ValueError):
    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class CompleteGraph:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("complete graph needs at least one vertex")

    @property
    def vertex_count(self) -> int:
        return self.n

    @property
    def label(self) -> str:
        return f"K{self.n}"


@dataclass(frozen=True)
class CompleteBipartite:
    """``K_{a,b}``: vertices ``0..a-1`` are red, ``a..a+b-1`` blue."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("both sides of a complete bipartite graph must be non-empty")

    @property
    def vertex_count(self) -> int:
        return self.a + self.b

    @property
    def label(self) -> str:
        return f"K{self.a},{self.b}"


@dataclass(frozen=True)
class ExplicitEdges:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("negative vertex count")
        norm = []
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def label(self) -> str:
        return f"G({self.vertex_count},{len(self.edges)})"


GraphSpec = Union[CompleteGraph, CompleteBipartite, ExplicitEdges]


def edge_set(graph: GraphSpec) -> list[tuple[int, int]]:
    """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
    if isinstance(graph, CompleteGraph):
        return list(combinations(range(graph.n), 2))
    if isinstance(graph, CompleteBipartite):
        a, b = graph.a, graph.b
        return [(u, v) for u in range(a) for v in range(a, a + b)]
    if isinstance(graph, ExplicitEdges):
        return list(graph.edges)
    raise TypeError(f"not a graph spec: {graph!r}")


@dataclass(frozen=True)
class LayeredDrawing:
    """A vertex placement plus a layer per edge.

    Construction only checks that indices are in range; the semantic
    invariants (coverage, distinct points, no empty layer) are reported by
    :meth:`invariant_problems` so that broken drawings can still be
    inspected and verified.
    """

    graph: GraphSpec
    points: tuple[RationalPoint, ...]
    edges: tuple[tuple[int, int, int], ...]
    layer_count: int
    metadata: Mapping[str, Any] = field(default_factory=dict, hash=False, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.layer_count < 1:
            raise ValueError("layer_count must be positive")
        if len(self.points) != self.graph.vertex_count:
            raise ValueError(
                f"{len(self.points)} points for a graph on {self.graph.vertex_count} vertices"
            )
        n = len(self.points)
        for u, v, layer in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) references a missing vertex")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not 0 <= layer < self.layer_count:
                raise ValueError(f"edge ({u},{v}) on layer {layer} outside 0..{self.layer_count - 1}")

    def layer(self, index: int) -> list[tuple[int, int]]:
        return [(u, v) for u, v, lay in self.edges if lay == index]

    def coverage_problems(self) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
        """``(missing, extra)`` edges relative to the graph spec."""
        want = set(edge_set(self.graph))
        seen: set[tuple[int, int]] = set()
        extra = []
        for u, v, _ in self.edges:
            e = (min(u, v), max(u, v))
            if e not in want or e in seen:
                extra.append(e)
            seen.add(e)
        missing = sorted(want - seen)
        return missing, extra

    def invariant_problems(self) -> list[str]:
        problems = []
        index: dict[RationalPoint, int] = {}
        for i, p in enumerate(self.points):
            if p in index:
                problems.append(f"distinct points: vertices {index[p]} and {i} coincide")
            index.setdefault(p, i)
        missing, extra = self.coverage_problems()
        if missing or extra:
            problems.append(f"coverage: missing {missing}, extra {extra}")
        used = {layer for _, _, layer in self.edges}
        # an edgeless graph still occupies one (empty) layer
        if self.edges:
            unused = sorted(set(range(self.layer_count)) - used)
            if unused:
                problems.append(f"layers: unused layer ids {unused}")
        elif self.layer_count != 1:
            problems.append("layers: an edgeless drawing has exactly one layer")
        return problems

    def with_layers(self, assignment: Sequence[int]) -> "LayeredDrawing":
        """Copy with edge ``i`` moved to ``assignment[i]``; layer_count is recomputed."""
        edges = tuple((u, v, int(lay)) for (u, v, _), lay in zip(self.edges, assignment))
        count = max((lay for _, _, lay in edges), default=0) + 1
        return LayeredDrawing(self.graph, self.points, edges, count, dict(self.metadata))


# -- serialization -----------------------------------------------------------


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: Any, where: str) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}", where)
    num, slash, den = text.strip().partition("/")
    try:
        numerator = int(num)
        denominator = int(den) if slash else 1
    except ValueError:
        raise ParseError(f"not a rational number: {text!r}", where) from None
    if denominator == 0:
        raise ParseError(f"zero denominator in {text!r}", where)
    return Fraction(numerator, denominator)


def graph_to_json(graph: GraphSpec) -> dict:
    if isinstance(graph, CompleteGraph):
        return {"type": "complete", "n": graph.n}
    if isinstance(graph, CompleteBipartite):
        return {"type": "complete_bipartite", "a": graph.a, "b": graph.b}
    return {
        "type": "explicit",
        "vertex_count": graph.vertex_count,
        "edges": [list(e) for e in graph.edges],
    }


def _int_field(obj: Mapping, key: str, where: str) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"expected integer {key!r}", where)
    return value


def graph_from_json(obj: Any, where: str = "graph") -> GraphSpec:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    kind = obj.get("type")
    try:
        if kind == "complete":
            return CompleteGraph(_int_field(obj, "n", where))
        if kind == "complete_bipartite":
            return CompleteBipartite(_int_field(obj, "a", where), _int_field(obj, "b", where))
        if kind == "explicit":
            edges = obj.get("edges")
            if not isinstance(edges, list):
                raise ParseError("expected an edge list", f"{where}.edges")
            pairs = []
            for i, e in enumerate(edges):
                if (not isinstance(e, list) or len(e) != 2
                        or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
                    raise ParseError("expected [u, v]", f"{where}.edges[{i}]")
                pairs.append((e[0], e[1]))
            return ExplicitEdges(_int_field(obj, "vertex_count", where), tuple(pairs))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), where) from None
    raise ParseError(f"unknown graph type {kind!r}", f"{where}.type")


def _dump(value) -> str:
    return json.dumps(value, separators=(", ", ": "))


def serialize(drawing: LayeredDrawing) -> str:
    """Render the JSON document: fixed key order, one point/edge per line."""
    lines = ["{"]
    lines.append(f'  "version": {FORMAT_VERSION},')
    lines.append(f'  "graph": {_dump(graph_to_json(drawing.graph))},')
    pts = [_dump([format_rational(p.x), format_rational(p.y)]) for p in drawing.points]
    lines.append('  "points": [' + ("" if pts else "],"))
    if pts:
        lines.extend(f"    {p}," for p in pts[:-1])
        lines.append(f"    {pts[-1]}")
        lines.append("  ],")
    lines.append(f'  "layer_count": {drawing.layer_count},')
    edges = [_dump(list(e)) for e in drawing.edges]
    tail = "," if drawing.metadata else ""
    if edges:
        lines.append('  "edges": [')
        lines.extend(f"    {e}," for e in edges[:-1])
        lines.append(f"    {edges[-1]}")
        lines.append(f"  ]{tail}")
    else:
        lines.append(f'  "edges": []{tail}')
    if drawing.metadata:
        lines.append(f'  "metadata": {json.dumps(drawing.metadata, sort_keys=True)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def deserialize(text: str, strict: bool = True) -> LayeredDrawing:
    """Parse a drawing document.

    With ``strict`` (the default) any failed drawing invariant raises
    :class:`InvariantViolation`; otherwise the drawing is returned as-is for
    the verifier to judge.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", "document")
    if doc.get("version") != FORMAT_VERSION:
        raise ParseError(f"unsupported version {doc.get('version')!r}", "version")
    for key in ("graph", "points", "layer_count", "edges"):
        if key not in doc:
            raise ParseError("missing field", key)
    graph = graph_from_json(doc["graph"])

    raw_points = doc["points"]
    if not isinstance(raw_points, list):
        raise ParseError("expected a list", "points")
    points = []
    for i, p in enumerate(raw_points):
        if not isinstance(p, list) or len(p) != 2:
            raise ParseError("expected [x, y]", f"points[{i}]")
        points.append(
            RationalPoint(parse_rational(p[0], f"points[{i}][0]"), parse_rational(p[1], f"points[{i}][1]"))
        )

    layer_count = doc["layer_count"]
    if not isinstance(layer_count, int) or isinstance(layer_count, bool):
        raise ParseError("expected an integer", "layer_count")

    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise ParseError("expected a list", "edges")
    edges = []
    for i, e in enumerate(raw_edges):
        if (not isinstance(e, list) or len(e) != 3
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise ParseError("expected [u, v, layer]", f"edges[{i}]")
        edges.append(tuple(e))

    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ParseError("expected an object", "metadata")

    try:
        drawing = LayeredDrawing(graph, tuple(points), tuple(edges), layer_count, metadata)
    except ValueError as exc:
        raise InvariantViolation([f"structure: {exc}"]) from None
    if strict:
        problems = drawing.invariant_problems()
        if problems:
            raise InvariantViolation(problems)
    return drawing


def point(x, y) -> RationalPoint:
    return RationalPoint(to_fraction(x), to_fraction(y))
