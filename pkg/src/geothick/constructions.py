"""Layered drawings realising the upper bounds: two rings, convex pages, bipartite rows.

Every generator here hands its output to the exact verifier before
returning; the two-ring layout additionally searches its free geometric
parameters until the verifier accepts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import RationalPoint, integer_coordinates
from .model import CompleteBipartite, CompleteGraph, LayeredDrawing, edge_set
from .verifier import layer_conflicts, verify

ANGULAR_RESOLUTION = 10**9
MAX_ATTEMPTS = 40


class ConstructionError(ValueError):
    pass


class BadRingSize(ConstructionError):
    pass


class IndexOutOfRange(ConstructionError):
    pass


class ParameterSearchFailed(RuntimeError):
    pass


# -- zigzag paths -------------------------------------------------------------


@dataclass(frozen=True)
class ZigzagPath:
    k: int
    start: int
    sequence: tuple[int, ...]

    @property
    def edges(self) -> list[tuple[int, int]]:
        s = self.sequence
        return [(s[i], s[i + 1]) for i in range(len(s) - 1)]

    @property
    def antipodal_edge(self) -> tuple[int, int]:
        (edge,) = [e for e in self.edges if (e[0] - e[1]) % self.k == self.k // 2]
        return edge


def _zigzag_sequence(k: int, start: int) -> tuple[int, ...]:
    seq = [start]
    step = 1
    while len(seq) < k:
        seq.append((start + step) % k)
        if len(seq) < k:
            seq.append((start - step) % k)
        step += 1
    return tuple(seq)


def zigzag_path(k: int, start: int) -> ZigzagPath:
    """Hamiltonian path ``start, start+1, start-1, start+2, ...`` on ring indices mod k."""
    if k % 2 or k < 4:
        raise BadRingSize(f"ring size must be even and at least 4, got {k}")
    if not 0 <= start < k // 2:
        raise IndexOutOfRange(f"path index {start} outside 0..{k // 2 - 1}")
    return ZigzagPath(k, start, _zigzag_sequence(k, start))


def _ring_zigzag(k: int, start: int) -> ZigzagPath:
    # the two-vertex ring of K_4 degenerates to a single edge
    if k == 2:
        return ZigzagPath(2, start, (start, 1 - start))
    return zigzag_path(k, start)


# -- rational trigonometry ----------------------------------------------------


def _rational(value: float, resolution: int) -> Fraction:
    return Fraction(round(value * resolution), resolution)


def _polar(radius: Fraction, angle: float, resolution: int = ANGULAR_RESOLUTION) -> tuple[Fraction, Fraction]:
    return (
        radius * _rational(math.cos(angle), resolution),
        radius * _rational(math.sin(angle), resolution),
    )


# -- two-ring construction ----------------------------------------------------


@dataclass(frozen=True)
class TwoRingParameters:
    inner_radius: Fraction = Fraction(1)
    outer_radius: Fraction = Fraction(64)
    inner_offset: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    angular_resolution: int = ANGULAR_RESOLUTION
    # outer ring angle relative to the inner ring, as a fraction of a full turn
    outer_rotation: Fraction | None = None

    def __post_init__(self):
        ox, oy = self.inner_offset
        # |offset| < outer - inner, compared without square roots
        gap = self.outer_radius - self.inner_radius
        if gap <= 0 or ox * ox + oy * oy >= gap * gap:
            raise ConstructionError("inner ring must sit strictly inside the outer ring")
        if self.angular_resolution < 1:
            raise ConstructionError("angular_resolution must be positive")


def default_outer_rotation(k: int) -> Fraction:
    """Quarter turn plus a quarter ring step, as a fraction of a full turn.

    Outer vertex ``j`` then points along the middle of the direction cone in
    which inner zigzag ``j mod k/2`` is strictly monotone.
    """
    return Fraction(1, 4) + Fraction(1, 4 * k)


def _ring_points(k: int, params: TwoRingParameters) -> tuple[list[RationalPoint], list[RationalPoint]]:
    rot = params.outer_rotation if params.outer_rotation is not None else default_outer_rotation(k)
    res = params.angular_resolution
    ox, oy = params.inner_offset
    inner = []
    for j in range(k):
        x, y = _polar(params.inner_radius, 2 * math.pi * j / k, res)
        inner.append(RationalPoint(ox + x, oy + y))
    outer = []
    for j in range(k):
        x, y = _polar(params.outer_radius, 2 * math.pi * (float(rot) + j / k), res)
        outer.append(RationalPoint(x, y))
    return inner, outer


def _outer_path_for(k: int, pair: frozenset[int]) -> ZigzagPath:
    for m in range(max(1, k // 2)):
        path = _ring_zigzag(k, m)
        if frozenset(path.antipodal_edge) == pair:
            return path
    raise AssertionError(f"no zigzag path carries antipodal pair {sorted(pair)}")


def _layer_edges(k: int, inner_index: int, outer_pair: frozenset[int]) -> list[tuple[int, int]]:
    """Edges of one layer; inner vertices are ``0..k-1``, outer ``k..2k-1``."""
    outer_path = _outer_path_for(k, outer_pair)
    edges = [(k + u, k + v) for u, v in outer_path.edges]
    for v in sorted(outer_pair):
        edges.extend((i, k + v) for i in range(k))
    edges.extend(_ring_zigzag(k, inner_index).edges)
    return edges


def _pair_layers(k: int, coords) -> dict[int, frozenset[int]] | None:
    """Match each inner zigzag with an outer antipodal pair whose layer is crossing-free."""
    half = max(1, k // 2)
    pairs = [frozenset({j, (j + k // 2) % k}) for j in range(half)]

    cache: dict[tuple[int, int], bool] = {}

    def feasible(ell, j):
        if (ell, j) not in cache:
            cache[ell, j] = not layer_conflicts(coords, _layer_edges(k, ell, pairs[j]))
        return cache[ell, j]

    chosen: dict[int, int] = {}

    def rec(ell):
        if ell == half:
            return True
        # try the pair with the same index first, then rotate
        for step in range(half):
            j = (ell + step) % half
            if j in chosen.values() or not feasible(ell, j):
                continue
            chosen[ell] = j
            if rec(ell + 1):
                return True
            del chosen[ell]
        return False

    if not rec(0):
        return None
    return {ell: pairs[j] for ell, j in chosen.items()}


def _assemble(k: int, inner, outer, pairing, params) -> LayeredDrawing:
    n = 2 * k
    layer_of: dict[tuple[int, int], int] = {}
    for ell, pair in sorted(pairing.items()):
        for u, v in _layer_edges(k, ell, pair):
            layer_of[min(u, v), max(u, v)] = ell
    edges = tuple((u, v, layer_of[u, v]) for u, v in edge_set(CompleteGraph(n)))
    rot = params.outer_rotation if params.outer_rotation is not None else default_outer_rotation(k)
    meta = {
        "construction": "two-ring",
        "outer_radius": str(params.outer_radius),
        "inner_offset": [str(params.inner_offset[0]), str(params.inner_offset[1])],
        "outer_rotation": str(rot),
        "pairing": {str(ell): sorted(pair) for ell, pair in sorted(pairing.items())},
    }
    return LayeredDrawing(CompleteGraph(n), tuple(inner + outer), edges, len(pairing), meta)


def _try_parameters(k: int, params: TwoRingParameters) -> LayeredDrawing | None:
    inner, outer = _ring_points(k, params)
    pts = inner + outer
    if len(set(pts)) != len(pts):
        return None
    coords = integer_coordinates(pts)
    pairing = _pair_layers(k, coords)
    if pairing is None:
        return None
    drawing = _assemble(k, inner, outer, pairing, params)
    # edge-disjointness of the layers is a property of the zigzags; make sure
    if len(drawing.edges) != len(edge_set(drawing.graph)):
        return None
    return drawing if verify(drawing).valid else None


def escalation_schedule(k: int, max_attempts: int = MAX_ATTEMPTS):
    """Yield parameter sets: outer radius grows 8x, inner offset halves within each radius.

    The inner ring is pushed along the bisector of the wedge between two
    neighbouring outer diameters, far enough that no diameter meets it.
    """
    rot = default_outer_rotation(k)
    bisector = 2 * math.pi * (float(rot) + 1 / (2 * k))
    half_wedge = math.sin(math.pi / k)
    min_offset = 1.05 / half_wedge
    attempts = 0
    radius = 8
    while attempts < max_attempts:
        offset = radius * math.tan(math.pi / k) / 2 if k > 2 else radius / 2
        while offset > min_offset and attempts < max_attempts:
            mag = Fraction(offset).limit_denominator(1000)
            ox, oy = _polar(mag, bisector)
            yield TwoRingParameters(Fraction(1), Fraction(radius), (ox, oy), ANGULAR_RESOLUTION, rot)
            attempts += 1
            offset /= 2
        radius *= 8


def two_ring_layout(n: int, params: TwoRingParameters | None = None) -> LayeredDrawing:
    """K_n (n divisible by 4) on two nested rings of n/2 vertices in n/4 layers."""
    if n < 4 or n % 4:
        raise ConstructionError(f"two-ring layout needs a positive multiple of 4, got {n}")
    k = n // 2
    candidates = [params] if params is not None else escalation_schedule(k)
    tried = 0
    for candidate in candidates:
        tried += 1
        drawing = _try_parameters(k, candidate)
        if drawing is not None:
            return drawing
    raise ParameterSearchFailed(f"no verified two-ring placement for K_{n} after {tried} attempts")


def delete_vertices(drawing: LayeredDrawing, keep: int) -> LayeredDrawing:
    """Restrict a complete-graph drawing to its first ``keep`` vertices, dropping empty layers."""
    edges = [(u, v, lay) for u, v, lay in drawing.edges if u < keep and v < keep]
    used = sorted({lay for _, _, lay in edges})
    renumber = {old: new for new, old in enumerate(used)}
    edges = tuple((u, v, renumber[lay]) for u, v, lay in edges)
    meta = dict(drawing.metadata)
    if keep != drawing.graph.vertex_count:
        meta["deleted_from"] = drawing.graph.vertex_count
    return LayeredDrawing(CompleteGraph(keep), drawing.points[:keep], edges, max(1, len(used)), meta)


def complete_layout(n: int) -> LayeredDrawing:
    """Verified drawing of K_n with ceil(n/4) layers."""
    if n < 1:
        raise ConstructionError("n must be positive")
    base = two_ring_layout(4 * math.ceil(n / 4))
    drawing = delete_vertices(base, n)
    _require_valid(drawing)
    return drawing


# -- convex book embedding ----------------------------------------------------


def regular_polygon(n: int, radius: int = 1, resolution: int = ANGULAR_RESOLUTION) -> list[RationalPoint]:
    return [RationalPoint(*_polar(Fraction(radius), 2 * math.pi * j / n, resolution)) for j in range(n)]


def convex_layout(n: int) -> LayeredDrawing:
    """K_n on a convex polygon, one zigzag path per page."""
    if n < 3:
        raise ConstructionError("convex layout needs n >= 3")
    m = n + (n % 2)
    pts = regular_polygon(m)
    layer_of = {}
    for page in range(m // 2):
        for u, v in zigzag_path(m, page).edges:
            layer_of[min(u, v), max(u, v)] = page
    edges = tuple((u, v, layer_of[u, v]) for u, v in edge_set(CompleteGraph(m)))
    drawing = delete_vertices(LayeredDrawing(CompleteGraph(m), tuple(pts), edges, m // 2), n)
    drawing = LayeredDrawing(drawing.graph, drawing.points, drawing.edges, drawing.layer_count,
                             {"construction": "convex"})
    _require_valid(drawing)
    return drawing


# -- complete bipartite -------------------------------------------------------


def bipartite_layout(a: int, b: int) -> LayeredDrawing:
    """K_{a,b}: the larger side on a horizontal line, the smaller split above and below.

    Each layer holds the stars of one vertex above and one below the line.
    """
    graph = CompleteBipartite(a, b)
    red = list(range(a))
    blue = list(range(a, a + b))
    line, off = (blue, red) if a <= b else (red, blue)
    pos: dict[int, RationalPoint] = {}
    for i, v in enumerate(line):
        pos[v] = RationalPoint(i, 0)
    span = Fraction(len(line) - 1, 2)
    half = math.ceil(len(off) / 2)
    layer_of_vertex = {}
    for i, v in enumerate(off):
        slot, below = divmod(i, 2)
        # distinct heights and a slight horizontal drift keep vertices off other edges
        y = Fraction(slot + 1) * (-1 if below else 1)
        x = span + Fraction(slot, 7) + (Fraction(1, 13) if below else 0)
        pos[v] = RationalPoint(x, y)
        layer_of_vertex[v] = slot
    edges = []
    for u, v in edge_set(graph):
        hub = u if u in layer_of_vertex else v
        edges.append((u, v, layer_of_vertex[hub]))
    points = tuple(pos[v] for v in range(a + b))
    drawing = LayeredDrawing(graph, points, tuple(edges), half, {"construction": "bipartite-rows"})
    _require_valid(drawing)
    return drawing


def _require_valid(drawing: LayeredDrawing) -> None:
    report = verify(drawing)
    if not report.valid:
        raise AssertionError(f"construction produced an invalid drawing: {report.to_json()}")


def layer_sizes(drawing: LayeredDrawing) -> Sequence[int]:
    sizes = [0] * drawing.layer_count
    for _, _, lay in drawing.edges:
        sizes[lay] += 1
    return sizes
