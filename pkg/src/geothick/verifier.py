"""Exact certification of layered drawings and layer minimisation for a fixed placement."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .geometry import (
    CrossKind,
    DuplicatePoint,
    RationalPoint,
    classify_raw,
    integer_coordinates,
)
from .model import GraphSpec, LayeredDrawing, edge_set


@dataclass
class VerificationReport:
    valid: bool
    violations: list[tuple[int, int, CrossKind]] = field(default_factory=list)
    coverage_errors: list[tuple[str, tuple[int, int]]] = field(default_factory=list)
    degenerate_vertices: list[tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [[i, j, kind.value] for i, j, kind in self.violations],
            "coverage_errors": [[what, list(e)] for what, e in self.coverage_errors],
            "degenerate_vertices": [list(p) for p in self.degenerate_vertices],
        }


def _coincident_pairs(points: Sequence[RationalPoint]) -> list[tuple[int, int]]:
    first: dict[RationalPoint, int] = {}
    pairs = []
    for i, p in enumerate(points):
        if p in first:
            pairs.append((first[p], i))
        else:
            first[p] = i
    return pairs


def layer_conflicts(coords, edges: Sequence[tuple[int, int]]) -> list[tuple[int, int, CrossKind]]:
    """All conflicting pairs among ``edges`` (indices into ``edges``)."""
    out = []
    segs = [(coords[u], coords[v]) for u, v in edges]
    for i in range(len(segs)):
        a, b = segs[i]
        for j in range(i + 1, len(segs)):
            kind = classify_raw(a, b, *segs[j])
            if kind.is_conflict:
                out.append((i, j, kind))
    return out


def verify(drawing: LayeredDrawing) -> VerificationReport:
    """Check distinct vertices, exact edge coverage, and crossing-free layers."""
    degenerate = _coincident_pairs(drawing.points)
    missing, extra = drawing.coverage_problems()
    coverage = [("missing", e) for e in missing] + [("extra", e) for e in extra]

    coords = integer_coordinates(drawing.points)
    by_layer: dict[int, list[int]] = {}
    for idx, (_, _, layer) in enumerate(drawing.edges):
        by_layer.setdefault(layer, []).append(idx)
    violations = []
    for layer in sorted(by_layer):
        members = by_layer[layer]
        local = [drawing.edges[i][:2] for i in members]
        for i, j, kind in layer_conflicts(coords, local):
            violations.append((members[i], members[j], kind))
    violations.sort()
    return VerificationReport(
        valid=not (violations or coverage or degenerate),
        violations=violations,
        coverage_errors=coverage,
        degenerate_vertices=degenerate,
    )


@dataclass
class CrossingGraph:
    """Conflict graph: one node per drawing edge, adjacent when the segments may not share a layer."""

    points: tuple[RationalPoint, ...]
    edges: tuple[tuple[int, int], ...]
    adjacency: list[set[int]]

    @property
    def conflict_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in sorted(nbrs) if i < j]

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])


def crossing_graph(points: Sequence[RationalPoint], edges: Sequence[tuple[int, int]]) -> CrossingGraph:
    points = tuple(points)
    pairs = _coincident_pairs(points)
    if pairs:
        i, j = pairs[0]
        raise DuplicatePoint(f"vertices {i} and {j} coincide")
    edges = tuple((u, v) for u, v, *_ in edges)
    coords = integer_coordinates(points)
    adjacency: list[set[int]] = [set() for _ in edges]
    for i, j, _ in layer_conflicts(coords, edges):
        adjacency[i].add(j)
        adjacency[j].add(i)
    return CrossingGraph(points, edges, adjacency)


# -- colouring ----------------------------------------------------------------


def _degeneracy_order(adjacency: list[set[int]]) -> list[int]:
    """Smallest-last order, reversed so the densest core is coloured first."""
    n = len(adjacency)
    deg = [len(a) for a in adjacency]
    removed = [False] * n
    order = []
    for _ in range(n):
        v = min((i for i in range(n) if not removed[i]), key=lambda i: (deg[i], i))
        removed[v] = True
        order.append(v)
        for w in adjacency[v]:
            if not removed[w]:
                deg[w] -= 1
    return order[::-1]


def _order(adjacency: list[set[int]], policy: str) -> list[int]:
    n = len(adjacency)
    if policy == "index":
        return list(range(n))
    if policy == "degree":
        return sorted(range(n), key=lambda i: (-len(adjacency[i]), i))
    if policy == "degeneracy":
        return _degeneracy_order(adjacency)
    raise ValueError(f"unknown order policy {policy!r}")


def greedy_colouring(adjacency: list[set[int]], policy: str = "degree") -> list[int]:
    colour = [-1] * len(adjacency)
    for v in _order(adjacency, policy):
        taken = {colour[w] for w in adjacency[v]}
        c = 0
        while c in taken:
            c += 1
        colour[v] = c
    return colour


def greedy_layers(points: Sequence[RationalPoint], graph: GraphSpec, order_policy: str = "degree") -> list[int]:
    """First-fit layer per edge of ``edge_set(graph)``; an edgeless graph gets no entries."""
    cg = crossing_graph(points, edge_set(graph))
    return greedy_colouring(cg.adjacency, order_policy)


def _greedy_clique(adjacency: list[set[int]]) -> list[int]:
    best: list[int] = []
    for start in sorted(range(len(adjacency)), key=lambda i: -len(adjacency[i])):
        clique = [start]
        cand = set(adjacency[start])
        while cand:
            v = max(cand, key=lambda i: (len(adjacency[i] & cand), -i))
            clique.append(v)
            cand &= adjacency[v]
        if len(clique) > len(best):
            best = clique
    return best


class _BudgetExceeded(Exception):
    pass


def _k_colour(adjacency: list[set[int]], k: int, budget: list[int], seed: list[int]) -> list[int] | None:
    """DSATUR backtracking for a proper k-colouring; ``seed`` is a clique to pre-colour."""
    n = len(adjacency)
    colour = [-1] * n
    # forbidden[v][c] counts coloured neighbours of v using c
    forbidden = [[0] * k for _ in range(n)]

    def assign(v, c):
        colour[v] = c
        for w in adjacency[v]:
            forbidden[w][c] += 1

    def unassign(v, c):
        colour[v] = -1
        for w in adjacency[v]:
            forbidden[w][c] -= 1

    for c, v in enumerate(seed):
        assign(v, c)

    def pick():
        best, key = -1, None
        for v in range(n):
            if colour[v] != -1:
                continue
            sat = sum(1 for c in range(k) if forbidden[v][c])
            kk = (sat, len(adjacency[v]), -v)
            if key is None or kk > key:
                best, key = v, kk
        return best

    def rec(used: int) -> bool:
        v = pick()
        if v == -1:
            return True
        budget[0] -= 1
        if budget[0] < 0:
            raise _BudgetExceeded
        # colours beyond the first unused one are symmetric
        for c in range(min(k, used + 1)):
            if forbidden[v][c]:
                continue
            assign(v, c)
            if rec(max(used, c + 1)):
                return True
            unassign(v, c)
        return False

    if rec(len(seed)):
        return colour
    return None


@dataclass
class LayerBound:
    """Bracket on the minimum layer count of a fixed placement.

    ``exact`` is False when the search budget ran out; ``assignment`` always
    realises ``upper`` layers.
    """

    lower: int
    upper: int
    assignment: list[int]
    exact: bool
    nodes: int = 0

    @property
    def chromatic(self) -> int | None:
        return self.upper if self.exact else None


def min_layers_fixed(
    points: Sequence[RationalPoint], graph: GraphSpec, budget: int = 10_000_000
) -> LayerBound:
    """Exact chromatic number of the crossing graph by branch and bound.

    The clique bound and a greedy colouring bracket the answer; DSATUR
    backtracking then tries ``upper - 1`` colours until it fails or the
    bracket closes.
    """
    edges = edge_set(graph)
    cg = crossing_graph(points, edges)
    adj = cg.adjacency
    if not edges:
        return LayerBound(1, 1, [], True)
    clique = _greedy_clique(adj)
    lower = max(1, len(clique))
    best = min(
        (greedy_colouring(adj, p) for p in ("degeneracy", "degree", "index")),
        key=lambda col: max(col) + 1,
    )
    upper = max(best) + 1
    remaining = [budget]
    exact = True
    while upper > lower:
        try:
            found = _k_colour(adj, upper - 1, remaining, clique[: upper - 1])
        except _BudgetExceeded:
            exact = False
            break
        if found is None:
            lower = upper
            break
        best, upper = found, max(found) + 1
    return LayerBound(lower, upper, best, exact, budget - max(remaining[0], 0))
