"""Triangulations, forced edges and coverage budgets for 15-point sets.

These checks instantiate, on one concrete point set at a time, the counting
argument that three triangulations cannot cover every segment between 15
points.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .geometry import (
    RationalPoint,
    check_distinct,
    classify_raw,
    convex_hull_raw,
    has_collinear_triple,
    integer_coordinates,
    orient_raw,
    twice_area_raw,
)


class PreconditionViolated(ValueError):
    pass


class DegenerateInput(ValueError):
    pass


class DomainError(ValueError):
    pass


Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _crosses(coords, e: Edge, f: Edge) -> bool:
    return classify_raw(coords[e[0]], coords[e[1]], coords[f[0]], coords[f[1]]).is_conflict


@dataclass
class Triangulation:
    points: tuple[RationalPoint, ...]
    edges: set[Edge]
    hull_size: int

    @property
    def expected_edge_count(self) -> int:
        return 3 * len(self.points) - 3 - self.hull_size


def _segment_order(coords) -> list[Edge]:
    """All segments, shortest first (exact squared lengths, ties by index)."""
    def sq(e):
        (ax, ay), (bx, by) = coords[e[0]], coords[e[1]]
        return (ax - bx) ** 2 + (ay - by) ** 2
    return sorted(combinations(range(len(coords)), 2), key=lambda e: (sq(e), e))


def _maximal_plane_graph(coords, seed: Sequence[Edge], order: Sequence[Edge]) -> set[Edge]:
    edges = list(seed)
    present = set(edges)
    for e in order:
        if e in present:
            continue
        if not any(_crosses(coords, e, f) for f in edges):
            edges.append(e)
            present.add(e)
    return present


def _hull_edges(hull: Sequence[int]) -> list[Edge]:
    return [_edge(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def triangulate(points: Sequence[RationalPoint]) -> Triangulation:
    """Greedy triangulation: insert segments by increasing length while they cross nothing.

    A maximal crossing-free set of segments on a point set is a triangulation.
    """
    points = tuple(points)
    if len(points) < 3:
        raise DegenerateInput("need at least three points")
    try:
        check_distinct(points)
    except ValueError as exc:
        raise DegenerateInput(str(exc)) from None
    coords = integer_coordinates(points)
    hull = convex_hull_raw(coords)
    if len(hull) < 3:
        raise DegenerateInput("all points are collinear")
    edges = _maximal_plane_graph(coords, _hull_edges(hull), _segment_order(coords))
    return Triangulation(points, edges, len(hull))


# -- forced edge lemmas ---------------------------------------------------------


@dataclass
class ForcedEdgeWitness:
    apex: int
    furthest: int
    crossers: list[Edge]

    @property
    def edge(self) -> Edge:
        return _edge(self.apex, self.furthest)


@dataclass
class LemmaOneResult:
    forced: bool
    witnesses: list[ForcedEdgeWitness]

    @property
    def edges(self) -> list[Edge]:
        return [w.edge for w in self.witnesses]


@dataclass
class ForcedPairWitness:
    apex: int
    first: int
    second: int
    # segments crossing first-second / apex-second
    cross_inner: list[Edge]
    cross_outer: list[Edge]
    # crossers of the wrong shape, or pairs of crossers that fail to cross each other
    violations: list[str] = field(default_factory=list)

    @property
    def pair(self) -> tuple[Edge, Edge]:
        return _edge(self.first, self.second), _edge(self.apex, self.second)


@dataclass
class LemmaTwoResult:
    certified: bool
    witnesses: list[ForcedPairWitness]


def _prepare(points: Sequence[RationalPoint]):
    points = tuple(points)
    try:
        check_distinct(points)
    except ValueError as exc:
        raise PreconditionViolated(str(exc)) from None
    coords = integer_coordinates(points)
    triple = has_collinear_triple(coords)
    if triple is not None:
        raise PreconditionViolated(f"points {triple} are collinear")
    return points, coords


def _ranked_by_height(coords, base: Edge, candidates: Sequence[int], needed: int) -> list[int]:
    """Candidates sorted by distance from the line through ``base``, furthest first.

    Distances are compared as doubled triangle areas over a shared base, so
    the comparison is exact. Ties among the top ``needed`` are refused.
    """
    a, b = coords[base[0]], coords[base[1]]
    height = {c: abs(twice_area_raw(a, b, coords[c])) for c in candidates}
    ranked = sorted(candidates, key=lambda c: (-height[c], c))
    if len(ranked) < needed:
        raise PreconditionViolated(f"need {needed} interior points, have {len(ranked)}")
    for i in range(needed):
        if i + 1 < len(ranked) and height[ranked[i]] == height[ranked[i + 1]]:
            raise PreconditionViolated(
                f"points {ranked[i]} and {ranked[i + 1]} are equidistant from edge {base}"
            )
    return ranked


def _crossers(coords, target: Edge) -> list[Edge]:
    return [
        e for e in combinations(range(len(coords)), 2)
        if e != target and _crosses(coords, e, target)
    ]


def _triangle_setup(points):
    points, coords = _prepare(points)
    hull = convex_hull_raw(coords)
    if len(hull) != 3:
        raise PreconditionViolated(f"convex hull has {len(hull)} vertices, expected 3")
    interior = [i for i in range(len(points)) if i not in hull]
    return points, coords, hull, interior


def _opposite(hull: Sequence[int], apex: int) -> Edge:
    others = [h for h in hull if h != apex]
    return _edge(*others)


def _lemma_one(coords, apex: int, base: Edge, interior: Sequence[int]) -> ForcedEdgeWitness:
    first = _ranked_by_height(coords, base, interior, 1)[0]
    return ForcedEdgeWitness(apex, first, _crossers(coords, _edge(apex, first)))


def forced_edge_lemma1(points: Sequence[RationalPoint]) -> LemmaOneResult:
    """For each hull corner, the segment to the interior point furthest from the opposite side.

    The segment is certified forced when no segment between two input points
    crosses it.
    """
    _, coords, hull, interior = _triangle_setup(points)
    if not interior:
        raise PreconditionViolated("no interior points")
    witnesses = [_lemma_one(coords, p, _opposite(hull, p), interior) for p in hull]
    return LemmaOneResult(all(not w.crossers for w in witnesses), witnesses)


def forced_pair_lemma2(points: Sequence[RationalPoint]) -> LemmaTwoResult:
    """Certify that each corner forces at least one of (first, second) and (corner, second).

    ``first``/``second`` are the furthest and next-furthest interior points
    from the opposite side. Every crosser of first-second must leave the
    corner, every crosser of corner-second must leave ``first``, and each such
    pair of crossers must itself cross.
    """
    _, coords, hull, interior = _triangle_setup(points)
    witnesses = []
    for p in hull:
        first, second = _ranked_by_height(coords, _opposite(hull, p), interior, 2)[:2]
        inner = _crossers(coords, _edge(first, second))
        outer = _crossers(coords, _edge(p, second))
        problems = []
        problems += [f"{e} crosses {_edge(first, second)} without using {p}" for e in inner if p not in e]
        problems += [f"{e} crosses {_edge(p, second)} without using {first}" for e in outer if first not in e]
        for e in inner:
            for f in outer:
                if not _crosses(coords, e, f):
                    problems.append(f"{e} and {f} do not cross")
        witnesses.append(ForcedPairWitness(p, first, second, inner, outer, problems))
    return LemmaTwoResult(all(not w.violations for w in witnesses), witnesses)


# -- budgets ------------------------------------------------------------------


@dataclass(frozen=True)
class CaseBudget:
    hull_size: int
    per_triangulation_cap: int
    forced_shared: int
    total_cap: int


def coverage_budget(n: int, hull_size: int) -> CaseBudget:
    """Most segments three triangulations of an n-point set with the given hull can cover.

    A triangulation has ``3n - 3 - h`` edges. Edges forced into every
    triangulation can be counted once; everything else three times.
    """
    h = hull_size
    if not 3 <= h <= n:
        raise DomainError(f"hull size {h} outside 3..{n}")
    size = 3 * n - 3 - h
    if h == 3:
        if n < 5:
            raise DomainError("the triangular-hull case needs two interior points")
        # Z: 3 hull edges + 9 corner edges; every triangulation holds >= 9 of them
        zone, forced = 12, 9
        per = size - forced
        return CaseBudget(h, per, zone, 3 * per + zone)
    if h == 4:
        if n < 5:
            raise DomainError("the quadrilateral case needs an interior point")
        forced = 5
        per = size - forced
        return CaseBudget(h, per, forced, 3 * per + forced)
    per = size - h
    return CaseBudget(h, per, h, 3 * per + h)


# -- audit --------------------------------------------------------------------


def _point_in_triangle(coords, tri: Sequence[int], p: int) -> bool:
    a, b, c = (coords[i] for i in tri)
    s = [orient_raw(*a, *b, *coords[p]), orient_raw(*b, *c, *coords[p]), orient_raw(*c, *a, *coords[p])]
    return all(x > 0 for x in s) or all(x < 0 for x in s)


def _min_hitting(pairs: Sequence[tuple[Edge, Edge]]) -> int:
    """Fewest distinct edges meeting every pair."""
    universe = sorted({e for pair in pairs for e in pair})
    for size in range(len(universe) + 1):
        for pick in combinations(universe, size):
            chosen = set(pick)
            if all(chosen & set(pair) for pair in pairs):
                return size
    return len(universe)


@dataclass
class AuditReport:
    hull_size: int
    budget: CaseBudget
    forced_edges: list[Edge]
    lemma1_ok: bool | None
    lemma2_ok: bool | None
    # lower bound on Z-edges in any triangulation; only for triangular hulls
    distinct_forced_in_zone: int | None
    greedy_covered: int
    notes: list[str] = field(default_factory=list)

    @property
    def below_total(self) -> bool:
        return self.budget.total_cap < 105

    @property
    def ok(self) -> bool:
        lemmas = self.lemma1_ok is not False and self.lemma2_ok is not False
        return (
            lemmas
            and self.below_total
            and self.greedy_covered <= self.budget.total_cap
            and (self.distinct_forced_in_zone is None or self.distinct_forced_in_zone >= 9)
        )

    def to_json(self) -> dict:
        return {
            "hull_size": self.hull_size,
            "total_cap": self.budget.total_cap,
            "lemma1_ok": self.lemma1_ok,
            "lemma2_ok": self.lemma2_ok,
            "distinct_forced_in_zone": self.distinct_forced_in_zone,
            "greedy_covered": self.greedy_covered,
            "ok": self.ok,
            "notes": self.notes,
        }


def greedy_triangulations(coords, count: int, seed_edges: Sequence[Edge]) -> list[set[Edge]]:
    """``count`` triangulations, each preferring segments the previous ones missed.

    Heuristic only: nothing claims the union is as large as possible.
    """
    order = _segment_order(coords)
    covered: set[Edge] = set()
    out = []
    for _ in range(count):
        fresh = [e for e in order if e not in covered]
        stale = [e for e in order if e in covered]
        tri = _maximal_plane_graph(coords, list(seed_edges), fresh + stale)
        covered |= tri
        out.append(tri)
    return out


def hull_case_audit(points: Sequence[RationalPoint]) -> AuditReport:
    """Run the hull-size case analysis on one 15-point set."""
    points, coords = _prepare(points)
    if len(points) != 15:
        raise PreconditionViolated(f"expected 15 points, got {len(points)}")
    hull = convex_hull_raw(coords)
    h = len(hull)
    budget = coverage_budget(15, h)
    hull_edges = _hull_edges(hull)
    notes: list[str] = []
    lemma1_ok = lemma2_ok = None
    zone_forced = None
    forced = list(hull_edges)

    if h == 3:
        one = forced_edge_lemma1(points)
        two = forced_pair_lemma2(points)
        lemma1_ok, lemma2_ok = one.forced, two.certified
        forced += one.edges
        zone = set(hull_edges) | set(one.edges)
        for w in two.witnesses:
            zone |= set(w.pair)
        if len(zone) != 12:
            notes.append(f"zone has {len(zone)} distinct edges instead of 12")
        certain = set(hull_edges) | set(one.edges)
        pairs = [w.pair for w in two.witnesses]
        # pairs already met by a certain edge cost nothing extra
        open_pairs = [p for p in pairs if not (set(p) & certain)]
        zone_forced = len(certain) + _min_hitting(open_pairs)
        if zone_forced < 9:
            notes.append(f"only {zone_forced} distinct zone edges are forced")
    elif h == 4:
        a, b, c, d = hull
        inside = [p for p in range(15) if p not in hull and _point_in_triangle(coords, (d, a, b), p)]
        apex, tri = a, (d, a, b)
        if not inside:
            # switch A and C: use triangle B C D
            apex, tri = c, (b, c, d)
            inside = [p for p in range(15) if p not in hull and _point_in_triangle(coords, tri, p)]
            notes.append("triangle DAB empty; used BCD")
        if not inside:
            raise AssertionError("both diagonal triangles of a 4-point hull are empty")
        base = _edge(tri[0], tri[2])
        w = _lemma_one(coords, apex, base, inside)
        lemma1_ok = not w.crossers
        forced.append(w.edge)

    tris = greedy_triangulations(coords, 3, forced)
    covered = set().union(*tris)
    return AuditReport(h, budget, forced, lemma1_ok, lemma2_ok, zone_forced, len(covered), notes)


# -- random point sets ----------------------------------------------------------


def random_point_set(rng: random.Random, n: int = 15, hull_size: int | None = None,
                     scale: int = 10**6) -> list[RationalPoint]:
    """Integer points in general position; ``hull_size`` fixes how many are extreme.

    Hull points sit near a circle of radius ``scale``; the rest are drawn from
    a disc small enough to stay inside every such polygon.
    """
    while True:
        if hull_size is None:
            pts = [(rng.randrange(-scale, scale), rng.randrange(-scale, scale)) for _ in range(n)]
        else:
            h = hull_size
            jitter = math.pi / h / 4
            angles = [2 * math.pi * j / h + rng.uniform(-jitter, jitter) for j in range(h)]
            pts = [(round(scale * math.cos(t)), round(scale * math.sin(t))) for t in angles]
            # widest gap between neighbours is 2*pi/h + 2*jitter
            inner = scale * math.cos(math.pi / h + jitter) * 0.9
            while len(pts) < n:
                r = inner * math.sqrt(rng.random())
                t = rng.uniform(0, 2 * math.pi)
                pts.append((round(r * math.cos(t)), round(r * math.sin(t))))
        if len(set(pts)) != n or has_collinear_triple(pts) is not None:
            continue
        if hull_size is not None and len(convex_hull_raw(pts)) != hull_size:
            continue
        return [RationalPoint(x, y) for x, y in pts]


def _audit_trial(args) -> AuditReport:
    seed, trial = args
    rng = random.Random(seed * 1_000_003 + trial)
    hull_size = 3 + trial % 13
    return hull_case_audit(random_point_set(rng, 15, hull_size))


def audit_summary(trials: int, seed: int = 0, workers: int = 1) -> dict:
    """Audit ``trials`` seeded random 15-point sets, cycling the hull size through 3..15."""
    jobs = [(seed, t) for t in range(trials)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_audit_trial, jobs, chunksize=16))
    else:
        reports = [_audit_trial(job) for job in jobs]
    by_hull: dict[int, dict] = {}
    for r in reports:
        entry = by_hull.setdefault(r.hull_size, {
            "count": 0, "total_cap": r.budget.total_cap, "max_greedy_covered": 0,
            "lemma1_pass": 0, "lemma2_pass": 0, "failures": 0,
        })
        entry["count"] += 1
        entry["max_greedy_covered"] = max(entry["max_greedy_covered"], r.greedy_covered)
        entry["lemma1_pass"] += r.lemma1_ok is True
        entry["lemma2_pass"] += r.lemma2_ok is True
        entry["failures"] += not r.ok
    flagged = [i for i, r in enumerate(reports) if r.notes]
    return {
        "trials": trials,
        "seed": seed,
        "all_ok": all(r.ok for r in reports),
        "by_hull_size": {str(h): by_hull[h] for h in sorted(by_hull)},
        "flagged_trials": flagged,
    }
