"""Simulated annealing over vertex placements for low-layer drawings.

The annealer keeps a placement on an integer grid together with a layer
for every edge and minimises the number of same-layer conflicts. It moves
vertices (jitter snapped to the grid) and moves single edges between
layers. Nothing leaves this module without passing :func:`verify`.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .geometry import RationalPoint, classify_raw
from .model import GraphSpec, LayeredDrawing, edge_set
from .verifier import crossing_graph, greedy_colouring, verify


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    target_layers: int
    max_restarts: int = 20
    steps_per_restart: int = 50_000
    initial_temperature: Fraction = Fraction(1)
    cooling_rate: Fraction = Fraction(99995, 100000)
    # square box [-half, half]^2 in grid units of 1/coordinate_grid
    coordinate_box: tuple[Fraction, Fraction] = (Fraction(-1), Fraction(1))
    seed: int = 0
    coordinate_grid: int = 10**6
    vertex_move_probability: float = 0.3
    workers: int = 1

    def __post_init__(self):
        if self.target_layers < 1:
            raise ValueError("target_layers must be at least 1")
        if not 0 < self.cooling_rate < 1:
            raise ValueError("cooling_rate must lie strictly between 0 and 1")
        if self.coordinate_grid < 1000:
            raise ValueError("coordinate_grid must be at least 1000")
        if self.coordinate_box[0] >= self.coordinate_box[1]:
            raise ValueError("empty coordinate box")
        if self.max_restarts < 1 or self.steps_per_restart < 1:
            raise ValueError("search budget must be positive")

    @property
    def total_budget(self) -> int:
        return self.max_restarts * self.steps_per_restart


@dataclass
class SearchStats:
    restarts: int = 0
    steps: int = 0
    verifier_calls: int = 0


@dataclass
class SearchOutcome:
    found: bool
    drawing: LayeredDrawing | None
    best_layers_seen: int | None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def status(self) -> str:
        return "Found" if self.found else "Exhausted"


# -- annealing state ---------------------------------------------------------------


class _Anneal:
    def __init__(self, edges: Sequence[tuple[int, int]], pos: list[tuple[int, int]],
                 layers: list[int], target: int, lo: int, hi: int):
        self.edges = list(edges)
        self.pos = pos
        self.layers = layers
        self.target = target
        self.lo, self.hi = lo, hi
        n = len(pos)
        self.incident: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(self.edges):
            self.incident[u].append(i)
            self.incident[v].append(i)
        self.conflict: list[set[int]] = [set() for _ in self.edges]
        for i in range(len(self.edges)):
            for j in range(i + 1, len(self.edges)):
                if self._clash(i, j):
                    self.conflict[i].add(j)
                    self.conflict[j].add(i)
        self.energy = sum(
            1 for i in range(len(self.edges)) for j in self.conflict[i]
            if j > i and layers[i] == layers[j]
        )

    def _clash(self, i: int, j: int) -> bool:
        (a, b), (c, d) = self.edges[i], self.edges[j]
        p = self.pos
        return classify_raw(p[a], p[b], p[c], p[d]).is_conflict

    def _same_layer_conflicts(self, i: int, layer: int, conflicts) -> int:
        return sum(1 for j in conflicts if self.layers[j] == layer)

    def degenerate_at(self, v: int, xy: tuple[int, int]) -> bool:
        """New position coincides with a vertex, lies on an edge, or drags an edge over a vertex."""
        for w, q in enumerate(self.pos):
            if w != v and q == xy:
                return True
        for u, w in self.edges:
            if v not in (u, w) and _on_segment(self.pos[u], self.pos[w], xy):
                return True
        for i in self.incident[v]:
            u = self.edges[i][0] + self.edges[i][1] - v
            for w, q in enumerate(self.pos):
                if w not in (u, v) and _on_segment(xy, self.pos[u], q):
                    return True
        return False

    def propose_vertex(self, v: int, xy: tuple[int, int]):
        """Energy delta and new conflict sets for moving ``v``; nothing is changed yet."""
        old = self.pos[v]
        self.pos[v] = xy
        changed = {}
        delta = 0
        for i in self.incident[v]:
            new = set()
            for j in range(len(self.edges)):
                if j != i and self._clash(i, j):
                    new.add(j)
            changed[i] = new
        self.pos[v] = old
        counted = set()
        for i, new in changed.items():
            for j in self.conflict[i] ^ new:
                key = (min(i, j), max(i, j))
                if key in counted:
                    continue
                counted.add(key)
                if self.layers[i] == self.layers[j]:
                    delta += 1 if j in new else -1
        return delta, changed

    def commit_vertex(self, v: int, xy: tuple[int, int], changed, delta: int) -> None:
        self.pos[v] = xy
        for i, new in changed.items():
            for j in self.conflict[i] - new:
                self.conflict[j].discard(i)
            for j in new - self.conflict[i]:
                self.conflict[j].add(i)
            self.conflict[i] = new
        self.energy += delta

    def layer_delta(self, i: int, layer: int) -> int:
        return (self._same_layer_conflicts(i, layer, self.conflict[i])
                - self._same_layer_conflicts(i, self.layers[i], self.conflict[i]))

    def move_edge(self, i: int, layer: int, delta: int) -> None:
        self.layers[i] = layer
        self.energy += delta

    def bad_edges(self) -> list[int]:
        return [i for i in range(len(self.edges))
                if any(self.layers[j] == self.layers[i] for j in self.conflict[i])]


def _on_segment(a, b, p) -> bool:
    cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    if cross:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _fill_empty_layers(layers: list[int], target: int) -> list[int]:
    """Move single edges into unused layers; an edge alone on a layer conflicts with nothing."""
    layers = list(layers)
    counts = [layers.count(c) for c in range(target)]
    for c in range(target):
        if counts[c]:
            continue
        donor = next((i for i, lay in enumerate(layers) if counts[lay] > 1), None)
        if donor is None:
            break
        counts[layers[donor]] -= 1
        layers[donor] = c
        counts[c] = 1
    return layers


def _initial_layers(edges, pos, target) -> list[int]:
    points = [RationalPoint(x, y) for x, y in pos]
    adjacency = crossing_graph(points, edges).adjacency
    colour = greedy_colouring(adjacency, "degeneracy")
    return [min(c, target - 1) for c in colour]


def _to_drawing(graph: GraphSpec, edges, pos, layers, grid: int, target: int) -> LayeredDrawing:
    layers = _fill_empty_layers(layers, target) if edges else []
    points = tuple(RationalPoint(Fraction(x, grid), Fraction(y, grid)) for x, y in pos)
    count = target if edges else 1
    return LayeredDrawing(graph, points, tuple((u, v, lay) for (u, v), lay in zip(edges, layers)), count,
                          {"construction": "search"})


def _greedy_drawing(graph, edges, pos, grid) -> LayeredDrawing:
    points = [RationalPoint(Fraction(x, grid), Fraction(y, grid)) for x, y in pos]
    colour = greedy_colouring(crossing_graph(points, edges).adjacency, "degeneracy") if edges else []
    count = max(colour, default=0) + 1
    return _to_drawing(graph, edges, pos, colour, grid, count)


def _random_position(rng: random.Random, lo: int, hi: int) -> tuple[int, int]:
    return rng.randint(lo, hi), rng.randint(lo, hi)


def _run_restart(graph: GraphSpec, config: SearchConfig, restart: int,
                 start: list[tuple[int, int]] | None):
    """One annealing run. Returns (found drawing or None, best greedy drawing, steps, verifier calls)."""
    rng = random.Random(config.seed * 1_000_003 + restart)
    grid = config.coordinate_grid
    lo = math.floor(config.coordinate_box[0] * grid)
    hi = math.ceil(config.coordinate_box[1] * grid)
    edges = edge_set(graph)
    n = graph.vertex_count
    target = config.target_layers

    if start is None:
        pos: list[tuple[int, int]] = []
        while len(pos) < n:
            p = _random_position(rng, lo, hi)
            if p not in pos:
                pos.append(p)
    else:
        pos = list(start)
    if not edges:
        drawing = _to_drawing(graph, edges, pos, [], grid, 1)
        return (drawing if target == 1 else None), drawing, 0, 1

    state = _Anneal(edges, pos, _initial_layers(edges, pos, target), target, lo, hi)
    temperature = float(config.initial_temperature)
    cooling = float(config.cooling_rate)
    width = hi - lo
    best_energy = state.energy
    best_pos = list(state.pos)
    calls = 0

    for step in range(config.steps_per_restart):
        if state.energy == 0:
            drawing = _to_drawing(graph, edges, state.pos, state.layers, grid, target)
            calls += 1
            if verify(drawing).valid:
                return drawing, drawing, step, calls
        if rng.random() < config.vertex_move_probability:
            v = rng.randrange(n)
            for _ in range(8):
                if rng.random() < 0.1:
                    xy = _random_position(rng, lo, hi)
                else:
                    sigma = width * (0.02 + 0.2 * min(1.0, temperature))
                    x, y = state.pos[v]
                    xy = (min(hi, max(lo, round(rng.gauss(x, sigma)))),
                          min(hi, max(lo, round(rng.gauss(y, sigma)))))
                if not state.degenerate_at(v, xy):
                    break
            else:
                continue
            delta, changed = state.propose_vertex(v, xy)
            if delta <= 0 or rng.random() < math.exp(-delta / max(temperature, 1e-9)):
                state.commit_vertex(v, xy, changed, delta)
        else:
            bad = state.bad_edges()
            i = rng.choice(bad) if bad else rng.randrange(len(edges))
            if target > 1:
                layer = rng.randrange(target - 1)
                layer += layer >= state.layers[i]
                delta = state.layer_delta(i, layer)
                if delta <= 0 or rng.random() < math.exp(-delta / max(temperature, 1e-9)):
                    state.move_edge(i, layer, delta)
        if state.energy < best_energy:
            best_energy, best_pos = state.energy, list(state.pos)
        temperature *= cooling

    if state.energy == 0:
        drawing = _to_drawing(graph, edges, state.pos, state.layers, grid, target)
        calls += 1
        if verify(drawing).valid:
            return drawing, drawing, config.steps_per_restart, calls
    best = _greedy_drawing(graph, edges, best_pos, grid)
    calls += 1
    assert verify(best).valid
    return None, best, config.steps_per_restart, calls


def _restart_job(args):
    graph, config, restart, start = args
    return _run_restart(graph, config, restart, start)


def _search(graph: GraphSpec, config: SearchConfig, start=None,
            fallback: LayeredDrawing | None = None) -> SearchOutcome:
    stats = SearchStats()
    best = fallback
    jobs = [(graph, config, r, start if r == 0 else None) for r in range(config.max_restarts)]

    def consider(result) -> LayeredDrawing | None:
        nonlocal best
        found, candidate, steps, calls = result
        stats.restarts += 1
        stats.steps += steps
        stats.verifier_calls += calls
        if best is None or candidate.layer_count < best.layer_count:
            best = candidate
        return found

    if config.workers <= 1:
        for job in jobs:
            found = consider(_restart_job(job))
            if found is not None:
                return SearchOutcome(True, found, found.layer_count, stats)
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            # batches of `workers` restarts; within a batch the lowest index wins
            for i in range(0, len(jobs), config.workers):
                batch = list(pool.map(_restart_job, jobs[i:i + config.workers]))
                hit = None
                for result in batch:
                    found = consider(result)
                    if hit is None and found is not None:
                        hit = found
                if hit is not None:
                    return SearchOutcome(True, hit, hit.layer_count, stats)
    return SearchOutcome(False, best, best.layer_count if best else None, stats)


def search_placement(graph: GraphSpec, config: SearchConfig) -> SearchOutcome:
    """Look for a placement and layer assignment using ``config.target_layers`` layers."""
    return _search(graph, config)


def _snap(points: Sequence[RationalPoint], config: SearchConfig) -> list[tuple[int, int]]:
    """Fit the drawing's bounding box into the search box and round to the grid."""
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(max(xs) - min(xs), max(ys) - min(ys)) / 2 or Fraction(1)
    box_lo, box_hi = config.coordinate_box
    box_mid, box_half = (box_lo + box_hi) / 2, (box_hi - box_lo) / 2
    grid = config.coordinate_grid
    out = []
    for p in points:
        x = box_mid + (p.x - cx) / half * box_half
        y = box_mid + (p.y - cy) / half * box_half
        out.append((round(x * grid), round(y * grid)))
    return out


def improve_drawing(drawing: LayeredDrawing, config: SearchConfig) -> SearchOutcome:
    """Warm-started search from a verified drawing; never reports anything worse than the input."""
    if not verify(drawing).valid:
        raise InvalidInput("seed drawing does not verify")
    start = _snap(drawing.points, config)
    if len(set(start)) != len(start):
        start = None
    outcome = _search(drawing.graph, config, start=start, fallback=drawing)
    if outcome.found and outcome.drawing.layer_count > drawing.layer_count:
        return SearchOutcome(False, drawing, drawing.layer_count, outcome.stats)
    return outcome
