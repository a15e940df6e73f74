from fractions import Fraction

import pytest

from geothick.constructions import bipartite_layout, convex_layout, two_ring_layout
from geothick.model import CompleteBipartite, CompleteGraph, LayeredDrawing
from geothick.search import InvalidInput, SearchConfig, improve_drawing, search_placement
from geothick.verifier import verify


def quick(target, **kw):
    kw.setdefault("max_restarts", 3)
    kw.setdefault("steps_per_restart", 5_000)
    return SearchConfig(target_layers=target, **kw)


class TestSearch:
    def test_k4_planar(self):
        outcome = search_placement(CompleteGraph(4), quick(1))
        assert outcome.found and outcome.status == "Found"
        assert outcome.drawing.layer_count == 1
        assert verify(outcome.drawing).valid

    def test_k5_two_layers(self):
        outcome = search_placement(CompleteGraph(5), quick(2))
        assert outcome.found
        assert outcome.drawing.layer_count <= 2
        assert verify(outcome.drawing).valid

    def test_k5_one_layer_impossible(self):
        outcome = search_placement(CompleteGraph(5), quick(1, max_restarts=2, steps_per_restart=2_000))
        assert not outcome.found and outcome.status == "Exhausted"
        assert outcome.stats.steps == 4_000
        assert outcome.best_layers_seen is None or outcome.best_layers_seen >= 2
        if outcome.drawing is not None:
            assert verify(outcome.drawing).valid

    def test_deterministic(self):
        a = search_placement(CompleteGraph(6), quick(2, seed=5))
        b = search_placement(CompleteGraph(6), quick(2, seed=5))
        assert a.found == b.found
        assert a.drawing == b.drawing
        assert a.stats == b.stats

    def test_bipartite(self):
        outcome = search_placement(CompleteBipartite(3, 4), quick(2))
        assert outcome.found
        assert verify(outcome.drawing).valid

    def test_parallel_workers_agree_on_soundness(self):
        outcome = search_placement(CompleteGraph(6), quick(2, workers=2, max_restarts=4))
        if outcome.found:
            assert verify(outcome.drawing).valid

    @pytest.mark.parametrize("kw", [
        {"target_layers": 0},
        {"target_layers": 1, "cooling_rate": Fraction(1)},
        {"target_layers": 1, "coordinate_grid": 10},
        {"target_layers": 1, "coordinate_box": (Fraction(1), Fraction(0))},
        {"target_layers": 1, "max_restarts": 0},
    ])
    def test_config_validation(self, kw):
        with pytest.raises(ValueError):
            SearchConfig(**kw)

    def test_total_budget(self):
        assert quick(2).total_budget == 15_000


class TestImprove:
    def test_convex_pentagon_to_two_layers(self):
        seed = convex_layout(5)
        assert seed.layer_count == 3
        outcome = improve_drawing(seed, quick(2))
        assert outcome.found
        assert outcome.drawing.layer_count == 2
        assert verify(outcome.drawing).valid

    def test_k66_rows_to_two_layers(self):
        seed = bipartite_layout(6, 6)
        assert seed.layer_count == 3
        outcome = improve_drawing(seed, SearchConfig(target_layers=2, seed=0))
        assert outcome.found and outcome.drawing.layer_count == 2
        assert verify(outcome.drawing).valid

    def test_never_worse_than_input(self):
        seed = two_ring_layout(8)
        outcome = improve_drawing(seed, quick(1, max_restarts=1, steps_per_restart=2_000))
        assert not outcome.found
        assert outcome.drawing is not None
        assert outcome.drawing.layer_count <= seed.layer_count
        assert verify(outcome.drawing).valid

    def test_invalid_seed(self):
        d = convex_layout(4)
        broken = LayeredDrawing(d.graph, d.points, [(u, v, 0) for u, v, _ in d.edges], 1)
        with pytest.raises(InvalidInput):
            improve_drawing(broken, quick(1))
