import math
from functools import lru_cache
from itertools import combinations

import pytest

from geothick.constructions import (
    BadRingSize,
    ConstructionError,
    IndexOutOfRange,
    bipartite_layout,
    complete_layout,
    convex_layout,
    default_outer_rotation,
    delete_vertices,
    layer_sizes,
    two_ring_layout,
    zigzag_path,
)
from geothick.model import deserialize, edge_set, serialize
from geothick.verifier import verify
from oracles import intersection_kind


@lru_cache(maxsize=None)
def two_ring(n):
    return two_ring_layout(n)


def brute_force_valid(drawing):
    """Every same-layer pair checked with the linear-system oracle."""
    pts = [tuple(p) for p in drawing.points]
    by_layer = {}
    for u, v, lay in drawing.edges:
        by_layer.setdefault(lay, []).append((u, v))
    for edges in by_layer.values():
        for (a, b), (c, d) in combinations(edges, 2):
            kind = intersection_kind(pts[a], pts[b], pts[c], pts[d])
            if kind not in ("Disjoint", "SharedEndpoint"):
                return False
    return len(set(pts)) == len(pts)


class TestZigzag:
    def test_k6_start0(self):
        z = zigzag_path(6, 0)
        assert list(z.sequence) == [0, 1, 5, 2, 4, 3]
        assert z.antipodal_edge == (5, 2)

    def test_k4_start0(self):
        z = zigzag_path(4, 0)
        assert list(z.sequence) == [0, 1, 3, 2]
        assert z.antipodal_edge == (1, 3)

    @pytest.mark.parametrize("k", range(4, 41, 2))
    def test_walecki_partition(self, k):
        seen = []
        for start in range(k // 2):
            z = zigzag_path(k, start)
            assert sorted(z.sequence) == list(range(k))
            seen.extend(tuple(sorted(e)) for e in z.edges)
        assert len(seen) == math.comb(k, 2)
        assert set(seen) == set(combinations(range(k), 2))

    @pytest.mark.parametrize("k", range(4, 41, 2))
    def test_one_antipodal_edge_each(self, k):
        antipodes = set()
        for start in range(k // 2):
            z = zigzag_path(k, start)
            hits = [e for e in z.edges if (e[0] - e[1]) % k == k // 2]
            assert len(hits) == 1
            antipodes.add(frozenset(hits[0]))
        assert len(antipodes) == k // 2

    @pytest.mark.parametrize("k", [3, 5, 2, 0])
    def test_bad_ring_size(self, k):
        with pytest.raises(BadRingSize):
            zigzag_path(k, 0)

    @pytest.mark.parametrize("start", [-1, 3, 10])
    def test_index_out_of_range(self, start):
        with pytest.raises(IndexOutOfRange):
            zigzag_path(6, start)


class TestTwoRing:
    def test_k8(self):
        d = two_ring(8)
        assert d.layer_count == 2
        assert layer_sizes(d) == [14, 14]
        assert verify(d).valid

    def test_k20(self):
        d = two_ring(20)
        assert d.layer_count == 5
        assert len(d.edges) == 190

    def test_k4_single_layer(self):
        d = two_ring(4)
        assert d.layer_count == 1 and len(d.edges) == 6
        assert verify(d).valid

    @pytest.mark.parametrize("n", [4, 8, 12, 16])
    def test_independent_brute_force(self, n):
        assert brute_force_valid(two_ring(n))

    @pytest.mark.parametrize("n", range(4, 41, 4))
    def test_layers_and_sizes(self, n):
        d = two_ring(n)
        assert d.layer_count == n // 4
        assert layer_sizes(d) == [2 * n - 2 if n > 4 else 6] * (n // 4)
        assert d.invariant_problems() == []
        assert verify(d).valid

    def test_rings_have_expected_shape(self):
        d = two_ring(12)
        meta = d.metadata
        assert meta["construction"] == "two-ring"
        k = 6
        inner, outer = d.points[:k], d.points[k:]
        # inner ring vertices all lie strictly inside the outer ring's hull
        from geothick.geometry import convex_hull
        hull = convex_hull(list(d.points))
        assert set(hull) == set(range(k, 2 * k))
        assert len(inner) == len(outer) == k

    def test_rotation_is_cone_midpoint(self):
        assert default_outer_rotation(6) == pytest.approx(1 / 4 + 1 / 24)

    @pytest.mark.parametrize("n", [0, 6, 10, 13])
    def test_rejects_non_multiples(self, n):
        with pytest.raises(ConstructionError):
            two_ring_layout(n)


class TestCompleteLayout:
    @pytest.mark.parametrize("n", range(1, 41))
    def test_layer_count_and_validity(self, n):
        d = delete_vertices(two_ring(4 * math.ceil(n / 4)), n)
        assert d.layer_count == max(1, math.ceil(n / 4))
        assert len(d.edges) == math.comb(n, 2)
        assert d.invariant_problems() == []
        assert verify(d).valid

    def test_complete_layout_small(self):
        d = complete_layout(1)
        assert d.layer_count == 1 and d.edges == ()
        d = complete_layout(7)
        assert d.layer_count == 2

    @pytest.mark.parametrize("n", [44, 52, 60])
    def test_larger(self, n):
        d = two_ring(n)
        assert d.layer_count == n // 4
        assert verify(d).valid

    def test_round_trip_through_json(self):
        d = complete_layout(10)
        back = deserialize(serialize(d))
        assert back == d
        assert verify(back).valid


class TestConvex:
    @pytest.mark.parametrize("n,layers", [(4, 2), (5, 3), (12, 6)])
    def test_examples(self, n, layers):
        d = convex_layout(n)
        assert d.layer_count == layers
        assert len(d.edges) == math.comb(n, 2)

    @pytest.mark.parametrize("n", range(3, 31))
    def test_page_count(self, n):
        d = convex_layout(n)
        assert d.layer_count == math.ceil(n / 2)
        assert verify(d).valid

    def test_convex_position(self):
        from geothick.geometry import convex_hull
        d = convex_layout(9)
        assert len(convex_hull(list(d.points))) == 9

    @pytest.mark.parametrize("n", [5, 8])
    def test_independent_brute_force(self, n):
        assert brute_force_valid(convex_layout(n))


class TestBipartite:
    def test_k68_three_layers(self):
        d = bipartite_layout(6, 8)
        assert d.layer_count == 3
        assert len(d.edges) == 48
        assert verify(d).valid
        assert brute_force_valid(d)

    @pytest.mark.parametrize("a", range(1, 21))
    def test_all_small(self, a):
        for b in range(1, 21):
            d = bipartite_layout(a, b)
            assert d.layer_count == math.ceil(min(a, b) / 2)
            assert sorted(e[:2] for e in d.edges) == edge_set(d.graph)
            assert verify(d).valid, (a, b)
