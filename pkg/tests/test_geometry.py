import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octantcolor.errors import DegenerateInput
from octantcolor.geometry import (
    INF,
    Octant,
    PointSet,
    compute_layers,
    dominates,
    enforce_general_position,
    format_coord,
    is_independent,
    octant_contains,
    parse_coord,
)

coords = st.integers(-50, 50)
points = st.tuples(coords, coords, coords)


def point_sets(min_size=0, max_size=12):
    return st.lists(points, min_size=min_size, max_size=max_size, unique=True).map(PointSet)


class TestDominates:
    def test_strict_order(self):
        assert dominates((1, 2, 3), (0, 1, 2))

    def test_reflexive(self):
        p = (4, -1, 7)
        assert dominates(p, p)

    def test_one_axis_fails(self):
        assert not dominates((0, 5, 0), (1, 0, 0))

    @given(points, points, points)
    def test_transitive(self, a, b, c):
        if dominates(a, b) and dominates(b, c):
            assert dominates(a, c)

    @given(points, points)
    def test_antisymmetric(self, a, b):
        if a != b and dominates(a, b):
            assert not dominates(b, a)


class TestOctantContains:
    def test_interior_boundary_excluded(self):
        o = Octant((2, INF, -1))
        assert not octant_contains(o, (2, -2, -2), interior=True)

    def test_closed_boundary_included(self):
        o = Octant((2, INF, -1))
        assert octant_contains(o, (2, -2, -2))

    def test_positive_closed(self):
        o = Octant((0, 0, 0), negative=False)
        assert octant_contains(o, (1, 1, 1))

    def test_inf_never_tight(self):
        o = Octant((INF, INF, INF))
        assert octant_contains(o, (10**9, -(10**9), 0), interior=True)

    def test_positive_rejects_infinite_apex(self):
        with pytest.raises(ValueError):
            Octant((INF, 0, 0), negative=False)


class TestIndependence:
    def test_chain_not_independent(self):
        assert not is_independent(PointSet([(0, 0, 0), (1, 1, 1)]))

    def test_cyclic_antichain(self):
        assert is_independent(PointSet([(0, 1, 2), (1, 2, 0), (2, 0, 1)]))

    def test_empty(self):
        assert is_independent(PointSet())

    @given(point_sets(max_size=8))
    def test_matches_bruteforce(self, ps):
        brute = not any(
            dominates(p, q)
            for p, q in itertools.permutations(ps, 2)
        )
        assert is_independent(ps) == brute


class TestGeneralPosition:
    def test_reject_passes_general(self):
        ps = PointSet([(0, 0, 0), (1, 1, 1)])
        assert enforce_general_position(ps, "reject") is ps

    def test_reject_raises_on_shared_coordinate(self):
        with pytest.raises(DegenerateInput):
            enforce_general_position(PointSet([(0, 0, 0), (0, 1, 1)]), "reject")

    def test_perturb_breaks_ties_by_index(self):
        ps = PointSet([(0, 0, 0), (0, 1, 1)])
        out = enforce_general_position(ps, "perturb")
        assert out[0].x < out[1].x
        for axis in range(3):
            values = out.axis_values(axis)
            assert len(set(values)) == len(values)

    @given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)), min_size=2, max_size=10, unique=True))
    def test_perturb_preserves_strict_relations(self, raw):
        ps = PointSet(raw)
        out = enforce_general_position(ps, "perturb")
        for i, j in itertools.permutations(range(len(ps)), 2):
            for axis in range(3):
                if ps[i][axis] < ps[j][axis]:
                    assert out[i][axis] < out[j][axis]
            if all(ps[i][axis] < ps[j][axis] for axis in range(3)):
                assert dominates(out[j], out[i])


class TestLayers:
    def test_chain_gives_singletons(self):
        ps = PointSet([(0, 0, 0), (1, 1, 1), (2, 2, 2)])
        assert compute_layers(ps) == [(0,), (1,), (2,)]

    def test_antichain_single_layer(self):
        ps = PointSet([(i, 4 - i, 10 + (i * 3) % 5) for i in range(5)])
        assert is_independent(ps)
        assert compute_layers(ps) == [tuple(range(5))]

    def test_two_layer_example(self):
        ps = PointSet([(0, 0, 0), (2, 1, 1), (1, 2, 2)])
        assert compute_layers(ps) == [(0,), (1, 2)]

    @given(point_sets(min_size=1, max_size=12))
    @settings(deadline=None)
    def test_layer_structure(self, ps):
        layers = compute_layers(ps)
        flat = [i for layer in layers for i in layer]
        assert sorted(flat) == list(range(len(ps)))
        for layer in layers:
            assert is_independent(ps.subset(layer))
        # every point of layer i dominates a point from each earlier layer
        for li in range(1, len(layers)):
            for i in layers[li]:
                for lj in range(li):
                    assert any(
                        dominates(ps[i], ps[j]) and i != j for j in layers[lj]
                    )


class TestSerialization:
    def test_round_trip(self):
        ps = PointSet([(1, Fraction(1, 2), -3), (0, 7, Fraction(-5, 4))])
        assert PointSet.from_text(ps.to_text()) == ps

    def test_comments_and_blank_lines(self):
        text = "# header\n1 2 3\n\n4 5 6  # trailing\n"
        assert PointSet.from_text(text) == PointSet([(1, 2, 3), (4, 5, 6)])

    def test_rational_tokens(self):
        assert parse_coord("3/4") == Fraction(3, 4)
        assert parse_coord("-2") == -2
        assert format_coord(Fraction(6, 2)) == "3"
        assert format_coord(Fraction(-5, 4)) == "-5/4"

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            PointSet([(0, 0, 0), (0, 0, 0)])

    def test_bad_line_reports_number(self):
        with pytest.raises(ValueError, match="line 2"):
            PointSet.from_text("1 2 3\n4 5\n")
