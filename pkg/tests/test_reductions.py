import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octantcolor.coloring import BaseColorerConfig
from octantcolor.errors import EmptyHomothet, InfiniteApex
from octantcolor.geometry import INF, Octant, octant_contains
from octantcolor.reductions import (
    BottomlessRect,
    NormalizedTriangle,
    TimedInterval,
    color_dual_family,
    dual_query_lift,
    dualize_octants,
    family_depth,
    plane_point_lift,
    rect_point_lift,
    rect_to_octant,
    timed_interval_to_rect,
    triangle_from_vertices,
    triangle_to_octant,
)
from octantcolor.verify import colorfulness_report

nums = st.one_of(
    st.integers(-40, 40),
    st.fractions(min_value=-40, max_value=40, max_denominator=8),
)


class TestTimedIntervals:
    def test_positive_time(self):
        assert timed_interval_to_rect(TimedInterval(0, 2, 5)) == BottomlessRect(0, 2, -5)

    def test_zero_time(self):
        assert timed_interval_to_rect(TimedInterval(0, 2, 0)).top == 0

    def test_negative_time(self):
        assert timed_interval_to_rect(TimedInterval(1, 3, -4)).top == 4

    def test_validation(self):
        with pytest.raises(ValueError):
            TimedInterval(3, 3, 0)


class TestRectLift:
    def test_example_inside(self):
        r = BottomlessRect(0, 2, 5)
        o = rect_to_octant(r)
        assert o.apex == (2, 0, 5)
        q = (1, 4)
        assert r.contains(*q) and octant_contains(o, rect_point_lift(q))

    def test_example_right_of(self):
        r = BottomlessRect(0, 2, 5)
        q = (3, 4)
        assert not r.contains(*q)
        assert not octant_contains(rect_to_octant(r), rect_point_lift(q))

    def test_example_above(self):
        r = BottomlessRect(0, 2, 5)
        q = (1, 6)
        assert not r.contains(*q)
        assert not octant_contains(rect_to_octant(r), rect_point_lift(q))

    @given(nums, nums, nums, nums, nums)
    @settings(max_examples=200)
    def test_containment_equivalence(self, left, width, top, u, v):
        right = left + abs(width) + 1
        r = BottomlessRect(left, right, top)
        assert r.contains(u, v) == octant_contains(rect_to_octant(r), rect_point_lift((u, v)))


class TestTriangleLift:
    def test_example_origin(self):
        t = NormalizedTriangle(1, 1, 1)
        assert plane_point_lift((0, 0)) == (0, 0, 0)
        assert t.contains(0, 0)
        assert octant_contains(triangle_to_octant(t), plane_point_lift((0, 0)))

    def test_example_outside(self):
        t = NormalizedTriangle(1, 1, 1)
        q = (2, 0)
        assert not t.contains(*q)
        assert not octant_contains(triangle_to_octant(t), plane_point_lift(q))

    def test_degenerate_single_point(self):
        t = NormalizedTriangle(0, 0, 0)
        q = (0, 0)
        assert t.contains(*q)
        assert octant_contains(triangle_to_octant(t), plane_point_lift(q))

    def test_empty_homothet(self):
        with pytest.raises(EmptyHomothet):
            triangle_to_octant(NormalizedTriangle(0, 0, -1))

    @given(nums, nums, nums, nums, nums)
    @settings(max_examples=200)
    def test_containment_equivalence(self, a, b, slack, u, v):
        t = NormalizedTriangle(a, b, -(a + b) + abs(slack))
        assert t.contains(u, v) == octant_contains(triangle_to_octant(t), plane_point_lift((u, v)))

    def test_vertices_round_trip(self):
        t = NormalizedTriangle(3, 2, -1)
        assert triangle_from_vertices(t.vertices()) == t
        shuffled = list(t.vertices())[::-1]
        assert triangle_from_vertices(shuffled) == t
        with pytest.raises(ValueError):
            triangle_from_vertices([(0, 0), (1, 0), (0, 2)])


class TestDualization:
    def test_example_inequality_flip(self):
        o = Octant((1, 2, 3))
        q = (0, 0, 0)
        assert octant_contains(o, q)
        assert octant_contains(dual_query_lift(q), dualize_octants([o])[0])

    def test_boundary(self):
        o = Octant((0, 0, 0))
        q = (0, 0, 0)
        assert octant_contains(o, q)
        assert octant_contains(dual_query_lift(q), dualize_octants([o])[0])

    def test_outside(self):
        o = Octant((0, 0, 0))
        q = (1, 0, 0)
        assert not octant_contains(o, q)
        assert not octant_contains(dual_query_lift(q), dualize_octants([o])[0])

    @given(st.lists(st.tuples(nums, nums, nums), min_size=1, max_size=8, unique=True), st.tuples(nums, nums, nums))
    def test_membership_equivalence(self, apices, q):
        octants = [Octant(a) for a in apices]
        duals = dualize_octants(octants)
        lifted = dual_query_lift(q)
        for octant, dual in zip(octants, duals):
            assert octant_contains(octant, q) == octant_contains(lifted, dual)

    def test_involution_up_to_sign(self):
        apices = [(1, 2, 3), (-4, 0, 7), (5, -5, 2)]
        duals = dualize_octants([Octant(a) for a in apices])
        # dual-query octants have the original apices; dualizing them again
        # yields the negated originals, i.e. the dual points themselves
        queries = [dual_query_lift(p) for p in duals]
        assert [o.apex for o in queries] == apices
        again = dualize_octants(queries)
        assert [tuple(p) for p in again] == [tuple(-c for c in a) for a in apices]
        assert again == duals

    def test_infinite_apex_rejected(self):
        with pytest.raises(InfiniteApex):
            dualize_octants([Octant((INF, 0, 0))])

    def test_positive_octants_rejected(self):
        with pytest.raises(ValueError):
            dualize_octants([Octant((0, 0, 0), negative=False)])


def random_triangles(n, seed):
    rng = random.Random(seed)
    out = set()
    while len(out) < n:
        a, b = rng.randint(-30, 30), rng.randint(-30, 30)
        c = -(a + b) + rng.randint(0, 40)
        out.add((a, b, c))
    return [NormalizedTriangle(*t) for t in sorted(out)]


def random_intervals(n, seed):
    rng = random.Random(seed)
    out = set()
    while len(out) < n:
        left = rng.randint(-30, 30)
        out.add((left, left + rng.randint(1, 20), rng.randint(-20, 20)))
    return [TimedInterval(*t) for t in sorted(out)]


class TestDepthPreservation:
    def test_triangles(self):
        family = random_triangles(30, 3)
        duals = dualize_octants([triangle_to_octant(t) for t in family])
        rng = random.Random(3)
        for _ in range(200):
            q = (rng.randint(-40, 40), Fraction(rng.randint(-80, 80), 2))
            lifted = dual_query_lift(plane_point_lift(q))
            octant_count = sum(1 for p in duals if octant_contains(lifted, p))
            assert family_depth(family, q) == octant_count

    def test_intervals(self):
        family = random_intervals(30, 4)
        duals = dualize_octants(
            [rect_to_octant(timed_interval_to_rect(t)) for t in family]
        )
        rng = random.Random(4)
        for _ in range(200):
            q = (Fraction(rng.randint(-80, 80), 2), rng.randint(-40, 40))
            lifted = dual_query_lift(rect_point_lift(q))
            octant_count = sum(1 for p in duals if octant_contains(lifted, p))
            assert family_depth(family, q) == octant_count


class TestColorDualFamily:
    def test_k1_trivial(self):
        res = color_dual_family(random_triangles(10, 0), 1)
        assert res.verified_threshold == 1

    def test_triangles_k2(self):
        family = random_triangles(50, 7)
        res = color_dual_family(family, 2, BaseColorerConfig(seed=7))
        assert res.verified_threshold <= res.guaranteed_threshold <= 12
        # certifying on the perturbed set is sound for the original one
        report = colorfulness_report(res.dual_points, res.coloring)
        assert report.minimal_colorful_threshold <= res.verified_threshold

    def test_intervals_k2(self):
        family = random_intervals(50, 8)
        res = color_dual_family(family, 2, BaseColorerConfig(seed=8))
        assert res.verified_threshold <= 12

    def test_planar_guarantee_end_to_end(self):
        # every planar point covered by >= guaranteed members sees all colors
        family = random_triangles(40, 9)
        k = 2
        res = color_dual_family(family, k, BaseColorerConfig(seed=9))
        rng = random.Random(9)
        deep_checked = 0
        for _ in range(4000):
            q = (rng.randint(-35, 35), rng.randint(-35, 35))
            covering = [i for i, t in enumerate(family) if t.contains(*q)]
            if len(covering) >= res.verified_threshold:
                deep_checked += 1
                present = {res.coloring.colors[i] for i in covering}
                assert present == set(range(1, k + 1))
        assert deep_checked > 0

    def test_duplicates_rejected(self):
        t = NormalizedTriangle(0, 0, 5)
        with pytest.raises(ValueError, match="duplicate"):
            color_dual_family([t, t], 2)
