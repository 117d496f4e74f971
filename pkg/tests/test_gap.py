import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from latgap import (
    Ball,
    Gap,
    GapTooLarge,
    LatticeBasis,
    PointSet,
    gap_as_lattice_image,
    gap_points,
    gap_size_multiset,
    intersect_count,
    points_in_ball,
    restrict_gap,
    sort_dims_nonincreasing,
)
from latgap.gap import is_sorted, restrictions

F = Fraction


@st.composite
def gaps(draw, n=None, d_max=3, coord=3, side=3, rational=True):
    n = draw(st.integers(1, 3)) if n is None else n
    d = draw(st.integers(0, d_max))
    ent = st.fractions(-coord, coord, max_denominator=2) if rational else st.integers(-coord, coord)
    x0 = draw(st.tuples(*[ent] * n))
    gens = [draw(st.tuples(*[ent] * n)) for _ in range(d)]
    lo = [draw(st.integers(-side, side)) for _ in range(d)]
    hi = [a + draw(st.integers(0, side)) for a in lo]
    return Gap(x0, gens, lo, hi)


@pytest.mark.parametrize("g, size", [
    (Gap((0,), [(1,)], [0], [2]), 3),
    (Gap((0, 0), [(1, 0), (0, 1)], [0, -1], [1, 1]), 6),
    (Gap((5, 5)), 1),
])
def test_multiset_size(g, size):
    assert gap_size_multiset(g) == size


def test_gap_points_examples():
    assert set(gap_points(Gap((0,), [(1,)], [0], [4]))) == {(k,) for k in range(5)}
    g = Gap((0,), [(1,), (1,)], [0, 0], [1, 1])
    assert set(gap_points(g)) == {(0,), (1,), (2,)} and gap_size_multiset(g) == 4
    g = Gap((1, 1), [(1, 0), (0, 1)], [0, 0], [1, 1])
    assert set(gap_points(g)) == {(1, 1), (1, 2), (2, 1), (2, 2)}


def test_gap_validation():
    with pytest.raises(ValueError):
        Gap((0,), [(1,)], [2], [1])
    with pytest.raises(ValueError):
        Gap((0,), [(1,), (2,)], [0], [1])
    with pytest.raises(ValueError):
        Gap((0, 0), [(1,)], [0], [1])


def test_gap_cap():
    g = Gap((0,), [(1,), (F(1, 1000),)], [0, 0], [9999, 9999])
    with pytest.raises(GapTooLarge, match="GAP too large to enumerate"):
        gap_points(g)


def test_gap_json_roundtrip():
    g = Gap((F(1, 2), 0), [(1, 2)], [-1], [3])
    obj = json.loads(g.dumps())
    assert obj == {"x0": [[1, 2], [0, 1]], "gens": [[[1, 1], [2, 1]]], "lo": [-1], "hi": [3]}
    assert Gap.from_json(obj) == g


def test_intersect_examples():
    assert intersect_count(PointSet([(0,), (1,), (2,)]), Gap((0,), [(1,)], [0], [10])) == 3
    assert intersect_count(PointSet([(0, 1), (2, 1)]), Gap((0, 0), [(1, 0)], [-5, ], [5])) == 0
    a = points_in_ball(LatticeBasis.standard(2), Ball(2))
    assert intersect_count(a, Gap((0, 0), [(1, 0)], [-2], [2])) == 5


@given(gaps())
def test_gap_points_match_oracle(g):
    pts = gap_points(g)
    assert set(pts) == oracles.gap_point_set(g.x0, g.gens, g.lo, g.hi)
    assert len(pts) <= gap_size_multiset(g)


@given(gaps(), st.lists(st.tuples(st.fractions(-6, 6, max_denominator=2)), max_size=30))
def test_intersect_matches_oracle_1d(g, a):
    if g.n != 1 or not a:
        return
    s = PointSet(a)
    assert intersect_count(s, g) == oracles.gap_intersection(set(s), g.x0, g.gens, g.lo, g.hi)


@given(st.data())
def test_intersect_matches_oracle(data):
    g = data.draw(gaps(n=2))
    pts = data.draw(st.lists(st.tuples(st.fractions(-8, 8, max_denominator=2),
                                       st.fractions(-8, 8, max_denominator=2)), min_size=1, max_size=40))
    # mix in points of the GAP so hits are common
    inside = list(gap_points(g))
    pts += data.draw(st.lists(st.sampled_from(inside), max_size=10))
    s = PointSet(pts)
    assert intersect_count(s, g) == oracles.gap_intersection(set(s), g.x0, g.gens, g.lo, g.hi)


@given(gaps(rational=False, n=3))
def test_independent_generators_injective(g):
    from latgap.gap import generators_independent

    if generators_independent(g):
        assert len(gap_points(g)) == gap_size_multiset(g)


def test_sort_examples():
    g = Gap((0,), [(1,), (7,)], [0, 0], [1, 5])
    s = sort_dims_nonincreasing(g)
    assert s.gens == ((7,), (1,)) and s.lo == (0, 0) and s.hi == (5, 1)
    assert sort_dims_nonincreasing(s) == s
    tie = Gap((0,), [(1,), (7,)], [0, 0], [3, 3])
    assert sort_dims_nonincreasing(tie) == tie


@given(gaps())
def test_sort_preserves_points(g):
    s = sort_dims_nonincreasing(g)
    assert is_sorted(s)
    assert gap_points(s) == gap_points(g)


def test_restrict_examples():
    g = Gap((1, 1), [(1, 0), (0, 1)], [0, 0], [2, 2])
    r = restrict_gap(g, 2, [0])
    assert r.x0 == g.x0 and r.gens == ((1, 0),)
    one = Gap((1,), [(3,)], [-2], [4])
    assert restrict_gap(one, 1, [-2]) == Gap((-5,))
    with pytest.raises(ValueError):
        restrict_gap(one, 1, [5])
    with pytest.raises(ValueError):
        restrict_gap(one, 1, [0, 0])
    # a cut beyond d fixes nothing
    assert restrict_gap(one, 2, []) == one


@given(gaps(d_max=4), st.integers(1, 5))
def test_restriction_partition(g, cut):
    g = sort_dims_nonincreasing(g)
    cut = min(cut, g.d + 1)
    parts = list(restrictions(g, cut))
    assert sum(gap_size_multiset(r) for _, r in parts) == gap_size_multiset(g)
    union = set()
    for _, r in parts:
        union |= set(gap_points(r))
    assert union == set(gap_points(g))


@given(gaps(n=2, d_max=3), st.integers(1, 4),
       st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=40))
def test_subadditivity(g, cut, a):
    g = sort_dims_nonincreasing(g)
    cut = min(cut, g.d + 1)
    s = PointSet(a) | gap_points(g)
    total = sum(intersect_count(s, r) for _, r in restrictions(g, cut))
    assert intersect_count(s, g) <= total


def test_lattice_image_examples():
    img = gap_as_lattice_image(Gap((5,), [(1,)], [-1], [1]))
    assert img.box_halfwidths == (1,) and img.shift == (5,)
    assert set(img.points()) == {(4,), (5,), (6,)}
    img = gap_as_lattice_image(Gap((5,), [(1,)], [0], [2]))
    assert img.shift == (6,)
    assert set(img.points()) == {(5,), (6,), (7,)}
    g = Gap((0, 0), [(1, 2), (3, -1)], [0, -2], [2, 0])
    assert gap_as_lattice_image(g).points() == gap_points(g)
    with pytest.raises(ValueError, match="conversion requires even side lengths"):
        gap_as_lattice_image(Gap((0,), [(1,)], [0], [1]))


@given(gaps(side=2))
def test_lattice_image_roundtrip(g):
    even = Gap(g.x0, g.gens, g.lo, [a + 2 * ((b - a) // 2) for a, b in zip(g.lo, g.hi)])
    img = gap_as_lattice_image(even)
    assert img.points() == gap_points(even)
    for a, b, h in zip(even.lo, even.hi, img.box_halfwidths):
        assert h == F(b - a, 2)


def test_restriction_indices_cover_box():
    g = Gap((0,), [(1,), (2,), (5,)], [0, 1, -1], [2, 1, 0])
    ts = [t for t, _ in restrictions(g, 2)]
    assert ts == list(itertools.product(range(1, 2), range(-1, 1)))
