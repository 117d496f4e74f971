import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from latgap import (
    Ball,
    LatticeBasis,
    VPolytope,
    ball_volume,
    count_points_in_ball,
    counterexample_body,
    integer_points_in_polytope,
    lattice_points_in_polytope,
    points_in_ball,
)
from latgap.enumeration import hull_constraints, radius_for_volume
from strategies import full_rank_basis, radii_sq

F = Fraction


def as_set(ps):
    return set(ps)


@pytest.mark.parametrize("n, r, count", [(2, 1, 5), (2, 2, 13), (2, 5, 81), (3, 1, 7), (3, 2, 33)])
def test_ball_counts(backend, n, r, count):
    z = LatticeBasis.standard(n)
    assert count_points_in_ball(z, Ball(r)) == count
    assert len(points_in_ball(z, Ball(r))) == count


def test_unit_disk_points(backend):
    pts = points_in_ball(LatticeBasis.standard(2), Ball(1))
    assert as_set(pts) == {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}


def test_below_shortest_vector(backend):
    b = LatticeBasis([[3, 1], [1, 4]])
    assert as_set(points_in_ball(b, Ball(F(1, 2)))) == {(0, 0)}
    assert count_points_in_ball(b, Ball(F(1, 2))) == 1


def test_boundary_is_closed(backend):
    # (3, 4) has norm exactly 5
    pts = points_in_ball(LatticeBasis.standard(2), Ball(5))
    assert (3, 4) in pts and (5, 0) in pts


def test_centered_ball(backend):
    z2 = LatticeBasis.standard(2)
    ball = Ball(radius_sq=F(1, 4), center=(F(1, 2), 0))
    assert as_set(points_in_ball(z2, ball)) == {(0, 0), (1, 0)}
    assert count_points_in_ball(z2, ball) == 2


@settings(max_examples=30)
@given(full_rank_basis(n_max=3, rational=True), radii_sq)
def test_ball_matches_oracle(backend, b, rq):
    assume(math.prod(2 * k + 1 for k in oracles.coefficient_box(b.columns, rq)) <= 20000)
    expected = oracles.ball_points(b.columns, rq)
    got = points_in_ball(b, Ball(radius_sq=rq))
    assert as_set(got) == expected
    assert count_points_in_ball(b, Ball(radius_sq=rq)) == len(expected)


@settings(max_examples=15)
@given(full_rank_basis(n_min=2, n_max=3, entry=3),
       st.tuples(st.fractions(-2, 2, max_denominator=3), st.fractions(-2, 2, max_denominator=3)),
       radii_sq)
def test_centered_ball_matches_oracle(backend, b, c2, rq):
    center = tuple(c2) + (F(0),) * (b.n - 2)
    got = points_in_ball(b, Ball(radius_sq=rq, center=center))
    assert as_set(got) == oracles.ball_points(b.columns, rq, center=center)
    assert count_points_in_ball(b, Ball(radius_sq=rq, center=center)) == len(got)


def test_rank_deficient_lattice(backend):
    b = LatticeBasis([[1, 1, 0], [0, 1, 1]])
    pts = points_in_ball(b, Ball(2))
    assert as_set(pts) == oracles.ball_points(b.columns, 4)


@given(full_rank_basis(n_max=3, rational=True), radii_sq, radii_sq)
def test_ball_monotone_and_symmetric(b, r1, r2):
    lo, hi = sorted([r1, r2])
    small = points_in_ball(b, Ball(radius_sq=lo))
    big = points_in_ball(b, Ball(radius_sq=hi))
    assert small <= big
    assert small.is_symmetric() and big.is_symmetric()


def test_ball_volume():
    assert ball_volume(2, 1) == pytest.approx(math.pi, rel=1e-12)
    assert ball_volume(3, 1) == pytest.approx(4 * math.pi / 3, rel=1e-12)
    assert ball_volume(4, 2) == pytest.approx(78.9568352087, rel=1e-10)
    with pytest.raises(ValueError):
        ball_volume(0, 1)


@given(st.integers(1, 6), st.floats(0.01, 1000))
def test_radius_for_volume(n, v):
    assert float(ball_volume(n, radius_for_volume(n, v))) == pytest.approx(v, rel=1e-12)


def test_polytope_examples():
    assert as_set(integer_points_in_polytope(VPolytope([(0, 0), (1, 0), (0, 1)]))) == {(0, 0), (1, 0), (0, 1)}
    assert len(integer_points_in_polytope(counterexample_body(2))) == 10
    assert len(integer_points_in_polytope(VPolytope([(3, 0), (-3, 0), (0, 3), (0, -3)]))) == 25


def test_counterexample_sizes_all_n():
    for n in range(1, 51):
        assert len(integer_points_in_polytope(counterexample_body(n))) == 4 * n + 2


@settings(max_examples=30)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.tuples(*[st.fractions(-3, 3, max_denominator=2)] * n), min_size=1, max_size=6)))
def test_polytope_matches_lp_oracle(verts):
    got = integer_points_in_polytope(VPolytope(verts))
    assert as_set(got) == oracles.polytope_integer_points(verts)


@settings(max_examples=20)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=5),
       full_rank_basis(n_min=2, n_max=2, entry=2, rational=True))
def test_lattice_polytope_matches_oracle(verts, b):
    got = lattice_points_in_polytope(b, VPolytope(verts))
    box = oracles.coefficient_box(b.columns, 18)  # every vertex has norm^2 <= 18
    expected = set()
    for z in itertools.product(*[range(-k, k + 1) for k in box]):
        p = b.combine(z)
        if oracles.in_hull(verts, p):
            expected.add(p)
    assert as_set(got) == expected


def test_hull_constraints_of_square():
    eqs, ineqs = hull_constraints(VPolytope([(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert eqs == [] or eqs == ()
    assert len(ineqs) == 4


def test_degenerate_polytopes():
    seg = VPolytope([(0, 0, 0), (2, 2, 2)])
    assert as_set(integer_points_in_polytope(seg)) == {(0, 0, 0), (1, 1, 1), (2, 2, 2)}
    assert as_set(integer_points_in_polytope(VPolytope([(F(1, 2), 0)]))) == set()


def test_symmetry_flags():
    assert VPolytope([(1, 0), (-1, 0), (0, 1), (0, -1)]).is_symmetric()
    assert not counterexample_body(3).is_symmetric()
    assert Ball(2).is_origin_centered()
    assert not Ball(2, center=(1, 0)).is_origin_centered()


def test_ball_validation():
    with pytest.raises(ValueError):
        Ball(0)
    with pytest.raises(ValueError):
        Ball(1, radius_sq=1)
    r = Ball.from_real_radius(2 ** (5 / 8))
    assert r.radius_sq >= F(2 ** (5 / 4)) * (1 - F(1, 10 ** 14))
