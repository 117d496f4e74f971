import itertools
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latgap import DimensionError, LatticeBasis, Subspace, determinant, lll_reduce, membership
from latgap.lattice import (
    gram,
    intersect_rational_subspace,
    is_lll_reduced,
    lll_with_transform,
    sublattice_in_subspace,
)
from strategies import full_rank_basis, unimodular

F = Fraction


@pytest.mark.parametrize("cols, expected", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1),
    ([[2, 0], [0, 3]], 6),
])
def test_determinant_exact(cols, expected):
    enc = determinant(LatticeBasis(cols))
    assert enc.exact and enc.lo == expected


def test_determinant_irrational_enclosure():
    enc = determinant(LatticeBasis([[1, 1, 0], [0, 1, 1]]))
    assert enc.width <= F(1, 10 ** 12)
    assert enc.lo ** 2 <= 3 <= enc.hi ** 2
    assert abs(float(enc) - math.sqrt(3)) < 1e-12


def test_degenerate_basis_rejected():
    with pytest.raises(ValueError, match="degenerate basis"):
        LatticeBasis([[1, 2], [2, 4]])
    with pytest.raises(ValueError, match="degenerate basis"):
        LatticeBasis([[1, 0], [0, 1], [1, 1]])


def test_mixed_dimensions_rejected():
    with pytest.raises(DimensionError):
        LatticeBasis([[1, 0], [0, 1, 0]])


@pytest.mark.parametrize("cols, expected", [
    ([[1, 0], [0, 1]], [[1, 0], [0, 1]]),
    ([[1, 1, 0], [0, 1, 1]], [[2, 1], [1, 2]]),
    ([[2, 0], [0, 3]], [[4, 0], [0, 9]]),
])
def test_gram_examples(cols, expected):
    assert gram(LatticeBasis(cols)) == [[F(x) for x in r] for r in expected]


def test_lll_examples():
    z2 = LatticeBasis.standard(2)
    assert is_lll_reduced(lll_reduce(z2, F(99, 100)), F(99, 100))
    skew = LatticeBasis([[1, 0], [10 ** 6, 1]])
    red = lll_reduce(skew, F(3, 4))
    assert max(sum(x * x for x in c) for c in red.columns) <= 2
    assert all(membership(z2, c) for c in red.columns)
    assert all(membership(red, c) for c in z2.columns)


def test_lll_delta_range():
    with pytest.raises(ValueError):
        lll_reduce(LatticeBasis.standard(2), F(1, 4))
    with pytest.raises(ValueError):
        lll_reduce(LatticeBasis.standard(2), F(1))


@given(full_rank_basis(n_max=4, rational=True), st.sampled_from([F(3, 4), F(99, 100)]))
def test_lll_same_lattice_and_reduced(b, delta):
    red, u = lll_with_transform(b, delta)
    assert is_lll_reduced(red, delta)
    assert red.gram_det == b.gram_det
    assert all(membership(b, c) for c in red.columns)
    assert all(membership(red, c) for c in b.columns)
    assert red == b.transform(u)


@given(st.data())
def test_determinant_unimodular_invariance(data):
    b = data.draw(full_rank_basis(n_max=4))
    for _ in range(20):
        u = data.draw(unimodular(b.rank))
        c = b.transform(u)
        assert c.gram_det == b.gram_det
        assert determinant(c).overlaps(determinant(b), F(1, 10 ** 12))


@pytest.mark.parametrize("p, expected", [((3, -7), True), ((F(1, 2), 0), False)])
def test_membership_z2(p, expected):
    assert membership(LatticeBasis.standard(2), p) is expected


def test_membership_sublattice():
    assert membership(LatticeBasis([[2, 0], [1, 1]]), (1, 0)) is False
    assert membership(LatticeBasis([[2, 0], [1, 1]]), (3, 1)) is True


def test_sublattice_examples():
    s = sublattice_in_subspace(LatticeBasis.standard(3), Subspace([[1, 0, 0], [0, 1, 0]]))
    assert s.rank == 2 and s.gram_det == 1
    s = sublattice_in_subspace(LatticeBasis.standard(2), Subspace([[1, 1]]))
    assert s.gram_det == 2 and set(s.columns) <= {(1, 1), (-1, -1)}
    s = sublattice_in_subspace(LatticeBasis([[2, 0], [1, 1]]), Subspace([[1, 0]]))
    assert s.gram_det == 4 and set(s.columns) <= {(2, 0), (-2, 0)}


def test_sublattice_requires_lattice_subspace():
    # a line not spanned by points of a rank-1 lattice in R^3
    line = LatticeBasis([[1, 0, 0]])
    with pytest.raises(ValueError, match="not a lattice subspace"):
        sublattice_in_subspace(line, Subspace([[0, 1, 0]]))
    with pytest.raises(ValueError, match="not a lattice subspace"):
        sublattice_in_subspace(LatticeBasis([[1, 0, 0], [0, 1, 0]]), Subspace([[1, 0, 0], [0, 1, 1]]))
    # spanning vectors off the lattice are fine when the span is a lattice subspace
    assert sublattice_in_subspace(LatticeBasis.standard(2), Subspace([[F(1, 3), 1]])).gram_det == 10


@given(st.data())
def test_sublattice_saturated(data):
    b = data.draw(full_rank_basis(n_min=2, n_max=3, entry=3))
    n = b.n
    k = data.draw(st.integers(1, n - 1))
    coeffs = [data.draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n)) for _ in range(k)]
    spanning = [b.combine(c) for c in coeffs]
    try:
        w = Subspace(spanning)
    except ValueError:
        return
    s = sublattice_in_subspace(b, w)
    assert s.rank == k
    assert all(membership(b, c) and w.contains(c) for c in s.columns)
    # every lattice point of span(W) in a coefficient box is generated by s
    for z in itertools.product(range(-3, 4), repeat=n):
        p = b.combine(z)
        if w.contains(p):
            assert membership(s, p)


def test_sublattice_canonical():
    b = LatticeBasis.standard(3)
    w1 = Subspace([[1, 1, 0], [0, 1, 1]])
    w2 = Subspace([[1, 2, 1], [1, 0, -1]])
    assert sublattice_in_subspace(b, w1) == sublattice_in_subspace(b, w2)


def test_intersect_rational_subspace():
    b = LatticeBasis([[2, 0], [1, 1]])
    s = intersect_rational_subspace(b, [[F(1, 2), 0]])
    assert s is not None and s.gram_det == 4
    assert intersect_rational_subspace(LatticeBasis([[1, 0, 0]]), [[0, 1, 0]]) is None


def test_json_roundtrip():
    b = LatticeBasis([[F(1, 2), 3], [0, F(-2, 7)]])
    obj = json.loads(b.dumps())
    assert obj["dim"] == 2
    assert obj["columns"][0] == [[1, 2], [3, 1]]
    assert LatticeBasis.from_json(obj) == b
    with pytest.raises(DimensionError):
        LatticeBasis.from_json({"dim": 3, "columns": obj["columns"]})
