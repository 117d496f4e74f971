"""Exact lattices: bases, Gram matrices, determinants, LLL reduction, membership and
intersections with lattice subspaces."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import _intmat
from ._rational import (
    Enclosure,
    as_fraction,
    as_vector,
    dot,
    lcm_denominator,
    ldl,
    rank,
    solve,
    sqrt_enclosure,
)

Point = tuple[Fraction, ...]


class DimensionError(ValueError):
    pass


def point(coords: Iterable) -> Point:
    """Build an exact point from ints, Fractions, strings or ``[num, den]`` pairs."""
    return as_vector(coords)


def check_dim(p: Sequence, n: int) -> None:
    if len(p) != n:
        raise DimensionError(f"point of dimension {len(p)} used in dimension {n}")


@dataclass(frozen=True)
class LatticeBasis:
    """Basis of a rank-d lattice in R^n, stored as d exact-rational columns."""

    columns: tuple[Point, ...]

    def __init__(self, columns: Iterable[Iterable]):
        cols = tuple(point(c) for c in columns)
        if not cols:
            raise ValueError("degenerate basis")
        n = len(cols[0])
        for c in cols:
            check_dim(c, n)
        if len(cols) > n:
            raise ValueError("degenerate basis")
        object.__setattr__(self, "columns", cols)
        if rank([list(c) for c in cols]) != len(cols):
            raise ValueError("degenerate basis")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "LatticeBasis":
        """Build from an n x d matrix given row by row (columns are the basis vectors)."""
        return cls(zip(*rows))

    @classmethod
    def standard(cls, n: int) -> "LatticeBasis":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.columns[0])

    @property
    def rank(self) -> int:
        return len(self.columns)

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(dot(u, v) for v in self.columns) for u in self.columns)

    @cached_property
    def gram_det(self) -> Fraction:
        _, d = ldl(self.gram)
        out = Fraction(1)
        for x in d:
            out *= x
        return out

    @cached_property
    def gso(self) -> tuple[list[list[Fraction]], list[Fraction]]:
        """Exact Gram-Schmidt data (mu, squared norms of b*_i)."""
        return ldl(self.gram)

    @cached_property
    def denominator(self) -> int:
        return lcm_denominator(x for c in self.columns for x in c)

    @cached_property
    def integer_columns(self) -> list[list[int]]:
        """Columns multiplied by ``denominator``."""
        d = self.denominator
        return [[int(x * d) for x in c] for c in self.columns]

    def combine(self, coeffs: Sequence[int]) -> Point:
        """The lattice point sum_i coeffs[i] * b_i."""
        return tuple(
            sum((k * c[i] for k, c in zip(coeffs, self.columns)), Fraction(0))
            for i in range(self.n)
        )

    def scaled(self, s) -> "LatticeBasis":
        s = as_fraction(s)
        return LatticeBasis([[s * x for x in c] for c in self.columns])

    def transform(self, u: Sequence[Sequence[int]]) -> "LatticeBasis":
        """Basis B @ U for an integer d x d matrix U (rows of U indexed by old columns)."""
        d = self.rank
        return LatticeBasis(
            [self.combine([u[i][j] for i in range(d)]) for j in range(d)]
        )

    def to_json(self) -> dict:
        return {
            "dim": self.n,
            "columns": [[[x.numerator, x.denominator] for x in c] for c in self.columns],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LatticeBasis":
        b = cls(obj["columns"])
        if "dim" in obj and int(obj["dim"]) != b.n:
            raise DimensionError("'dim' does not match column length")
        return b

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class Subspace:
    """Linear subspace given by linearly independent spanning vectors."""

    spanning: tuple[Point, ...] = field()

    def __init__(self, spanning: Iterable[Iterable]):
        vecs = tuple(point(v) for v in spanning)
        if vecs:
            n = len(vecs[0])
            for v in vecs:
                check_dim(v, n)
            if rank([list(v) for v in vecs]) != len(vecs):
                raise ValueError("spanning vectors are linearly dependent")
        object.__setattr__(self, "spanning", vecs)

    @property
    def dim(self) -> int:
        return len(self.spanning)

    def contains(self, p: Sequence) -> bool:
        if not self.spanning:
            return all(x == 0 for x in p)
        cols = [list(r) for r in zip(*self.spanning)]
        return solve(cols, list(point(p))) is not None


def gram(basis: LatticeBasis) -> list[list[Fraction]]:
    return [list(r) for r in basis.gram]


def determinant(basis: LatticeBasis) -> Enclosure:
    """det(B^T B)^(1/2) as a certified enclosure (exact when it is rational)."""
    return sqrt_enclosure(basis.gram_det)


def coefficients(basis: LatticeBasis, p: Sequence) -> list[Fraction] | None:
    """Rational coordinates of p in the basis, or None if p is outside its span."""
    p = point(p)
    check_dim(p, basis.n)
    rows = [list(r) for r in zip(*basis.columns)]
    return solve(rows, list(p))


def membership(basis: LatticeBasis, p: Sequence) -> bool:
    """True iff p is an integer combination of the basis columns."""
    x = coefficients(basis, p)
    return x is not None and all(c.denominator == 1 for c in x)


def is_lll_reduced(basis: LatticeBasis, delta=Fraction(99, 100)) -> bool:
    delta = as_fraction(delta)
    mu, d = basis.gso
    k = basis.rank
    for i in range(k):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for i in range(1, k):
        if d[i] < (delta - mu[i][i - 1] ** 2) * d[i - 1]:
            return False
    return True


def lll_integer(cols: list[list[int]], delta: Fraction) -> tuple[list[list[int]], list[list[int]]]:
    """Integral LLL on integer columns (exact; no rational Gram-Schmidt).

    Returns ``(reduced_columns, U)`` where ``U[i][j]`` is the coefficient of input
    column i in output column j. Follows the all-integer variant that tracks the
    leading Gram minors d_i and the scaled coefficients lambda_ij = d_{j+1} mu_ij.
    """
    k_max = len(cols)
    b = [list(c) for c in cols]
    u = [[int(i == j) for j in range(k_max)] for i in range(k_max)]  # u[j] = coeffs of b[j]
    p, q = delta.numerator, delta.denominator

    def ip(x, y):
        return sum(a * c for a, c in zip(x, y))

    # d[0] = 1, d[i+1] = Gram minor of order i+1; lam[i][j] for j < i
    d = [1] + [0] * k_max
    lam = [[0] * k_max for _ in range(k_max)]
    for i in range(k_max):
        for j in range(i + 1):
            s = ip(b[i], b[j])
            for m in range(j):
                s = (d[m + 1] * s - lam[i][m] * lam[j][m]) // d[m]
            if j < i:
                lam[i][j] = s
            else:
                d[i + 1] = s
                if s == 0:
                    raise ValueError("degenerate basis")

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            r = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - r * y for x, y in zip(b[k], b[l])]
            u[k] = [x - r * y for x, y in zip(u[k], u[l])]
            lam[k][l] -= r * d[l + 1]
            for i in range(l):
                lam[k][i] -= r * lam[l][i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        u[k], u[k - 1] = u[k - 1], u[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lmb = lam[k][k - 1]
        bb = (d[k - 1] * d[k + 1] + lmb * lmb) // d[k]
        for i in range(k + 1, k_max):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lmb * t) // d[k]
            lam[i][k - 1] = (bb * t + lmb * lam[i][k]) // d[k + 1]
        d[k] = bb

    k = 1
    while k < k_max:
        red(k, k - 1)
        # Lovasz: d_{k+1} d_{k-1} >= (delta d_k^2 - lam^2), scaled by q
        if q * d[k + 1] * d[k - 1] < p * d[k] * d[k] - q * lam[k][k - 1] ** 2:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    ut = [[u[j][i] for j in range(k_max)] for i in range(k_max)]
    return b, ut


def lll_reduce(basis: LatticeBasis, delta=Fraction(99, 100)) -> LatticeBasis:
    """LLL-reduce with Lovasz parameter ``delta`` in (1/4, 1); exact arithmetic throughout."""
    delta = as_fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    red, _ = lll_with_transform(basis, delta)
    return red


def lll_with_transform(basis: LatticeBasis, delta=Fraction(99, 100)) -> tuple[LatticeBasis, list[list[int]]]:
    """LLL reduction plus the unimodular U with reduced = basis @ U."""
    delta = as_fraction(delta)
    den = basis.denominator
    cols, u = lll_integer(basis.integer_columns, delta)
    return LatticeBasis([[Fraction(x, den) for x in c] for c in cols]), u


def sublattice_in_subspace(basis: LatticeBasis, w: Subspace) -> LatticeBasis:
    """Basis of the saturated intersection of the lattice with span(w).

    span(w) must be a lattice subspace, i.e. spanned by lattice points; the given
    spanning vectors themselves need not lie in the lattice. The returned basis is
    the row-HNF canonical one in lattice coordinates.
    """
    if w.dim == 0:
        raise ValueError("zero-dimensional subspace has no basis")
    for v in w.spanning:
        check_dim(v, basis.n)
    sub = intersect_rational_subspace(basis, w.spanning)
    if sub is None or sub.rank != w.dim:
        raise ValueError("not a lattice subspace")
    return sub


def intersect_rational_subspace(basis: LatticeBasis, spanning: Sequence[Sequence]) -> LatticeBasis | None:
    """Lattice Λ ∩ span(spanning) for an arbitrary rational subspace.

    The span need not be a lattice subspace, so the result can have rank below
    its dimension; returns None when the intersection is {0}.
    """
    # coefficient-space preimage of span(spanning): x with B x in span, i.e. M B x = 0
    # for M spanning the orthogonal complement of the subspace.
    from ._rational import nullspace

    n = basis.n
    if spanning:
        ortho = nullspace([list(point(v)) for v in spanning], n)
    else:
        ortho = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if not ortho:
        return LatticeBasis(basis.columns)
    rows = [[dot(m, c) for c in basis.columns] for m in ortho]
    ker = _intmat.integer_kernel(_intmat.integerize_rows(rows), basis.rank)
    if not ker:
        return None
    ker = _intmat.hnf_rows(ker)
    return LatticeBasis([basis.combine(c) for c in ker])
