"""Lattice points in Euclidean balls and integer points in V-polytopes, counted exactly."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath
import numpy as np

from . import kernels
from ._rational import (
    as_fraction,
    dot,
    lcm_denominator,
    ldl,
    nullspace,
    rref,
    solve,
    to_mpf,
)
from .lattice import LatticeBasis, Point, check_dim, lll_integer, point
from .pointset import PointSet

# relative band around the radius inside which float classification defers to exact arithmetic
COUNT_MARGIN = 1e-8


@dataclass(frozen=True)
class Ball:
    """Closed Euclidean ball; the squared radius is stored exactly."""

    radius_sq: Fraction
    center: Point | None = None

    def __init__(self, radius=None, *, radius_sq=None, center: Sequence | None = None):
        if (radius is None) == (radius_sq is None):
            raise ValueError("give exactly one of radius, radius_sq")
        rsq = as_fraction(radius) ** 2 if radius is not None else as_fraction(radius_sq)
        if radius is not None and as_fraction(radius) <= 0:
            raise ValueError("radius must be positive")
        if rsq <= 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "radius_sq", rsq)
        object.__setattr__(self, "center", None if center is None else point(center))

    @classmethod
    def from_real_radius(cls, r, center=None, digits: int = 30) -> "Ball":
        """Ball whose rational squared radius is an upper bound on r**2 (relative error < 1e-25)."""
        with mpmath.workdps(digits + 10):
            r2 = mpmath.mpf(r) ** 2 if not isinstance(r, mpmath.mpf) else r ** 2
            scale = 10 ** digits
            num = int(mpmath.ceil(r2 * scale))
        return cls(radius_sq=Fraction(num, scale), center=center)

    @property
    def radius(self) -> float:
        return math.sqrt(self.radius_sq)

    def is_origin_centered(self) -> bool:
        return self.center is None or all(x == 0 for x in self.center)

    def scaled(self, s) -> "Ball":
        s = as_fraction(s)
        c = None if self.center is None else tuple(s * x for x in self.center)
        return Ball(radius_sq=self.radius_sq * s * s, center=c)

    def contains(self, p: Sequence) -> bool:
        p = point(p)
        c = self.center or (Fraction(0),) * len(p)
        return sum(((a - b) ** 2 for a, b in zip(p, c)), Fraction(0)) <= self.radius_sq


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of finitely many exact points."""

    vertices: tuple[Point, ...]

    def __init__(self, vertices: Iterable[Sequence]):
        vs = tuple(point(v) for v in vertices)
        if not vs:
            raise ValueError("polytope needs at least one vertex")
        n = len(vs[0])
        for v in vs:
            check_dim(v, n)
        object.__setattr__(self, "vertices", vs)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def is_symmetric(self) -> bool:
        vs = set(self.vertices)
        return all(tuple(-x for x in v) in vs for v in vs)

    def scaled(self, s) -> "VPolytope":
        s = as_fraction(s)
        return VPolytope([[s * x for x in v] for v in self.vertices])

    def contains(self, p: Sequence) -> bool:
        eqs, ineqs = hull_constraints(self)
        p = point(p)
        return (all(dot(a, p) == b for a, b in eqs)
                and all(dot(a, p) <= b for a, b in ineqs))


def counterexample_body(N: int) -> VPolytope:
    """Hull of (N,0,0), (-N,0,0), (0,N,1), (0,-N,1): a non-symmetric body with large doubling."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    return VPolytope([(N, 0, 0), (-N, 0, 0), (0, N, 1), (0, -N, 1)])


# ---------------------------------------------------------------------------
# balls


@lru_cache(maxsize=256)
def _prepared(basis: LatticeBasis):
    """LLL-reduced integer columns, their denominator and float Gram-Schmidt data."""
    den = basis.denominator
    cols, _ = lll_integer(basis.integer_columns, Fraction(99, 100))
    red = LatticeBasis([[Fraction(x, den) for x in c] for c in cols])
    mu, bn = ldl(red.gram)
    d = red.rank
    mu_f = np.zeros((d, d))
    for i in range(d):
        for j in range(i):
            mu_f[i, j] = float(mu[i][j])
    bn_f = np.array([float(x) for x in bn])
    return red, cols, den, mu_f, bn_f


def _center_data(red: LatticeBasis, ball: Ball):
    """Coordinates of the center's projection onto the lattice span, and the residual squared radius."""
    d = red.rank
    if ball.is_origin_centered():
        return [Fraction(0)] * d, ball.radius_sq
    c = ball.center
    check_dim(c, red.n)
    y = solve([list(r) for r in red.gram], [dot(b, c) for b in red.columns])
    proj = [sum((yi * b[k] for yi, b in zip(y, red.columns)), Fraction(0)) for k in range(red.n)]
    perp = sum(((a - b) ** 2 for a, b in zip(c, proj)), Fraction(0))
    return y, ball.radius_sq - perp


def _combine_int(coeffs: np.ndarray, cols) -> np.ndarray:
    """Integer points coeffs @ cols, in int64 when that cannot overflow."""
    cmax = max((abs(int(v)) for c in cols for v in c), default=0)
    xmax = int(np.abs(coeffs).max()) if coeffs.size else 0
    if cmax * xmax * max(len(cols), 1) < (1 << 62):
        return coeffs @ np.array(cols, dtype=np.int64).reshape(len(cols), -1)
    return coeffs.astype(object) @ np.array(cols, dtype=object)


def _exact_filter(coeffs: np.ndarray, cols, den: int, ball: Ball, n: int) -> np.ndarray:
    """Numerators (over den) of the candidate points lying in the closed ball, decided exactly."""
    if coeffs.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    pts = _combine_int(coeffs, cols)
    rq = ball.radius_sq
    if ball.is_origin_centered():
        e, f, cc = den, 1, [0] * n
    else:
        e = math.lcm(den, lcm_denominator(ball.center))
        f = e // den
        cc = [int(x * e) for x in ball.center]
    lim = e * e * rq.numerator
    diff = pts if f == 1 and not any(cc) else pts.astype(object) * f - np.array(cc, dtype=object)
    m = int(np.abs(diff).max())
    if diff.dtype == np.int64 and n * m * m * rq.denominator < (1 << 62) and lim < (1 << 62):
        keep = (diff * diff).sum(axis=1) * rq.denominator <= lim
    else:
        d = diff.astype(object)
        keep = ((d * d).sum(axis=1) * rq.denominator <= lim).astype(bool)
    return pts[keep]


def points_in_ball(basis: LatticeBasis, ball: Ball) -> PointSet:
    """All lattice points p with ||p - center||^2 <= radius^2, decided exactly."""
    red, cols, den, mu_f, bn_f = _prepared(basis)
    y, bound = _center_data(red, ball)
    if bound < 0:
        return PointSet.empty(basis.n)
    cand = kernels.enumerate_ball(mu_f, bn_f, np.array([float(v) for v in y]), float(bound))
    pts = _exact_filter(cand, cols, den, ball, basis.n)
    return PointSet.from_numerators(pts, den, basis.n)


def count_points_in_ball(basis: LatticeBasis, ball: Ball) -> int:
    """Number of lattice points in the closed ball, without materializing them."""
    red, cols, den, mu_f, bn_f = _prepared(basis)
    y, bound = _center_data(red, ball)
    if bound < 0:
        return 0
    n_sure, amb = kernels.count_ball(mu_f, bn_f, np.array([float(v) for v in y]), float(bound),
                                     COUNT_MARGIN)
    return int(n_sure) + len(_exact_filter(amb, cols, den, ball, basis.n))


def ball_volume(n: int, r) -> float:
    """Volume of the n-dimensional Euclidean ball of radius r."""
    if n < 1:
        raise ValueError("dimension must be positive")
    with mpmath.workdps(40):
        r = to_mpf(r)
        if r <= 0:
            raise ValueError("radius must be positive")
        v = mpmath.pi ** (mpmath.mpf(n) / 2) * r ** n / mpmath.gamma(mpmath.mpf(n) / 2 + 1)
        return float(v)


def radius_for_volume(n: int, volume) -> Fraction:
    """Rational radius (upper rounded, 25 digits) of the n-ball of the given volume."""
    with mpmath.workdps(40):
        r = (to_mpf(volume) * mpmath.gamma(mpmath.mpf(n) / 2 + 1)
             / mpmath.pi ** (mpmath.mpf(n) / 2)) ** (mpmath.mpf(1) / n)
        return Fraction(int(mpmath.ceil(r * 10 ** 25)), 10 ** 25)


# ---------------------------------------------------------------------------
# polytopes


def _primitive(a: Sequence[Fraction], b: Fraction) -> tuple[tuple[int, ...], int]:
    d = lcm_denominator(list(a) + [b])
    ai = [int(x * d) for x in a]
    bi = int(b * d)
    g = 0
    for v in ai + [bi]:
        g = math.gcd(g, v)
    g = g or 1
    return tuple(v // g for v in ai), bi // g


@lru_cache(maxsize=128)
def hull_constraints(poly: VPolytope):
    """Exact H-description of the hull: (equations, inequalities) as (a, b) integer pairs.

    Equations a.x = b cut out the affine hull; inequalities a.x <= b are all supporting
    hyperplanes spanned by affinely independent vertex subsets inside it.
    """
    vs = poly.vertices
    n = poly.dim
    v0 = vs[0]
    diffs = [[a - b for a, b in zip(v, v0)] for v in vs[1:]]
    if diffs:
        r, piv = rref(diffs)
        dirs = [row for row in r[: len(piv)]]
    else:
        dirs = []
    k = len(dirs)
    eqs = []
    for a in nullspace(dirs, n) if dirs else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]:
        eqs.append(_primitive(a, dot(a, v0)))
    ineqs = set()
    if k >= 1:
        for subset in itertools.combinations(range(len(vs)), k):
            s0 = vs[subset[0]]
            rows = [[dot([a - b for a, b in zip(vs[j], s0)], dv) for dv in dirs] for j in subset[1:]]
            ns = nullspace(rows, k) if rows else [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
            if len(ns) != 1:
                continue
            c = ns[0]
            a = [sum((ci * dv[t] for ci, dv in zip(c, dirs)), Fraction(0)) for t in range(n)]
            b = dot(a, s0)
            vals = [dot(a, v) for v in vs]
            if all(x <= b for x in vals):
                ineqs.add(_primitive(a, b))
            elif all(x >= b for x in vals):
                ineqs.add(_primitive([-x for x in a], -b))
    return tuple(eqs), tuple(sorted(ineqs))


def integer_points_in_polytope(poly: VPolytope) -> PointSet:
    """All integer points of the closed convex hull of the vertices."""
    n = poly.dim
    eqs, ineqs = hull_constraints(poly)
    lo = [math.ceil(min(v[i] for v in poly.vertices)) for i in range(n)]
    hi = [math.floor(max(v[i] for v in poly.vertices)) for i in range(n)]
    if any(a > b for a, b in zip(lo, hi)):
        return PointSet.empty(n)
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    keep = np.ones(grid.shape[0], dtype=bool)
    for a, b in eqs:
        keep &= grid @ np.array(a, dtype=np.int64) == b
    for a, b in ineqs:
        keep &= grid @ np.array(a, dtype=np.int64) <= b
    return PointSet.from_numerators(grid[keep], 1, n)


def lattice_points_in_polytope(basis: LatticeBasis, poly: VPolytope) -> PointSet:
    """Points of a full-rank lattice inside a V-polytope, via the polytope's coefficient preimage."""
    if basis.rank != basis.n or poly.dim != basis.n:
        raise ValueError("needs a full-rank lattice in the polytope's dimension")
    rows = [list(r) for r in zip(*basis.columns)]
    pre = VPolytope([solve(rows, list(v)) for v in poly.vertices])
    coeffs = integer_points_in_polytope(pre).numerators
    if len(coeffs) == 0:
        return PointSet.empty(basis.n)
    den = basis.denominator
    pts = _combine_int(np.asarray(coeffs), basis.integer_columns)
    return PointSet.from_numerators(pts, den, basis.n)
