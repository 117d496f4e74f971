"""Generalized arithmetic progressions x0 + sum_i alpha_i x_i with lo_i <= alpha_i <= hi_i."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from ._rational import lcm_denominator, rank, rref
from .lattice import Point, point
from .pointset import PointSet

DEFAULT_CAP = 10 ** 7


class GapTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Gap:
    x0: Point
    gens: tuple[Point, ...]
    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __init__(self, x0: Sequence, gens: Sequence[Sequence] = (), lo: Sequence[int] = (),
                 hi: Sequence[int] = ()):
        x0 = point(x0)
        gens = tuple(point(g) for g in gens)
        lo, hi = tuple(int(v) for v in lo), tuple(int(v) for v in hi)
        if not len(gens) == len(lo) == len(hi):
            raise ValueError("gens, lo and hi must have the same length")
        for g in gens:
            if len(g) != len(x0):
                raise ValueError("generator dimension differs from base point dimension")
        for a, b in zip(lo, hi):
            if a > b:
                raise ValueError(f"empty range: lo {a} > hi {b}")
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def n(self) -> int:
        return len(self.x0)

    @property
    def d(self) -> int:
        return len(self.gens)

    @property
    def side_lengths(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.lo, self.hi))

    def to_json(self) -> dict:
        def vec(p):
            return [[x.numerator, x.denominator] for x in p]

        return {"x0": vec(self.x0), "gens": [vec(g) for g in self.gens],
                "lo": list(self.lo), "hi": list(self.hi)}

    @classmethod
    def from_json(cls, obj: dict) -> "Gap":
        return cls(obj["x0"], obj.get("gens", []), obj.get("lo", []), obj.get("hi", []))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def gap_size_multiset(g: Gap) -> int:
    """prod_i (hi_i - lo_i + 1); 1 for the zero-dimensional progression."""
    return math.prod(b - a + 1 for a, b in zip(g.lo, g.hi))


def _numerators(g: Gap, den: int | None = None):
    """Integer numerators of x0 and the generators over a common denominator."""
    if den is None:
        den = lcm_denominator(list(g.x0) + [x for v in g.gens for x in v])
    x0 = [int(x * den) for x in g.x0]
    gens = [[int(x * den) for x in v] for v in g.gens]
    return den, x0, gens


def gap_points(g: Gap, cap: int = DEFAULT_CAP) -> PointSet:
    """Distinct points of the progression."""
    if gap_size_multiset(g) > cap:
        raise GapTooLarge("GAP too large to enumerate")
    den, x0, gens = _numerators(g)
    big = max([abs(v) for v in x0] + [abs(v) * max(abs(a), abs(b)) for gv, a, b in zip(gens, g.lo, g.hi)
                                       for v in gv] + [0])
    dtype = np.int64 if big * (g.d + 1) < (1 << 61) else object
    pts = np.array([x0], dtype=dtype)
    for gv, a, b in zip(gens, g.lo, g.hi):
        steps = np.arange(a, b + 1, dtype=np.int64).astype(dtype)[:, None] * np.array(gv, dtype=dtype)[None, :]
        pts = (pts[:, None, :] + steps[None, :, :]).reshape(-1, g.n)
        pts = PointSet.from_numerators(pts, den, g.n).over(den)
    return PointSet.from_numerators(pts, den, g.n)


def generators_independent(g: Gap) -> bool:
    return g.d == 0 or rank([list(v) for v in g.gens]) == g.d


def gap_membership_mask(a: PointSet, g: Gap) -> np.ndarray:
    """Boolean mask over ``a`` (in its canonical order) of points lying in g.

    Independent generators: the coefficient vector is recovered exactly and checked
    for integrality and bounds. Dependent generators: enumeration of g.
    """
    if a.dim != g.n:
        raise ValueError("dimension mismatch")
    m = len(a)
    if m == 0:
        return np.zeros(0, dtype=bool)
    if not generators_independent(g):
        pts = gap_points(g)
        return np.array([p in pts for p in a], dtype=bool)
    den = math.lcm(a.denominator, lcm_denominator(list(g.x0) + [x for v in g.gens for x in v]))
    _, x0, gens = _numerators(g, den)
    diff = a.over(den).astype(object) - np.array(x0, dtype=object)  # m x n
    if g.d == 0:
        return np.array([all(v == 0 for v in row) for row in diff.tolist()], dtype=bool)
    # pick d independent coordinates and invert that d x d block by adjugate
    gm = [[gens[j][i] for j in range(g.d)] for i in range(g.n)]  # n x d
    _, piv = rref([list(r) for r in zip(*gm)])
    rows = piv  # pivot columns of G^T are independent rows of G
    block = [[Fraction(gm[r][j]) for j in range(g.d)] for r in rows]
    from ._rational import det, inverse

    dt = det(block)
    inv = inverse(block)
    adj = [[int(x * dt) for x in row] for row in inv]
    sign = 1 if dt > 0 else -1
    dti = int(dt) * sign
    adj = np.array(adj, dtype=object) * sign
    alpha_scaled = diff[:, rows] @ adj.T  # m x d, equals alpha * |det|
    mask = np.ones(m, dtype=bool)
    for j in range(g.d):
        col = alpha_scaled[:, j]
        ok = np.array([int(v) % dti == 0 for v in col], dtype=bool)
        mask &= ok
    alpha = np.array([[int(v) // dti for v in row] for row in alpha_scaled.tolist()], dtype=object).reshape(m, g.d)
    lo = np.array(g.lo, dtype=object)
    hi = np.array(g.hi, dtype=object)
    mask &= ((alpha >= lo) & (alpha <= hi)).all(axis=1).astype(bool)
    recon = alpha @ np.array(gens, dtype=object)
    mask &= (recon == diff).all(axis=1).astype(bool)
    return mask


def intersect_count(a: PointSet, g: Gap) -> int:
    """Number of distinct points of ``a`` lying in the progression."""
    return int(gap_membership_mask(a, g).sum())


def sort_dims_nonincreasing(g: Gap) -> Gap:
    """Reorder dimensions by non-increasing side length (stable on ties)."""
    order = sorted(range(g.d), key=lambda i: -(g.hi[i] - g.lo[i]))
    return Gap(g.x0, [g.gens[i] for i in order], [g.lo[i] for i in order], [g.hi[i] for i in order])


def is_sorted(g: Gap) -> bool:
    s = g.side_lengths
    return all(s[i] >= s[i + 1] for i in range(len(s) - 1))


def restrict_gap(g: Gap, fixed_from: int, t: Sequence[int]) -> Gap:
    """Fix dimensions fixed_from..d (1-indexed) at the values t, keeping the first fixed_from-1.

    A cut beyond d fixes nothing and returns g itself.
    """
    k = fixed_from
    if k < 1:
        raise ValueError("cut index must be at least 1")
    if k > g.d:
        if len(t):
            raise ValueError("nothing to fix beyond the last dimension")
        return g
    t = [int(v) for v in t]
    if len(t) != g.d - k + 1:
        raise ValueError(f"expected {g.d - k + 1} fixed values, got {len(t)}")
    for i, v in zip(range(k - 1, g.d), t):
        if not g.lo[i] <= v <= g.hi[i]:
            raise ValueError(f"fixed value {v} outside [{g.lo[i]}, {g.hi[i]}]")
    base = list(g.x0)
    for i, v in zip(range(k - 1, g.d), t):
        base = [x + v * y for x, y in zip(base, g.gens[i])]
    return Gap(base, g.gens[: k - 1], g.lo[: k - 1], g.hi[: k - 1])


def restriction_indices(g: Gap, cut: int) -> Iterator[tuple[int, ...]]:
    """All fixed-value tuples t for the dimensions cut..d."""
    ranges = [range(g.lo[i], g.hi[i] + 1) for i in range(cut - 1, g.d)]
    return itertools.product(*ranges)


def restrictions(g: Gap, cut: int) -> Iterator[tuple[tuple[int, ...], Gap]]:
    for t in restriction_indices(g, cut):
        yield t, restrict_gap(g, cut, t)


@dataclass(frozen=True)
class GapLatticeImage:
    """phi(Z^d ∩ box) + shift, with box the product of [-h_i, h_i]."""

    lattice_dim: int
    box_halfwidths: tuple[Fraction, ...]
    phi_columns: tuple[Point, ...]
    shift: Point

    def points(self, cap: int = DEFAULT_CAP) -> PointSet:
        """Enumerate phi(Z^d ∩ box) + shift directly from the box description."""
        ranges = [range(math.ceil(-h), math.floor(h) + 1) for h in self.box_halfwidths]
        if math.prod(len(r) for r in ranges) > cap:
            raise GapTooLarge("GAP too large to enumerate")
        n = len(self.shift)
        out = []
        for z in itertools.product(*ranges):
            p = list(self.shift)
            for zi, col in zip(z, self.phi_columns):
                p = [x + zi * y for x, y in zip(p, col)]
            out.append(p)
        return PointSet(out, dim=n)

    def to_json(self) -> dict:
        return {
            "lattice_dim": self.lattice_dim,
            "box_halfwidths": [[h.numerator, h.denominator] for h in self.box_halfwidths],
            "phi_columns": [[[x.numerator, x.denominator] for x in c] for c in self.phi_columns],
            "shift": [[x.numerator, x.denominator] for x in self.shift],
        }


def gap_as_lattice_image(g: Gap) -> GapLatticeImage:
    """Rewrite g as phi(Z^d ∩ B) + x for a symmetric box B (all side lengths must be even)."""
    if any((b - a) % 2 for a, b in zip(g.lo, g.hi)):
        raise ValueError("conversion requires even side lengths")
    shift = list(g.x0)
    for a, b, v in zip(g.lo, g.hi, g.gens):
        shift = [x + Fraction(a + b, 2) * y for x, y in zip(shift, v)]
    return GapLatticeImage(
        lattice_dim=g.d,
        box_halfwidths=tuple(Fraction(b - a, 2) for a, b in zip(g.lo, g.hi)),
        phi_columns=g.gens,
        shift=tuple(shift),
    )
