"""Minkowski sumsets and doubling factors of finite point sets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .pointset import PointSet

# rows of pair sums materialized per block
_BLOCK = 1 << 21


@dataclass(frozen=True)
class DoublingReport:
    size_a: int
    size_aa: int
    doubling: Fraction

    def to_json(self) -> dict:
        return {
            "size_a": self.size_a,
            "size_aa": self.size_aa,
            "doubling": [self.doubling.numerator, self.doubling.denominator],
            "doubling_approx": float(self.doubling),
        }


def minkowski_sum(a: PointSet, b: PointSet) -> PointSet:
    """The deduplicated set {x + y : x in a, y in b}."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    n = a.dim
    if len(a) == 0 or len(b) == 0:
        return PointSet.empty(n)
    den = math.lcm(a.denominator, b.denominator)
    x, y = a.over(den), b.over(den)
    if len(x) < len(y):
        x, y = y, x
    fast = (x.dtype == np.int64 and y.dtype == np.int64
            and int(np.abs(x).max()) + int(np.abs(y).max()) < (1 << 61))
    if not fast:
        x, y = x.astype(object), y.astype(object)
    step = max(1, _BLOCK // len(x))
    parts = []
    for start in range(0, len(y), step):
        block = (x[None, :, :] + y[start:start + step, None, :]).reshape(-1, n)
        parts.append(PointSet.from_numerators(block, den, n).over(den))
    return PointSet.from_numerators(np.concatenate(parts), den, n)


def doubling_factor(a: PointSet) -> DoublingReport:
    if len(a) == 0:
        raise ValueError("empty set has no doubling factor")
    aa = minkowski_sum(a, a)
    return DoublingReport(len(a), len(aa), Fraction(len(aa), len(a)))
