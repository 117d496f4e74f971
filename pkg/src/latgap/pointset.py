"""Deduplicated finite sets of exact rational points.

A PointSet stores its elements over a single common denominator: an integer
numerator matrix (one row per point, rows unique and lexicographically sorted)
plus the denominator. Rows are kept in int64 while magnitudes allow, and as
Python integers otherwise.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._rational import as_vector, lcm_denominator

Point = tuple[Fraction, ...]

_INT64_SAFE = 1 << 61


def _fits_int64(arr: np.ndarray) -> bool:
    if arr.size == 0:
        return True
    if arr.dtype == np.int64:
        return bool(np.abs(arr).max() < _INT64_SAFE)
    return max(abs(int(v)) for v in arr.flat) < _INT64_SAFE


def _pack_unique(arr: np.ndarray) -> np.ndarray:
    """Unique rows of an int64 matrix in lexicographic order."""
    m, n = arr.shape
    if m == 0 or n == 0:
        return arr[:1] if m and n == 0 else arr
    mins = arr.min(axis=0)
    spans = arr.max(axis=0) - mins + 1
    total = 1
    for s in spans.tolist():
        total *= int(s)
    if total >= (1 << 62):
        return np.unique(arr, axis=0)
    shifted = arr - mins
    key = np.zeros(m, dtype=np.int64)
    for j in range(n):
        key = key * spans[j] + shifted[:, j]
    key = np.unique(key)
    out = np.empty((key.size, n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        out[:, j] = key % spans[j]
        key = key // spans[j]
    return out + mins


def _canonical_rows(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == np.int64:
        return _pack_unique(arr)
    rows = sorted(set(map(tuple, arr.tolist())))
    n = arr.shape[1]
    out = np.empty((len(rows), n), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out


class PointSet:
    """Immutable deduplicated set of points of one ambient dimension."""

    __slots__ = ("_num", "_den", "_dim", "_keys")

    def __init__(self, points: Iterable[Sequence] = (), dim: int | None = None):
        pts = [as_vector(p) for p in points]
        if dim is None:
            if not pts:
                raise ValueError("dimension required for an empty PointSet")
            dim = len(pts[0])
        for p in pts:
            if len(p) != dim:
                raise ValueError(f"point of dimension {len(p)} in a set of dimension {dim}")
        den = lcm_denominator(x for p in pts for x in p)
        rows = [[int(x * den) for x in p] for p in pts]
        arr = np.array(rows, dtype=object).reshape(len(rows), dim)
        self._init(arr, den, dim)

    def _init(self, arr: np.ndarray, den: int, dim: int) -> None:
        arr = arr.reshape(arr.shape[0], dim)
        # reduce the common denominator
        if arr.size:
            if arr.dtype == np.int64:
                g = math.gcd(den, int(np.gcd.reduce(arr.ravel())))
            else:
                g = den
                for v in arr.ravel().tolist():
                    g = math.gcd(g, int(v))
                    if g == 1:
                        break
            if g > 1:
                arr = arr // g
                den //= g
        else:
            den = 1
        if _fits_int64(arr):
            arr = arr.astype(np.int64)
        else:
            arr = arr.astype(object)
        self._num = _canonical_rows(arr)
        self._num.setflags(write=False)
        self._den = den
        self._dim = dim
        self._keys = None

    @classmethod
    def from_numerators(cls, num: np.ndarray, den: int, dim: int) -> "PointSet":
        """Fast constructor from an integer matrix of numerators over ``den`` (duplicates allowed)."""
        self = cls.__new__(cls)
        num = np.asarray(num)
        if num.dtype != np.int64 and num.dtype != object:
            num = num.astype(np.int64)
        self._init(num, int(den), dim)
        return self

    @classmethod
    def empty(cls, dim: int) -> "PointSet":
        return cls((), dim=dim)

    # --- basic protocol -------------------------------------------------
    @property
    def dim(self) -> int:
        return self._dim

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def numerators(self) -> np.ndarray:
        return self._num

    def __len__(self) -> int:
        return self._num.shape[0]

    def __iter__(self) -> Iterator[Point]:
        den = self._den
        for row in self._num.tolist():
            yield tuple(Fraction(int(v), den) for v in row)

    def keys(self) -> frozenset:
        """Numerator tuples over ``denominator``; hashable exact encodings."""
        if self._keys is None:
            self._keys = frozenset(tuple(int(v) for v in r) for r in self._num.tolist())
        return self._keys

    def __contains__(self, p) -> bool:
        p = as_vector(p)
        if len(p) != self._dim:
            return False
        scaled = [x * self._den for x in p]
        if any(x.denominator != 1 for x in scaled):
            return False
        return tuple(int(x) for x in scaled) in self.keys()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return (self._dim == other._dim and self._den == other._den
                and self._num.shape == other._num.shape
                and bool(np.array_equal(self._num, other._num)))

    def __hash__(self) -> int:
        return hash((self._dim, self._den, self.keys()))

    def __repr__(self) -> str:
        return f"PointSet(dim={self._dim}, size={len(self)})"

    # --- set algebra ----------------------------------------------------
    def over(self, den: int) -> np.ndarray:
        """Numerator matrix rescaled to a multiple ``den`` of the current denominator."""
        if den % self._den:
            raise ValueError("target denominator must be a multiple")
        f = den // self._den
        arr = self._num
        if f == 1:
            return arr
        if arr.dtype == np.int64 and (arr.size == 0 or int(np.abs(arr).max()) * f < _INT64_SAFE):
            return arr * f
        return arr.astype(object) * f

    def _check(self, other: "PointSet") -> None:
        if self._dim != other._dim:
            raise ValueError(f"dimension mismatch: {self._dim} vs {other._dim}")

    def union(self, other: "PointSet") -> "PointSet":
        self._check(other)
        den = math.lcm(self._den, other._den)
        a, b = self.over(den), other.over(den)
        if a.dtype != b.dtype:
            a, b = a.astype(object), b.astype(object)
        return PointSet.from_numerators(np.concatenate([a, b]), den, self._dim)

    __or__ = union

    def intersection(self, other: "PointSet") -> "PointSet":
        self._check(other)
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        return PointSet([p for p in small if p in big], dim=self._dim)

    __and__ = intersection

    def issubset(self, other: "PointSet") -> bool:
        self._check(other)
        if len(self) > len(other):
            return False
        den = math.lcm(self._den, other._den)
        if den != other._den:
            return False  # some coordinate of self has a denominator other never uses
        mine = {tuple(int(v) for v in r) for r in self.over(den).tolist()}
        return mine <= other.keys()

    __le__ = issubset

    def __neg__(self) -> "PointSet":
        return PointSet.from_numerators(-self._num, self._den, self._dim)

    def translate(self, t: Sequence) -> "PointSet":
        t = as_vector(t)
        if len(t) != self._dim:
            raise ValueError("dimension mismatch")
        den = math.lcm(self._den, lcm_denominator(t))
        shift = np.array([int(x * den) for x in t], dtype=object)
        arr = self.over(den).astype(object) + shift
        return PointSet.from_numerators(arr, den, self._dim)

    def is_symmetric(self) -> bool:
        return (-self) == self

    # --- serialization --------------------------------------------------
    def to_json(self) -> list:
        den = self._den
        out = []
        for row in self._num.tolist():
            vec = []
            for v in row:
                f = Fraction(int(v), den)
                vec.append([f.numerator, f.denominator])
            out.append(vec)
        return out

    @classmethod
    def from_json(cls, obj, dim: int | None = None) -> "PointSet":
        if isinstance(obj, dict):
            dim = obj.get("dim", dim)
            obj = obj["points"]
        return cls(obj, dim=dim)

    def dumps(self) -> str:
        return json.dumps(self.to_json())
