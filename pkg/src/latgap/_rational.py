"""Exact rational helpers: coercion, small dense linear algebra, certified square roots."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import mpmath

Matrix = list[list[Fraction]]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions, decimal strings and ``[num, den]`` pairs to a Fraction.

    Floats are accepted and converted exactly (their binary value).
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    if isinstance(x, (float, str)):
        return Fraction(x)
    # numpy integer scalars
    return Fraction(int(x))


def as_vector(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in xs)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def lcm_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, v.denominator)
    return d


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [dot(row, v) for row in m]


def rref(m: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q. Returns (R, pivot_columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Matrix:
    """Basis (list of vectors) of the right null space of ``m`` over Q."""
    if not m:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    r, pivots = rref(m)
    n = len(m[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve(m: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Exact solution of ``m x = b`` when consistent (any solution if underdetermined), else None."""
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    n = len(m[0])
    r, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = r[i][n]
    return x


def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        result *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def inverse(m: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r]


def ldl(gram: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[Fraction]]:
    """Exact ``G = L diag(D) L^T`` with unit lower-triangular L (Gram-Schmidt data).

    ``L[i][j]`` for j < i is the Gram-Schmidt coefficient mu_ij and ``D[i]`` is ||b*_i||^2.
    """
    n = len(gram)
    mu = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d: list[Fraction] = []
    for i in range(n):
        for j in range(i):
            s = gram[i][j] - sum((mu[j][k] * mu[i][k] * d[k] for k in range(j)), Fraction(0))
            mu[i][j] = s / d[j]
        di = gram[i][i] - sum((mu[i][k] ** 2 * d[k] for k in range(i)), Fraction(0))
        if di <= 0:
            raise ValueError("degenerate basis")
        d.append(di)
    return mu, d


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        raise ValueError("negative argument")
    a, b = q.numerator, q.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` with rational endpoints known to contain a real value."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def contains(self, x) -> bool:
        x = as_fraction(x)
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Enclosure", slack=0) -> bool:
        slack = as_fraction(slack)
        return self.lo - slack <= other.hi and other.lo - slack <= self.hi

    def to_json(self) -> dict:
        return {"lo": [self.lo.numerator, self.lo.denominator],
                "hi": [self.hi.numerator, self.hi.denominator],
                "approx": float(self)}


def to_mpf(x):
    """mpmath value of an int, Fraction, float, or rational string at the current precision."""
    if isinstance(x, (Fraction, str)):
        x = as_fraction(x)
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def sqrt_enclosure(q: Fraction, bits: int = 64) -> Enclosure:
    """Certified enclosure of sqrt(q); exact (zero width) when q is a rational square."""
    q = as_fraction(q)
    e = exact_sqrt(q)
    if e is not None:
        return Enclosure(e, e)
    scale = 1 << bits
    # floor(sqrt(q) * 2^bits) = isqrt(floor(q * 4^bits))
    lo_num = math.isqrt((q.numerator * scale * scale) // q.denominator)
    return Enclosure(Fraction(lo_num, scale), Fraction(lo_num + 1, scale))


def root_upper_bound(q: Fraction, k: int, digits: int = 30) -> Fraction:
    """Rational upper bound on q**(1/k) with relative error below 10**-(digits-2) for q >= 1."""
    q = as_fraction(q)
    scale = 10 ** digits
    target = (q.numerator * scale ** k) // q.denominator
    lo = integer_root(target, k)
    if lo ** k * q.denominator == q.numerator * scale ** k:
        return Fraction(lo, scale)
    return Fraction(lo + 1, scale)


def integer_root(m: int, k: int) -> int:
    """floor(m ** (1/k)) for m >= 0."""
    if m < 2:
        return m
    x = 1 << ((m.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + m // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > m:
        x -= 1
    while (x + 1) ** k <= m:
        x += 1
    return x
