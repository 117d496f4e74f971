"""Integer matrix kernels: column Hermite normal form with transform, integer kernels,
saturation and integer linear systems.

Matrices are lists of rows of Python ints.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ._rational import lcm_denominator, nullspace

IntMatrix = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _col_op(m: IntMatrix, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
    for row in m:
        x, y = row[i], row[j]
        row[i] = a * x + b * y
        row[j] = c * x + d * y


def column_hnf(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, list[int]]:
    """Column-style Hermite normal form.

    Returns ``(H, U, pivot_rows)`` with ``m @ U == H``, U unimodular, the first
    ``len(pivot_rows)`` columns of H in echelon form (column j has its leading
    positive entry at row ``pivot_rows[j]``, entries left of it in that row reduced
    into ``[0, pivot)``) and all remaining columns zero.
    """
    h = [list(map(int, row)) for row in m]
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = identity(cols)
    pivots: list[int] = []
    c = 0
    for i in range(rows):
        if c == cols:
            break
        for j in range(c + 1, cols):
            if h[i][j] == 0:
                continue
            a, b = h[i][c], h[i][j]
            g, s, t = xgcd(a, b)
            # unimodular 2x2: [[s, -b/g], [t, a/g]]
            _col_op(h, c, j, s, t, -b // g, a // g)
            _col_op(u, c, j, s, t, -b // g, a // g)
        if h[i][c] == 0:
            continue
        if h[i][c] < 0:
            for row in h:
                row[c] = -row[c]
            for row in u:
                row[c] = -row[c]
        p = h[i][c]
        for j in range(c):
            q = h[i][j] // p
            if q:
                for row in h:
                    row[j] -= q * row[c]
                for row in u:
                    row[j] -= q * row[c]
        pivots.append(i)
        c += 1
    return h, u, pivots


def integer_kernel(m: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Z-basis (as a list of vectors) of {x in Z^ncols : m x = 0}."""
    if not m:
        return identity(ncols)
    _, u, pivots = column_hnf(m)
    r = len(pivots)
    return [[u[i][j] for i in range(ncols)] for j in range(r, ncols)]


def solve_integer(m: Sequence[Sequence[int]], b: Sequence[int], ncols: int) -> list[int] | None:
    """One integer solution of ``m x = b``, or None if there is none."""
    if not m:
        return [0] * ncols
    h, u, pivots = column_hnf(m)
    y = [0] * ncols
    for j, p in enumerate(pivots):
        s = b[p] - sum(h[p][k] * y[k] for k in range(j))
        q, rem = divmod(s, h[p][j])
        if rem:
            return None
        y[j] = q
    for i in range(len(m)):
        if sum(h[i][k] * y[k] for k in range(ncols)) != b[i]:
            return None
    return [sum(u[i][k] * y[k] for k in range(ncols)) for i in range(ncols)]


def integerize_rows(rows: Sequence[Sequence[Fraction]]) -> IntMatrix:
    """Scale each rational row by its denominator lcm, giving an integer row with the same span."""
    out = []
    for row in rows:
        d = lcm_denominator(row)
        out.append([int(x * d) for x in row])
    return out


def saturate(vectors: Sequence[Sequence[int]], dim: int) -> IntMatrix:
    """Z-basis of Z^dim intersected with the rational span of ``vectors``."""
    ortho = nullspace([[Fraction(x) for x in v] for v in vectors], dim) if vectors else None
    if ortho is None:
        return []
    if not ortho:
        return identity(dim)
    return integer_kernel(integerize_rows(ortho), dim)


def hnf_rows(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Canonical (row Hermite normal form) basis of the lattice generated by ``vectors``."""
    if not vectors:
        return []
    # column HNF of the transpose, transposed back
    t = [list(col) for col in zip(*vectors)]
    h, _, pivots = column_hnf(t)
    r = len(pivots)
    return [[h[i][j] for i in range(len(h))] for j in range(r)]
