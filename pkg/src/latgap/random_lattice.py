"""Seeded determinant-one random lattices, Siegel mean-value validation, and
sublattice-determinant statistics."""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from ._rational import Enclosure, as_fraction, inverse
from .enumeration import Ball, count_points_in_ball, points_in_ball, radius_for_volume
from .lattice import (
    LatticeBasis,
    Subspace,
    determinant,
    lll_reduce,
    sublattice_in_subspace,
)

DEFAULT_PRIME = 1000003  # smallest prime >= 10**6
_SCALE_BITS = 42


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin, valid for m < 3.3e24."""
    if m < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if m % q == 0:
            return m == q
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def next_prime(m: int) -> int:
    while not is_prime(m):
        m += 1
    return m


@dataclass(frozen=True)
class RandomLatticeConfig:
    n: int
    p: int = DEFAULT_PRIME
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.p < 101 or not is_prime(self.p):
            raise ValueError("p must be a prime >= 101")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def rng(self, trial: int | None = None) -> np.random.Generator:
        key = [self.seed] if trial is None else [self.seed, trial]
        return np.random.default_rng(np.random.SeedSequence(key))


@dataclass(frozen=True)
class GoldsteinMayerSample:
    """Integer lattice {z : z = t v mod p} together with its determinant-one rescaling."""

    basis: LatticeBasis
    integer_basis: LatticeBasis
    v: tuple[int, ...]
    scale: Fraction


def normalizing_scale(n: int, p: int) -> Fraction:
    """Dyadic approximation of p^(-(n-1)/n) with 42 significant bits."""
    with mpmath.workdps(50):
        s = mpmath.mpf(p) ** (-mpmath.mpf(n - 1) / n)
        k = _SCALE_BITS - int(mpmath.floor(mpmath.log(s, 2)))
        return Fraction(int(mpmath.nint(s * mpmath.mpf(2) ** k)), 1 << k)


def sample_goldstein_mayer(cfg: RandomLatticeConfig, trial: int | None = None) -> GoldsteinMayerSample:
    rng = cfg.rng(trial)
    n, p = cfg.n, cfg.p
    while True:
        v = [int(x) for x in rng.integers(0, p, size=n)]
        if any(v):
            break
    i = next(k for k, x in enumerate(v) if x)
    inv = pow(v[i], -1, p)
    w = [(x * inv) % p for x in v]  # w[i] == 1, same cyclic group mod p
    cols = [w]
    for j in range(n):
        if j != i:
            cols.append([p * int(k == j) for k in range(n)])
    integer_basis = LatticeBasis(cols)
    s = normalizing_scale(n, p)
    return GoldsteinMayerSample(integer_basis.scaled(s), integer_basis, tuple(v), s)


def sample_random_lattice(cfg: RandomLatticeConfig, trial: int | None = None) -> LatticeBasis:
    """Approximately Haar-random determinant-one lattice (deterministic in seed and trial)."""
    return sample_goldstein_mayer(cfg, trial).basis


@dataclass
class SiegelReport:
    n: int
    p: int
    seed: int
    volume: float
    trials: int
    mean: float
    stderr: float
    deviation: float
    z_score: float

    def to_json(self) -> dict:
        return asdict(self)


def siegel_mean_value_check(cfg: RandomLatticeConfig, region_volume: float, trials: int) -> SiegelReport:
    """Mean number of nonzero lattice points in an origin ball of the given volume."""
    if trials < 100:
        raise ValueError("need at least 100 trials")
    radius = radius_for_volume(cfg.n, region_volume)
    ball = Ball(radius)
    counts = np.empty(trials)
    for t in range(trials):
        counts[t] = count_points_in_ball(sample_random_lattice(cfg, t), ball) - 1
    mean = float(counts.mean())
    stderr = float(counts.std(ddof=1) / math.sqrt(trials))
    dev = mean - float(region_volume)
    z = dev / stderr if stderr > 0 else (0.0 if dev == 0 else math.inf)
    return SiegelReport(cfg.n, cfg.p, cfg.seed, float(region_volume), trials, mean, stderr, dev, z)


# ---------------------------------------------------------------------------
# sublattice determinants


@dataclass
class SubdetStatistic:
    dim_w: int
    min_normalized_det: float
    candidates_examined: int
    regime: str  # "exact" or "heuristic"
    det_sq: Fraction = field(repr=False)  # det(Λ∩W)^2 of the minimizing W, exact

    def to_json(self) -> dict:
        return {"dim_w": self.dim_w, "min_normalized_det": self.min_normalized_det,
                "candidates_examined": self.candidates_examined, "regime": self.regime,
                "det_sq": [self.det_sq.numerator, self.det_sq.denominator]}


def normalized_det(det_sq: Fraction, k: int) -> mpmath.mpf:
    """(det^2)^(1/(2k)) to 50 digits."""
    with mpmath.workdps(50):
        return (mpmath.mpf(det_sq.numerator) / det_sq.denominator) ** (mpmath.mpf(1) / (2 * k))


def shortest_vector(basis: LatticeBasis):
    """(squared norm, vector) of a shortest nonzero lattice vector, by exhaustive enumeration."""
    red = lll_reduce(basis)
    bound = min(sum(x * x for x in c) for c in red.columns)
    best = None
    for p in points_in_ball(basis, Ball(radius_sq=bound)):
        q = sum(x * x for x in p)
        if q and (best is None or q < best[0] or (q == best[0] and p > best[1])):
            best = (q, p)
    return best


def dual_basis(basis: LatticeBasis) -> LatticeBasis:
    """Basis B (B^T B)^{-1} of the dual lattice (within the span of the lattice)."""
    ginv = inverse([list(r) for r in basis.gram])
    d = basis.rank
    cols = []
    for j in range(d):
        cols.append(tuple(sum((basis.columns[i][k] * ginv[i][j] for i in range(d)), Fraction(0))
                          for k in range(basis.n)))
    return LatticeBasis(cols)


def _short_candidates(basis: LatticeBasis, effort: int) -> list[tuple]:
    """Up to ``effort`` shortest nonzero vectors (one per +- pair) plus the reduced basis."""
    red = lll_reduce(basis)
    cands = [tuple(c) for c in red.columns]
    if effort > 0:
        r2 = max(sum(x * x for x in c) for c in red.columns)
        pts = points_in_ball(basis, Ball(radius_sq=r2))
        vecs = sorted((sum(x * x for x in p), p) for p in pts if any(p))
        seen = set(cands) | {tuple(-x for x in c) for c in cands}
        for _, p in vecs:
            if len(cands) >= basis.rank + effort:
                break
            if p in seen:
                continue
            seen.add(p)
            seen.add(tuple(-x for x in p))
            cands.append(p)
    return cands


def _subset_search(basis: LatticeBasis, dim_w: int, effort: int, max_subsets: int = 5000):
    best = None
    examined = 0
    cands = _short_candidates(basis, effort)
    for subset in itertools.combinations(cands, dim_w):
        if examined >= max_subsets:
            break
        try:
            w = Subspace(subset)
        except ValueError:
            continue
        examined += 1
        dsq = sublattice_in_subspace(basis, w).gram_det
        if best is None or dsq < best:
            best = dsq
    return best, examined


def min_subdet_statistics(basis: LatticeBasis, dim_w: int, effort: int = 10) -> SubdetStatistic:
    """Minimum of det(Λ∩W)^(1/dim W) over lattice subspaces W of the given dimension.

    Candidate search over spans of short vectors gives an upper bound on the true
    minimum. In rank <= 3 the exact minimum is computed instead (shortest vector for
    dim 1, shortest dual vector for codim 1, the full determinant for dim = rank).
    """
    d = basis.rank
    if not 1 <= dim_w <= d:
        raise ValueError("dim_w must lie in 1..rank")
    if dim_w == d:
        return SubdetStatistic(dim_w, float(normalized_det(basis.gram_det, d)), 1, "exact",
                               basis.gram_det)
    if d <= 3:
        if dim_w == 1:
            q, _ = shortest_vector(basis)
            return SubdetStatistic(1, float(normalized_det(q, 1)), 1, "exact", q)
        # dim_w == d - 1: det(Λ∩W) = det(Λ) * |primitive dual vector orthogonal to W|
        q, _ = shortest_vector(dual_basis(basis))
        dsq = basis.gram_det * q
        return SubdetStatistic(dim_w, float(normalized_det(dsq, dim_w)), 1, "exact", dsq)
    best, examined = _subset_search(basis, dim_w, effort)
    return SubdetStatistic(dim_w, float(normalized_det(best, dim_w)), examined, "heuristic", best)


@dataclass
class MinkowskiRadius:
    """R = min over k of the minimal normalized k-dimensional sublattice determinant."""

    value: mpmath.mpf
    per_dim: list[SubdetStatistic]
    regime: str

    @property
    def argmin(self) -> SubdetStatistic:
        return min(self.per_dim, key=lambda s: normalized_det(s.det_sq, s.dim_w))


def sublattice_radius(basis: LatticeBasis, effort: int = 10) -> MinkowskiRadius:
    stats = [min_subdet_statistics(basis, k, effort) for k in range(1, basis.rank + 1)]
    with mpmath.workdps(50):
        value = min(normalized_det(s.det_sq, s.dim_w) for s in stats)
    regime = "exact" if all(s.regime == "exact" for s in stats) else "heuristic"
    return MinkowskiRadius(value, stats, regime)


def radius_at_least(r, stat: SubdetStatistic) -> bool:
    """Exact test r >= det(Λ∩W)^(1/k) for rational r."""
    r = as_fraction(r)
    return r >= 0 and r ** (2 * stat.dim_w) >= stat.det_sq


def reverse_minkowski_bound(n: int, r, big_r) -> mpmath.mpf:
    """(3/2) exp(500 (log n * r / R)^2), evaluated in 50-digit arithmetic."""
    with mpmath.workdps(50):
        r = mpmath.mpf(r.numerator) / r.denominator if isinstance(r, Fraction) else mpmath.mpf(r)
        return mpmath.mpf(3) / 2 * mpmath.exp(500 * (mpmath.log(n) * r / big_r) ** 2)


def determinant_is_one(basis: LatticeBasis, tol: float = 1e-9) -> bool:
    return determinant(basis).overlaps(Enclosure(Fraction(1), Fraction(1)), as_fraction(tol))


def c1_ratio(stat: SubdetStatistic, n: int) -> float:
    """Empirical min_normalized_det / n^((1 - dim/n)/2), the quantity a lower-bound constant would control."""
    with mpmath.workdps(30):
        ref = mpmath.mpf(n) ** ((1 - mpmath.mpf(stat.dim_w) / n) / 2)
        return float(normalized_det(stat.det_sq, stat.dim_w) / ref)
