"""Named, reproducible checks of the lattice-point, doubling and GAP-intersection statements.

Each check returns ExperimentReport objects whose ``passed`` flag is the exact
truth of ``lhs relation rhs``. Checks that depend on "n large enough" carry
``gating=False``: they are reported, never enforced.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from ._intmat import integerize_rows
from ._rational import as_fraction, lcm_denominator, nullspace, rank, root_upper_bound
from .enumeration import (
    Ball,
    VPolytope,
    ball_volume,
    count_points_in_ball,
    counterexample_body,
    integer_points_in_polytope,
    lattice_points_in_polytope,
    points_in_ball,
)
from .gap import (
    DEFAULT_CAP,
    Gap,
    GapTooLarge,
    gap_size_multiset,
    is_sorted,
    restrict_gap,
)
from .lattice import LatticeBasis, Subspace, determinant, lll_reduce, sublattice_in_subspace
from .pointset import PointSet
from .random_lattice import (
    RandomLatticeConfig,
    radius_at_least,
    reverse_minkowski_bound,
    sample_random_lattice,
    sublattice_radius,
)
from .reports import ExperimentReport, all_gating_pass, stopwatch
from .sumset import minkowski_sum

DET_TOLERANCE = Fraction(1, 10 ** 9)


class HypothesisError(ValueError):
    """An input violates the hypothesis of the statement being checked."""


def _det_at_most_one(basis: LatticeBasis) -> bool:
    # enclosure-based; sampled determinant-one lattices are accepted within DET_TOLERANCE
    return determinant(basis).lo <= 1 + DET_TOLERANCE


def minkbound_ball(n: int) -> Ball:
    """Origin ball whose squared radius is a rational upper bound on n^(5/4)."""
    return Ball(radius_sq=root_upper_bound(Fraction(n ** 5), 4, digits=30))


# ---------------------------------------------------------------------------
# Claim 1 and the non-symmetric counterexample


def check_claim1(basis: LatticeBasis, body: Ball | VPolytope, max_n: int = 4,
                 seed: int | None = None) -> list[ExperimentReport]:
    """|A+A| <= 5^n |A| for A = Λ ∩ body, plus the containment A+A ⊆ Λ ∩ 2·body."""
    n = basis.n
    if n > max_n:
        raise ValueError(f"dimension {n} above the configured maximum {max_n}")
    if isinstance(body, Ball):
        if not body.is_origin_centered():
            raise HypothesisError("Claim 1 requires a symmetric body")
        kind = {"ball_radius_sq": body.radius_sq}
    else:
        if not body.is_symmetric():
            raise HypothesisError("Claim 1 requires a symmetric body")
        kind = {"polytope_vertices": [list(v) for v in body.vertices]}
    with stopwatch() as sw:
        if isinstance(body, Ball):
            a = points_in_ball(basis, body)
            doubled = points_in_ball(basis, body.scaled(2))
        else:
            a = lattice_points_in_polytope(basis, body)
            doubled = lattice_points_in_polytope(basis, body.scaled(2))
        aa = minkowski_sum(a, a)
        outside = _count_outside(aa, doubled)
    inputs = {"n": n, "basis": basis.to_json(), **kind}
    return [
        ExperimentReport("claim1.doubling", inputs, len(aa), 5 ** n * len(a), "<=", seed, sw["ms"],
                         extra={"size_a": len(a), "size_aa": len(aa), "size_lattice_2b": len(doubled)}),
        ExperimentReport("claim1.containment", inputs, outside, 0, "=", seed, sw["ms"],
                         extra={"size_aa": len(aa), "size_lattice_2b": len(doubled)}),
    ]


def _count_outside(a: PointSet, b: PointSet) -> int:
    den = math.lcm(a.denominator, b.denominator)
    bk = {tuple(int(v) for v in r) for r in b.over(den).tolist()}
    return sum(1 for r in a.over(den).tolist() if tuple(int(v) for v in r) not in bk)


def check_nonsymmetric(N: int) -> list[ExperimentReport]:
    """|A| = 4N+2 and |A+A| >= (2N+1)^2 for the integer points of the non-symmetric body."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    with stopwatch() as sw:
        a = integer_points_in_polytope(counterexample_body(N))
        aa = minkowski_sum(a, a)
    inputs = {"N": N}
    return [
        ExperimentReport("nonsym.size", inputs, len(a), 4 * N + 2, "=", None, sw["ms"]),
        ExperimentReport("nonsym.sumset", inputs, len(aa), (2 * N + 1) ** 2, ">=", None, sw["ms"],
                         extra={"size_a": len(a), "size_aa": len(aa)}),
    ]


# ---------------------------------------------------------------------------
# point-counting lemmas


def check_blichfeldt(basis: LatticeBasis, r, seed: int | None = None) -> ExperimentReport:
    """|Λ ∩ B(r)| >= 2^-n vol(B(r)) for det(Λ) <= 1."""
    r = as_fraction(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    if not _det_at_most_one(basis):
        raise HypothesisError("lemma hypothesis det ≤ 1 violated")
    n = basis.n
    with stopwatch() as sw:
        count = count_points_in_ball(basis, Ball(r))
        rhs = ball_volume(n, r) / 2 ** n
    return ExperimentReport("blichfeldt", {"n": n, "r": r, "basis": basis.to_json()}, count, rhs,
                            ">=", seed, sw["ms"], extra={"det": float(determinant(basis))})


def corollary_bound(n: int, r, c1) -> mpmath.mpf:
    """(3/2) exp(500 (log n * r / (c1 n^(1/4)))^2)."""
    with mpmath.workdps(50):
        return reverse_minkowski_bound(n, r, mpmath.mpf(c1) * mpmath.mpf(n) ** mpmath.mpf(0.25))


def check_corollary_count(basis: LatticeBasis, w: Subspace, r, c1_est, dim_w: int | None = None,
                          seed: int | None = None) -> ExperimentReport:
    """|Λ ∩ W ∩ B(r)| against the reverse-Minkowski bound with an estimated constant c1."""
    n = basis.n
    r = as_fraction(r)
    want = n // 2 if dim_w is None else dim_w
    if w.dim != want:
        raise HypothesisError(f"subspace dimension {w.dim} != required {want}")
    with mpmath.workdps(50):
        threshold = mpmath.mpf(c1_est) * mpmath.mpf(n) ** mpmath.mpf(0.25)
        if mpmath.mpf(r.numerator) / r.denominator < threshold:
            raise HypothesisError("hypothesis r ≥ c1 n^(1/4) not met")
    with stopwatch() as sw:
        sub = sublattice_in_subspace(basis, w)
        count = count_points_in_ball(sub, Ball(r))
        rhs = corollary_bound(n, r, c1_est)
    return ExperimentReport("corollary", {"n": n, "r": r, "c1_est": c1_est, "dim_w": w.dim,
                                          "w": [list(v) for v in w.spanning]},
                            count, rhs, "<=", seed, sw["ms"])


def check_reverse_minkowski(basis: LatticeBasis, r, effort: int = 10,
                            seed: int | None = None) -> ExperimentReport:
    """|Λ ∩ B(r)| <= (3/2) exp(500 (log n r/R)^2) with R the minimal normalized sublattice determinant.

    R is exact in rank <= 3 and a heuristic upper bound otherwise; a failure with a
    heuristic R is reported as inconclusive (non-gating).
    """
    n = basis.n
    if n < 2:
        raise ValueError("n must be at least 2")
    r = as_fraction(r)
    with stopwatch() as sw:
        big = sublattice_radius(basis, effort)
        if not any(radius_at_least(r, s) for s in big.per_dim):
            raise HypothesisError("hypothesis r ≥ R not met")
        count = count_points_in_ball(basis, Ball(r))
        rhs = reverse_minkowski_bound(n, r, big.value)
    rep = ExperimentReport("reverse_minkowski", {"n": n, "r": r, "basis": basis.to_json()},
                           count, rhs, "<=", seed, sw["ms"],
                           extra={"R": big.value, "R_regime": big.regime,
                                  "R_dim": big.argmin.dim_w})
    with mpmath.workdps(50):
        rep.extra["log_slack"] = mpmath.log(rhs) - mpmath.log(count)
    if not rep.passed and big.regime == "heuristic":
        rep.gating = False
        rep.extra["status"] = "inconclusive: heuristic R is an upper bound on the true minimum"
    return rep


def check_minkbound(basis: LatticeBasis, n: int | None = None,
                    seed: int | None = None) -> ExperimentReport:
    """|Λ ∩ B(n^(5/8))| >= n^(n/8); only meaningful for large n, so never gating."""
    n = basis.n if n is None else n
    if n != basis.n:
        raise ValueError("n must equal the lattice dimension")
    if not _det_at_most_one(basis):
        raise HypothesisError("lemma hypothesis det ≤ 1 violated")
    ball = minkbound_ball(n)
    with stopwatch() as sw:
        count = count_points_in_ball(basis, ball)
        with mpmath.workdps(50):
            rhs = mpmath.mpf(n) ** (mpmath.mpf(n) / 8)
    return ExperimentReport("minkbound", {"n": n, "radius_sq": ball.radius_sq}, count, rhs, ">=",
                            seed, sw["ms"], gating=False,
                            extra={"note": "asymptotic statement (n large enough); not asserted"})


# ---------------------------------------------------------------------------
# the chain of inequalities behind the main theorem


def default_cut(n: int, d: int) -> int:
    return min(math.ceil(n / 2), d + 1)


def _gap_numerators(g: Gap, den: int):
    x0 = [int(x * den) for x in g.x0]
    gens = [[int(x * den) for x in v] for v in g.gens]
    return x0, gens


def _coefficient_grid(g: Gap) -> np.ndarray:
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(g.lo, g.hi)]
    if not axes:
        return np.zeros((1, 0), dtype=np.int64)
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, g.d)


def slice_subspace(basis: LatticeBasis, g: Gap, cut: int, target_dim: int | None = None) -> list:
    """Spanning vectors of W: first cut-1 generators, padded with reduced lattice vectors."""
    n = basis.n
    target = n // 2 if target_dim is None else target_dim
    span: list = []
    for v in g.gens[: cut - 1]:
        if rank([list(x) for x in span + [v]]) > len(span):
            span.append(tuple(v))
    for v in lll_reduce(basis).columns:
        if len(span) >= max(target, 0):
            break
        if rank([list(x) for x in span + [v]]) > len(span):
            span.append(tuple(v))
    return span


def check_proof_chain(basis: LatticeBasis, radius, g: Gap, cut: int | None = None,
                      points: PointSet | None = None, seed: int | None = None,
                      cap: int = DEFAULT_CAP, target_dim: int | None = None) -> list[ExperimentReport]:
    """Verify every link of |A∩G| <= sum_t |A∩G_t| <= 2^n prod_{i>=cut}(b_i-a_i+1) <= 2^n |G|^(1-(cut-1)/d).

    ``radius`` is a Ball (origin-centered) or a rational radius; A = Λ ∩ ball.
    """
    n = basis.n
    ball = radius if isinstance(radius, Ball) else Ball(radius)
    if not ball.is_origin_centered():
        raise ValueError("the chain uses an origin-centered ball")
    if not is_sorted(g):
        raise ValueError("GAP dimensions must be sorted in non-increasing order")
    cut = default_cut(n, g.d) if cut is None else cut
    if not 1 <= cut <= g.d + 1:
        raise ValueError(f"cut must lie in 1..{g.d + 1}")
    size_g = gap_size_multiset(g)
    if size_g > cap:
        raise GapTooLarge("GAP too large to enumerate")
    a = points_in_ball(basis, ball) if points is None else points
    inputs = {"n": n, "radius_sq": ball.radius_sq, "cut": cut, "gap": g.to_json()}

    with stopwatch() as sw:
        den = math.lcm(a.denominator, lcm_denominator(list(g.x0) + [x for v in g.gens for x in v]))
        a_rows = [tuple(int(v) for v in r) for r in a.over(den).tolist()]
        a_keys = set(a_rows)
        x0, gens = _gap_numerators(g, den)
        grid = _coefficient_grid(g)
        gm = np.array(gens, dtype=object).reshape(g.d, n)
        pts = (np.array(x0, dtype=object) + grid.astype(object) @ gm) if g.d else \
            np.array([x0], dtype=object)
        tails = [tuple(r) for r in grid[:, cut - 1:].tolist()]
        hit_all: set = set()
        per_t: dict = defaultdict(set)
        for t in (tuple(r) for r in _tail_grid(g, cut)):
            per_t[t]  # every slice present, even when it misses A
        for row, t in zip(pts.tolist(), tails):
            key = tuple(int(v) for v in row)
            if key in a_keys:
                hit_all.add(key)
                per_t[t].add(key)
        lhs_i = len(hit_all)
        sum_t = sum(len(s) for s in per_t.values())

        # link (ii): A∩G_t inside Λ ∩ (base_t + W) ∩ ball, counted via A = Λ ∩ ball
        w = slice_subspace(basis, g, cut, target_dim)
        for v in g.gens[: cut - 1]:
            if rank([list(x) for x in w + [v]]) != len(w):
                raise AssertionError("slice subspace misses a generator direction")
        ortho = integerize_rows(nullspace([list(x) for x in w], n)) if w else \
            [[int(i == j) for j in range(n)] for i in range(n)]
        om = np.array(ortho, dtype=object).reshape(len(ortho), n)
        flat_count = Counter(tuple(r) for r in (np.array(a_rows, dtype=object).reshape(-1, n) @ om.T).tolist()) \
            if a_rows else Counter()
        violations = 0
        slice_lhs_total = slice_rhs_total = 0
        max_slice = 0
        for t, hits in per_t.items():
            base = list(x0)
            for ti, gv in zip(t, gens[cut - 1:]):
                base = [bx + ti * gx for bx, gx in zip(base, gv)]
            key = tuple((np.array(base, dtype=object) @ om.T).tolist()) if len(ortho) else ()
            rhs_t = flat_count.get(key, 0) if len(ortho) else len(a_rows)
            slice_lhs_total += len(hits)
            slice_rhs_total += rhs_t
            max_slice = max(max_slice, len(hits))
            if len(hits) > rhs_t:
                violations += 1

        # link (iii)
        tail_sizes = [g.hi[i] - g.lo[i] + 1 for i in range(cut - 1, g.d)]
        prod_tail = math.prod(tail_sizes)
        multiset_sum = sum(gap_size_multiset(restrict_gap(g, cut, t)) for t in per_t) if cut <= g.d \
            else size_g

    ms = sw["ms"]
    reps = [
        ExperimentReport("proofchain.i_subadditivity", inputs, lhs_i, sum_t, "<=", seed, ms),
        ExperimentReport("proofchain.ii_slice_in_subspace", inputs, violations, 0, "=", seed, ms,
                         extra={"slices": len(per_t), "subspace_dim": len(w),
                                "sum_slice_hits": slice_lhs_total,
                                "sum_subspace_counts": slice_rhs_total}),
        ExperimentReport("proofchain.iii_multiset_sum", inputs, multiset_sum, size_g, "=", seed, ms),
        ExperimentReport("proofchain.iii_slice_count", inputs, len(per_t), prod_tail, "=", seed, ms),
    ]
    # link (iv): prod_{i>=cut} (b_i-a_i+1) <= |G|^(1-(cut-1)/d), raised to the d-th power
    d = g.d
    reps.append(ExperimentReport("proofchain.iv_tail_product", inputs, prod_tail ** d,
                                 size_g ** (d - cut + 1), "<=", seed, ms,
                                 extra={"tail_product": prod_tail, "size_g": size_g}))
    size_a = len(a)
    if d:
        with mpmath.workdps(50):
            expo = 1 - mpmath.mpf(cut - 1) / d
            lhs_v = mpmath.mpf(2) ** n * mpmath.mpf(size_g) ** expo
            rhs_v = mpmath.mpf(2) ** n * mpmath.mpf(max(size_a, 1)) ** expo
        reps.append(ExperimentReport("proofchain.iv_size_vs_A", inputs, lhs_v, rhs_v, "<=", seed, ms,
                                     gating=size_g <= size_a,
                                     extra={"size_g": size_g, "size_a": size_a}))
    reps.append(ExperimentReport("proofchain.slice_bound_2n", inputs, max_slice, 2 ** n, "<=", seed, ms,
                                 gating=False,
                                 extra={"note": "holds only for n large enough; not asserted"}))
    return reps


def _tail_grid(g: Gap, cut: int):
    axes = [range(g.lo[i], g.hi[i] + 1) for i in range(cut - 1, g.d)]
    return itertools.product(*axes)


# ---------------------------------------------------------------------------
# the main experiment


@dataclass
class MainSummary:
    n: int
    p: int
    seed: int
    c: float
    radius_sq: Fraction
    size_a: int
    gaps: int
    max_ratio: Fraction
    argmax_gap: Gap | None
    link_failures: dict
    reports_checked: int
    paper_bound: float
    all_links_pass: bool
    note: str = "asymptotic - not asserted at this n"
    dims: list = field(default_factory=list)
    generators: str = "lattice"

    def to_json(self) -> dict:
        return {
            "n": self.n, "p": self.p, "seed": self.seed, "c": self.c,
            "radius_sq": [self.radius_sq.numerator, self.radius_sq.denominator],
            "size_a": self.size_a, "gaps": self.gaps,
            "max_ratio": [self.max_ratio.numerator, self.max_ratio.denominator],
            "max_ratio_approx": float(self.max_ratio),
            "argmax_gap": None if self.argmax_gap is None else self.argmax_gap.to_json(),
            "link_failures": dict(sorted(self.link_failures.items())),
            "reports_checked": self.reports_checked,
            "reference_bound": self.paper_bound,
            "reference_bound_status": self.note,
            "reference_bound_asserted": False,
            "generators": self.generators,
            "all_links_pass": self.all_links_pass,
            "gap_dims": self.dims,
        }


def random_gap(rng: np.random.Generator, basis: LatticeBasis, a: PointSet, max_d: int,
               max_size: int, mean_side: float = 4.0, generators: str = "lattice",
               max_tries: int = 10000) -> Gap:
    """Random GAP based at a point of A, with |G| <= max_size.

    Generators have coefficients uniform in -3..3: with respect to the LLL-reduced
    basis of Λ ("lattice") or the standard basis ("integer"). Side lengths are
    geometric with the given mean; draws are rejected until the size bound holds.
    """
    if generators not in ("lattice", "integer"):
        raise ValueError("generators must be 'lattice' or 'integer'")
    n = basis.n
    frame = lll_reduce(basis) if generators == "lattice" else LatticeBasis.standard(n)
    pts = list(a)
    q = 1.0 / (1.0 + mean_side)  # P(side = k) = q (1-q)^k, mean (1-q)/q
    for _ in range(max_tries):
        d = int(rng.integers(0, max_d + 1))
        sides = [int(rng.geometric(q)) - 1 for _ in range(d)]
        if math.prod(s + 1 for s in sides) > max_size:
            continue
        lo = [-int(rng.integers(0, s + 1)) for s in sides]
        hi = [l + s for l, s in zip(lo, sides)]
        gens = [frame.combine([int(v) for v in rng.integers(-3, 4, size=n)]) for _ in range(d)]
        x0 = pts[int(rng.integers(0, len(pts)))] if pts else (Fraction(0),) * n
        return Gap(x0, gens, lo, hi)
    raise RuntimeError("could not draw a GAP satisfying the size constraint")


def run_main_experiment(cfg: RandomLatticeConfig, gap_family_size: int, c: float = 1.0,
                        cut: int | None = None, max_n: int = 6, generators: str = "lattice") -> tuple[MainSummary, list[ExperimentReport]]:
    """Sample Λ, take A = Λ ∩ B(n^(5/8)), and run the proof chain on random GAPs with d <= cn, |G| <= |A|."""
    from .gap import sort_dims_nonincreasing

    n = cfg.n
    if n > max_n:
        raise ValueError(f"n={n} above the desk-scale limit {max_n}")
    if c < 1:
        raise ValueError("c must be at least 1")
    basis = sample_random_lattice(cfg)
    ball = minkbound_ball(n)
    a = points_in_ball(basis, ball)
    max_d = int(math.floor(c * n))
    best = Fraction(0)
    best_gap = None
    failures: Counter = Counter()
    reports: list[ExperimentReport] = []
    dims = Counter()
    for i in range(gap_family_size):
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, 1, i]))
        g = sort_dims_nonincreasing(random_gap(rng, basis, a, max_d, len(a), generators=generators))
        dims[g.d] += 1
        chain = check_proof_chain(basis, ball, g, cut, points=a, seed=i)
        for rep in chain:
            if rep.gating and not rep.passed:
                failures[rep.name] += 1
        reports.extend(chain)
        hits = chain[0].lhs
        ratio = Fraction(hits, len(a))
        if ratio > best:
            best, best_gap = ratio, g
    with mpmath.workdps(30):
        bound = float(mpmath.mpf(n) ** (-mpmath.mpf(n) / (25 * c)))
    summary = MainSummary(n, cfg.p, cfg.seed, c, ball.radius_sq, len(a), gap_family_size, best, best_gap,
                          dict(failures), len(reports), bound, all_gating_pass(reports),
                          dims=[[k, dims[k]] for k in sorted(dims)], generators=generators)
    return summary, reports
