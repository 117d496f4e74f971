"""Command-line entry point: ``latgap <verb> ...``.

Every verb writes JSON to stdout (or ``--out``). Check verbs exit 0 iff all gating
reports pass; ``--csv`` switches check output to a one-row-per-report table.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import experiments as ex
from ._rational import as_fraction
from .enumeration import (
    Ball,
    VPolytope,
    count_points_in_ball,
    lattice_points_in_polytope,
    points_in_ball,
)
from .gap import Gap, gap_points, gap_size_multiset, restrictions, sort_dims_nonincreasing
from .lattice import LatticeBasis, Subspace
from .pointset import PointSet
from .random_lattice import DEFAULT_PRIME, RandomLatticeConfig, sample_random_lattice, siegel_mean_value_check
from .reports import ExperimentReport, all_gating_pass, dumps, sort_reports, to_csv
from .sumset import doubling_factor, minkowski_sum


def _load(path: str):
    return json.loads(Path(path).read_text())


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _lattice(args) -> LatticeBasis:
    if getattr(args, "lattice", None):
        return LatticeBasis.from_json(_load(args.lattice))
    if getattr(args, "n", None):
        return LatticeBasis.standard(args.n)
    raise SystemExit("error: give --lattice FILE or --n K")


def _ball(args) -> Ball:
    if args.r is not None:
        return Ball(as_fraction(args.r))
    if args.r2 is not None:
        return Ball(radius_sq=as_fraction(args.r2))
    raise SystemExit("error: give --r or --r2")


def _reports_out(args, reports: list[ExperimentReport]) -> int:
    reports = sort_reports(reports)
    text = to_csv(reports) if args.csv else dumps(reports, timing=args.timing)
    _emit(args, text)
    return 0 if all_gating_pass(reports) else 1


# --- verbs -----------------------------------------------------------------


def cmd_ball(args) -> int:
    basis, ball = _lattice(args), _ball(args)
    if args.count_only:
        _emit(args, json.dumps({"count": count_points_in_ball(basis, ball)}))
    else:
        _emit(args, points_in_ball(basis, ball).dumps())
    return 0


def cmd_polytope(args) -> int:
    poly = VPolytope(_load(args.vertices))
    basis = _lattice(args) if (args.lattice or args.n) else LatticeBasis.standard(poly.dim)
    pts = lattice_points_in_polytope(basis, poly)
    _emit(args, json.dumps({"count": len(pts)}) if args.count_only else pts.dumps())
    return 0


def cmd_sumset(args) -> int:
    a = PointSet.from_json(_load(args.inp))
    b = PointSet.from_json(_load(args.other)) if args.other else a
    _emit(args, minkowski_sum(a, b).dumps())
    return 0


def cmd_doubling(args) -> int:
    rep = doubling_factor(PointSet.from_json(_load(args.inp)))
    _emit(args, dumps(rep.to_json()))
    return 0


def cmd_gap(args) -> int:
    g = Gap.from_json(_load(args.inp))
    if args.action == "size":
        _emit(args, json.dumps({"multiset_size": gap_size_multiset(g), "distinct": len(gap_points(g))}))
    elif args.action == "points":
        _emit(args, gap_points(g).dumps())
    else:
        if args.cut is None:
            raise SystemExit("error: gap restrict needs --cut")
        out = [{"t": list(t), "gap": r.to_json()} for t, r in restrictions(g, args.cut)]
        _emit(args, json.dumps(out))
    return 0


def cmd_randlat(args) -> int:
    cfg = RandomLatticeConfig(args.n, args.p, args.seed)
    if args.action == "sample":
        _emit(args, sample_random_lattice(cfg, args.trial).dumps())
        return 0
    if args.vol is None:
        raise SystemExit("error: randlat siegel needs --vol")
    rep = siegel_mean_value_check(cfg, as_fraction(args.vol), args.trials)
    _emit(args, dumps(rep.to_json()))
    return 0


def cmd_claim1(args) -> int:
    basis = _lattice(args)
    body = VPolytope(_load(args.vertices)) if args.vertices else _ball(args)
    return _reports_out(args, ex.check_claim1(basis, body, max_n=args.max_n, seed=args.seed))


def cmd_nonsym(args) -> int:
    hi = args.N_max if args.N_max is not None else args.N
    reps = []
    for N in range(args.N, hi + 1):
        reps.extend(ex.check_nonsymmetric(N))
    return _reports_out(args, reps)


def cmd_blichfeldt(args) -> int:
    return _reports_out(args, [ex.check_blichfeldt(_lattice(args), as_fraction(args.r))])


def cmd_corollary(args) -> int:
    basis = _lattice(args)
    n = basis.n
    k = n // 2 if args.dim_w is None else args.dim_w
    if args.w:
        w = Subspace(_load(args.w))
    else:
        w = Subspace([[int(i == j) for i in range(n)] for j in range(k)])
    rep = ex.check_corollary_count(basis, w, as_fraction(args.r), args.c1, dim_w=k)
    return _reports_out(args, [rep])


def cmd_revmink(args) -> int:
    return _reports_out(args, [ex.check_reverse_minkowski(_lattice(args), as_fraction(args.r), args.effort)])


def cmd_minkbound(args) -> int:
    return _reports_out(args, [ex.check_minkbound(_lattice(args))])


def cmd_proofchain(args) -> int:
    basis = _lattice(args)
    g = Gap.from_json(_load(args.gap))
    if not ex.is_sorted(g):
        g = sort_dims_nonincreasing(g)
    return _reports_out(args, ex.check_proof_chain(basis, _ball(args), g, args.cut))


def cmd_main(args) -> int:
    cfg = RandomLatticeConfig(args.n, args.p, args.seed)
    summary, reports = ex.run_main_experiment(cfg, args.gaps, c=args.c, cut=args.cut, max_n=args.max_n,
                                              generators=args.generators)
    if args.csv:
        _emit(args, to_csv(sort_reports(reports)))
    else:
        body = {"summary": summary.to_json()}
        if args.reports:
            body["reports"] = [r.to_json(args.timing) for r in sort_reports(reports)]
        _emit(args, dumps(body))
    return 0 if summary.all_links_pass else 1


# --- parser ----------------------------------------------------------------


def _common(p: argparse.ArgumentParser, lattice: bool = False, ball: bool = False,
            checks: bool = False) -> None:
    p.add_argument("--out", help="write output to this file instead of stdout")
    if lattice:
        p.add_argument("--lattice", help="lattice basis JSON (as written by 'randlat sample')")
        p.add_argument("--n", type=int, help="use the integer lattice Z^n")
    if ball:
        p.add_argument("--r", help="ball radius (rational, e.g. 2 or 3/2)")
        p.add_argument("--r2", help="squared ball radius (rational)")
    if checks:
        p.add_argument("--csv", action="store_true", help="tabular report output")
        p.add_argument("--timing", action="store_true", help="include runtime_ms in JSON reports")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latgap", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("ball", help="lattice points in an origin ball")
    _common(p, lattice=True, ball=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("polytope", help="lattice points in the hull of a vertex list")
    _common(p, lattice=True)
    p.add_argument("--vertices", required=True, help="JSON list of vertices")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("sumset", help="A+A (or A+B with --other)")
    _common(p)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--other")
    p.set_defaults(func=cmd_sumset)

    p = sub.add_parser("doubling", help="|A+A|/|A|")
    _common(p)
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_doubling)

    p = sub.add_parser("gap", help="points, size or restrictions of a GAP")
    p.add_argument("action", choices=["points", "size", "restrict"])
    _common(p)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--cut", type=int)
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("randlat", help="sample a random lattice or validate the sampler")
    p.add_argument("action", choices=["sample", "siegel"])
    _common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trial", type=int)
    p.add_argument("--vol")
    p.add_argument("--trials", type=int, default=2000)
    p.set_defaults(func=cmd_randlat)

    p = sub.add_parser("claim1", help="doubling of a symmetric body's lattice points")
    _common(p, lattice=True, ball=True, checks=True)
    p.add_argument("--vertices", help="symmetric polytope vertices (instead of a ball)")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_claim1)

    p = sub.add_parser("nonsym", help="non-symmetric counterexample sizes")
    _common(p, checks=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--N-max", type=int, help="run every N up to this value")
    p.set_defaults(func=cmd_nonsym)

    p = sub.add_parser("blichfeldt", help="ball count against 2^-n vol")
    _common(p, lattice=True, checks=True)
    p.add_argument("--r", required=True)
    p.set_defaults(func=cmd_blichfeldt)

    p = sub.add_parser("corollary", help="count in a subspace against the reverse-Minkowski corollary")
    _common(p, lattice=True, checks=True)
    p.add_argument("--r", required=True)
    p.add_argument("--c1", type=float, default=1.0)
    p.add_argument("--w", help="JSON list of spanning vectors (default: first n/2 unit vectors)")
    p.add_argument("--dim-w", type=int)
    p.set_defaults(func=cmd_corollary)

    p = sub.add_parser("revmink", help="ball count against the reverse Minkowski bound")
    _common(p, lattice=True, checks=True)
    p.add_argument("--r", required=True)
    p.add_argument("--effort", type=int, default=10)
    p.set_defaults(func=cmd_revmink)

    p = sub.add_parser("minkbound", help="|Λ ∩ B(n^(5/8))| against n^(n/8) (not gating)")
    _common(p, lattice=True, checks=True)
    p.set_defaults(func=cmd_minkbound)

    p = sub.add_parser("proofchain", help="every link of the GAP-intersection chain for one GAP")
    _common(p, lattice=True, ball=True, checks=True)
    p.add_argument("--gap", required=True, help="GAP JSON")
    p.add_argument("--cut", type=int)
    p.set_defaults(func=cmd_proofchain)

    p = sub.add_parser("main", help="random lattice, random GAP family, proof chain on each")
    _common(p, checks=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gaps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=int, default=DEFAULT_PRIME)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--cut", type=int)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--generators", choices=["lattice", "integer"], default="lattice")
    p.add_argument("--reports", action="store_true", help="include every per-GAP report")
    p.set_defaults(func=cmd_main)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
