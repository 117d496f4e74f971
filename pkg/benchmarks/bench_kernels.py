"""Compare the compiled and pure-Python enumeration kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends are imported directly, so one run times both; results must agree.
"""

import argparse
import time

import numpy as np

from latgap import _pykernels
from latgap.enumeration import COUNT_MARGIN, Ball, _prepared, radius_for_volume
from latgap.lattice import LatticeBasis
from latgap.random_lattice import RandomLatticeConfig, sample_random_lattice

try:
    from latgap import _kernels
except ImportError:
    _kernels = None

CASES = [
    ("Z^3, r=8", LatticeBasis.standard(3), Ball(8)),
    ("Z^4, r=5", LatticeBasis.standard(4), Ball(5)),
    ("Z^6, r=3", LatticeBasis.standard(6), Ball(3)),
    ("Z^8, r=3", LatticeBasis.standard(8), Ball(3)),
    ("random n=4, vol 2000", sample_random_lattice(RandomLatticeConfig(4, seed=1)),
     Ball(radius_for_volume(4, 2000))),
    ("random n=6, vol 2000", sample_random_lattice(RandomLatticeConfig(6, seed=1)),
     Ball(radius_for_volume(6, 2000))),
]


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        raise SystemExit("compiled extension not built; run pip install -e . --no-build-isolation")
    print(f"{'case':24} {'mode':6} {'points':>9} {'cython ms':>10} {'python ms':>10} {'speedup':>8}")
    for label, basis, ball in CASES:
        _, _, _, mu, bn = _prepared(basis)
        c = np.zeros(len(bn))
        bound = float(ball.radius_sq)
        for mode in ("enum", "count"):
            if mode == "enum":
                run = lambda k: k.enumerate_ball(mu, bn, c, bound)  # noqa: E731
                size = lambda r: r.shape[0]  # noqa: E731
            else:
                run = lambda k: k.count_ball(mu, bn, c, bound, COUNT_MARGIN)  # noqa: E731
                size = lambda r: r[0] + len(r[1])  # noqa: E731
            tc, rc = best_of(lambda: run(_kernels), args.repeat)
            tp, rp = best_of(lambda: run(_pykernels), max(1, args.repeat // 3))
            if size(rc) != size(rp):
                raise SystemExit(f"backends disagree on {label} ({mode})")
            print(f"{label:24} {mode:6} {size(rc):>9} {tc * 1e3:>10.2f} {tp * 1e3:>10.1f} {tp / tc:>7.0f}x")


if __name__ == "__main__":
    main()
