"""Pure-Python Fincke-Pohst enumeration; same contract as the compiled ``_kernels``."""

from __future__ import annotations

import math

import numpy as np


def _pad(s: float, w: float) -> float:
    return 1e-9 * (1.0 + abs(s) + w)


def _walk(mu, bnorm, center, bound):
    """Yield (coefficient tuple, float qf) for every vector passing the padded test."""
    d = len(bnorm)
    mu = [list(map(float, row)) for row in mu]
    bnorm = [float(b) for b in bnorm]
    center = [float(c) for c in center]
    x = [0] * d

    def level(i, partial):
        if i < d - 1:
            s = center[i] - sum(mu[k][i] * (x[k] - center[k]) for k in range(i + 1, d))
        else:
            s = center[i]
        w = math.sqrt((bound - partial) / bnorm[i]) if bound > partial else 0.0
        pad = _pad(s, w)
        for v in range(math.ceil(s - w - pad), math.floor(s + w + pad) + 1):
            t = v - s
            rem = partial + bnorm[i] * t * t
            if rem > bound:
                continue
            x[i] = v
            if i == 0:
                yield tuple(x), rem
            else:
                yield from level(i - 1, rem)

    if d == 0:
        yield (), 0.0
        return
    yield from level(d - 1, 0.0)


def enumerate_ball(mu, bnorm, center, bound):
    d = len(bnorm)
    bound = bound * (1.0 + 1e-9) + 1e-300
    rows = [x for x, _ in _walk(mu, bnorm, center, bound)]
    if not rows:
        return np.zeros((0, d), dtype=np.int64)
    return np.array(rows, dtype=np.int64).reshape(len(rows), d)


def count_ball(mu, bnorm, center, bound, margin):
    d = len(bnorm)
    if d == 0:
        return 1, np.zeros((0, 0), dtype=np.int64)
    sure = bound * (1.0 - margin)
    outer = bound * (1.0 + margin) + 1e-300
    n_sure = 0
    amb = []
    for x, q in _walk(mu, bnorm, center, outer):
        if q <= sure:
            n_sure += 1
        else:
            amb.append(x)
    return n_sure, np.array(amb, dtype=np.int64).reshape(len(amb), d)
