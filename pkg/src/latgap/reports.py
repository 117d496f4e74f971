"""Structured check results and their JSON/CSV rendering."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

import mpmath

RELATIONS = ("<=", ">=", "=")


def compare(lhs, rhs, relation: str) -> bool:
    """Evaluate ``lhs relation rhs`` exactly for ints/Fractions, in 60-digit arithmetic otherwise."""
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    exact = (int, Fraction)
    if isinstance(lhs, exact) and isinstance(rhs, exact):
        a, b = lhs, rhs
    else:
        with mpmath.workdps(60):
            a, b = _mp(lhs), _mp(rhs)
    if relation == "<=":
        return bool(a <= b)
    if relation == ">=":
        return bool(a >= b)
    return bool(a == b)


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def format_real(x) -> Any:
    """12 significant digits, round-half-even; out-of-range values become strings."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        x = _mp(x)
    if isinstance(x, mpmath.mpf):
        if mpmath.isinf(x) or mpmath.isnan(x) or abs(x) > 1e300 or (x != 0 and abs(x) < 1e-300):
            return mpmath.nstr(x, 12)
        x = float(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            return str(x)
        return float(format(x, ".12g"))
    return x


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "to_json"):
        return _clean(obj.to_json())
    return format_real(obj)


@dataclass
class ExperimentReport:
    name: str
    inputs: dict
    lhs: Any
    rhs: Any
    relation: str
    seed: int | None = None
    runtime_ms: int = 0
    gating: bool = True
    extra: dict = field(default_factory=dict)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = compare(self.lhs, self.rhs, self.relation)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "name": self.name,
            "inputs": _clean(self.inputs),
            "lhs": format_real(self.lhs),
            "rhs": format_real(self.rhs),
            "relation": self.relation,
            "pass": bool(self.passed),
            "gating": self.gating,
            "seed": self.seed,
        }
        if self.extra:
            out["extra"] = _clean(self.extra)
        if timing:
            out["runtime_ms"] = self.runtime_ms
        return out


@contextmanager
def stopwatch():
    box = {"ms": 0}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["ms"] = int(round((time.perf_counter() - t0) * 1000))


def sort_reports(reports: Iterable[ExperimentReport]) -> list[ExperimentReport]:
    return sorted(reports, key=lambda r: (r.name, -1 if r.seed is None else r.seed))


def all_gating_pass(reports: Iterable[ExperimentReport]) -> bool:
    return all(r.passed for r in reports if r.gating)


def dumps(obj, timing: bool = False) -> str:
    if isinstance(obj, ExperimentReport):
        obj = obj.to_json(timing)
    elif isinstance(obj, list) and obj and isinstance(obj[0], ExperimentReport):
        obj = [r.to_json(timing) for r in obj]
    else:
        obj = _clean(obj)
    return json.dumps(obj, indent=2, sort_keys=True)


def to_csv(reports: Iterable[ExperimentReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "seed", "lhs", "relation", "rhs", "pass", "gating"])
    for r in reports:
        w.writerow([r.name, "" if r.seed is None else r.seed, format_real(r.lhs), r.relation,
                    format_real(r.rhs), int(bool(r.passed)), int(r.gating)])
    return buf.getvalue()
