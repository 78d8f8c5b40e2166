"""Scans of mld value sets over growing families of germs.

Ascending chains and accumulation points are statements about infinite
sets.  What a scan can actually check is finite: how many distinct mld
values land above a threshold epsilon inside the window (0, 1/N), and
whether that count stops changing as the family grows.  Reports say so.
"""

import csv
import io
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .cones import Cone2D
from .lattice import LatticePoint, as_rational, format_rational
from .mld import MINUS_INFINITY, ToricPair, toric_mld
from .regone import RegOneSystem, Shape, SingularSystemError, solve_system, two_anchor_pair

__all__ = [
    "CoefficientFamily",
    "ScanReport",
    "SURROGATE_NOTE",
    "normal_form_cones",
    "enumerate_toric_mlds",
    "enumerate_system_mlds",
    "check_stabilization",
    "check_system_stabilization",
    "default_workers",
]

SURROGATE_NOTE = (
    "finite surrogate: threshold counts over a truncated family; "
    "stabilization is evidence for, not a proof of, ACC or accumulation only at zero"
)

THREADS_ENV = "MLD_LAB_THREADS"


def default_workers():
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


@dataclass(frozen=True)
class CoefficientFamily:
    values: tuple
    label: str = ""

    def __post_init__(self):
        vals = [as_rational(v) for v in self.values]
        if not vals:
            raise ValueError("coefficient family is empty")
        if len(set(vals)) != len(vals):
            raise ValueError("coefficient family has duplicate values")
        if any(v > 1 for v in vals):
            raise ValueError("coefficients must be <= 1")
        object.__setattr__(self, "values", tuple(sorted(vals)))
        if not self.label:
            object.__setattr__(self, "label", ",".join(map(format_rational, self.values)))

    @classmethod
    def parse(cls, text, label=""):
        return cls(tuple(as_rational(t) for t in text.split(",")), label)

    def __iter__(self):
        return iter(self.values)


def normal_form_cones(n):
    """Cones (1,0),(q,n) with 0 <= q < n, gcd(q, n) = 1: one per cyclic quotient of order n."""
    return [Cone2D(LatticePoint(1, 0), LatticePoint(q, n)) for q in range(n) if gcd(q, n) == 1]


def _values_for_indices(indices, family):
    out = set()
    pairs = list(itertools.product(family, repeat=2))
    for n in indices:
        for cone in normal_form_cones(n):
            for b1, b2 in pairs:
                result = toric_mld(ToricPair(cone, b1, b2))
                if result is not MINUS_INFINITY:
                    out.add(result.value)
    return out


def _per_index_values(indices, family, workers):
    """{n: set of mld values of index-n cones}, computed in shards."""
    family = tuple(family)
    indices = list(indices)
    workers = max(1, min(workers, len(indices)))
    if workers == 1:
        return {n: _values_for_indices([n], family) for n in indices}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {
            n: pool.submit(_values_for_indices, [n], family) for n in indices
        }
        return {n: futures[n].result() for n in indices}


def enumerate_toric_mlds(family, max_index, workers=None):
    """Sorted distinct mlds over all normal-form cones of index <= max_index
    and all coefficient pairs from ``family``."""
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    workers = default_workers() if workers is None else workers
    per_index = _per_index_values(range(1, max_index + 1), family, workers)
    return sorted(set().union(*per_index.values()))


def _system_instances(shape, weight_bound, length_bound, anchors, betas):
    shape = Shape(shape)
    weights_range = range(2, weight_bound + 1)
    couplings = range(1, weight_bound + 1)

    def weight_lists(min_len):
        for length in range(min_len, length_bound + 1):
            yield from itertools.product(weights_range, repeat=length)

    if shape is Shape.CIRCLE:
        for w in weight_lists(1):
            for c1 in anchors:
                yield RegOneSystem.circle(w, c1)
    elif shape is Shape.INTERVAL_ONE_ANCHOR:
        for w in weight_lists(1):
            for c, c1, beta in itertools.product(couplings, anchors, betas):
                yield RegOneSystem.one_anchor(w, c, c1, beta)
    elif shape is Shape.INTERVAL_NO_ANCHOR:
        for w in weight_lists(2):
            for c2, cr, b1, br in itertools.product(couplings, couplings, betas, betas):
                yield RegOneSystem.no_anchor(w, c2, cr, b1, br)
    else:
        for w in weight_lists(0):
            for c1, cr in itertools.product(anchors, anchors):
                yield RegOneSystem.two_anchors(w, c1, cr)


def enumerate_system_mlds(shape, weight_bound, length_bound, anchors, betas=(Fraction(1),)):
    """Sorted distinct mlds of every solvable system in the bounded family.

    Singular systems are skipped.  Intervals with two anchors have no
    system and contribute the toric mld of their chain cone instead.
    """
    if weight_bound < 1 or length_bound < 1:
        raise ValueError("bounds must be at least 1")
    out = set()
    for s in _system_instances(shape, weight_bound, length_bound, tuple(anchors), tuple(betas)):
        if s.shape is Shape.INTERVAL_TWO_ANCHORS:
            result = toric_mld(two_anchor_pair(s))
            if result is not MINUS_INFINITY:
                out.add(result.value)
            continue
        try:
            out.add(solve_system(s).mld)
        except SingularSystemError:
            continue
    return sorted(out)


@dataclass
class ScanReport:
    mode: str
    N: int
    schedule: tuple
    thresholds: tuple
    max_index: int
    window: tuple
    distinct_values: list
    counts_above: dict
    stabilized: dict
    values_by_step: list = field(repr=False, default_factory=list)
    note: str = SURROGATE_NOTE

    @property
    def all_stabilized(self):
        return all(self.stabilized.values())

    def to_dict(self):
        fr = format_rational
        return {
            "mode": self.mode,
            "N": self.N,
            "schedule": list(self.schedule),
            "max_index": self.max_index,
            "window": [fr(self.window[0]), fr(self.window[1])],
            "thresholds": [fr(e) for e in self.thresholds],
            "distinct_values": [fr(v) for v in self.distinct_values],
            "counts_above": {fr(e): list(c) for e, c in self.counts_above.items()},
            "stabilized": {fr(e): s for e, s in self.stabilized.items()},
            "note": self.note,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["epsilon", "schedule_index", "max_index", "count", "stabilized"])
        for eps in self.thresholds:
            for i, (bound, count) in enumerate(zip(self.schedule, self.counts_above[eps])):
                writer.writerow([format_rational(eps), i, bound, count, str(self.stabilized[eps]).lower()])
        return buf.getvalue()

    def summary(self):
        parts = [
            f"eps={format_rational(e)} count={self.counts_above[e][-1]} "
            + ("stabilized" if self.stabilized[e] else "NOT stabilized")
            for e in self.thresholds
        ]
        return f"{self.mode} scan N={self.N} max={self.max_index}: " + "; ".join(parts)


def _check_window(N, schedule, thresholds):
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise ValueError("N must be a positive integer")
    schedule = tuple(schedule)
    if len(schedule) < 2:
        raise ValueError("schedule needs at least two points to judge stabilization")
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be strictly increasing")
    if schedule[0] < 1:
        raise ValueError("schedule entries must be positive")
    top = Fraction(1, N)
    thresholds = tuple(sorted(as_rational(e) for e in thresholds))
    if not thresholds:
        raise ValueError("at least one threshold is required")
    for e in thresholds:
        if not 0 < e < top:
            raise ValueError(f"threshold {format_rational(e)} outside the window (0, {format_rational(top)})")
    return schedule, thresholds, top


def _report(mode, N, schedule, thresholds, top, step_values):
    """Assemble a report from the cumulative value list at each schedule point."""
    windowed = [sorted(v for v in values if 0 < v < top) for values in step_values]
    counts = {e: [sum(1 for v in vals if v > e) for vals in windowed] for e in thresholds}
    stabilized = {e: c[-1] == c[-2] for e, c in counts.items()}
    return ScanReport(
        mode=mode,
        N=N,
        schedule=schedule,
        thresholds=thresholds,
        max_index=schedule[-1],
        window=(Fraction(0), top),
        distinct_values=windowed[-1],
        counts_above=counts,
        stabilized=stabilized,
        values_by_step=windowed,
    )


def check_stabilization(family, N, index_schedule, thresholds, workers=None):
    """Threshold counts of toric mlds in (eps, 1/N) along a schedule of max indices."""
    schedule, thresholds, top = _check_window(N, index_schedule, thresholds)
    workers = default_workers() if workers is None else workers
    per_index = _per_index_values(range(1, schedule[-1] + 1), family, workers)
    step_values = []
    acc = set()
    n = 0
    for bound in schedule:
        while n < bound:
            n += 1
            acc |= per_index[n]
        step_values.append(set(acc))
    return _report("toric", N, schedule, thresholds, top, step_values)


def check_system_stabilization(shape, anchors, N, weight_schedule, thresholds,
                               length_bound=3, betas=(Fraction(1),)):
    """Same as :func:`check_stabilization` over regularity-one systems; the
    schedule runs over the weight/coupling bound."""
    schedule, thresholds, top = _check_window(N, weight_schedule, thresholds)
    step_values = [
        set(enumerate_system_mlds(shape, bound, length_bound, anchors, betas))
        for bound in schedule
    ]
    return _report(f"system:{Shape(shape).value}", N, schedule, thresholds, top, step_values)
