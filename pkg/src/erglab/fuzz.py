"""Seeded property suites over random instances.

Each suite draws ``count`` instances from ``random.Random(seed)`` and stops at
the first violated property.  The returned report contains no timing, so the
same seed always yields the same report.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .box import box_measure, seminorm4, seminorm4_by_averages
from .corpus import (
    random_commuting_system,
    random_observable,
    random_partition,
    random_space,
)
from .dynamics import ergodic_components, is_ergodic
from .errors import UnknownSuite
from .io import format_rational, system_to_document
from .measure import holder_product_bound, integrate
from .recurrence import cesaro_bound_check, diff_bound_check, j0_lower_bound_check, recurrence_set


def _case_inequality(rng: random.Random):
    space = random_space(rng, 10)
    k = rng.randint(1, 4)
    parts = [random_partition(rng, space) for _ in range(k)]
    f = random_observable(rng, space, 0, 3)
    check = holder_product_bound(f, parts)
    if not check.holds:
        return {
            "weights": [format_rational(w) for w in space.weights],
            "f": [format_rational(v) for v in f.values],
            "partitions": [list(p.blocks) for p in parts],
            "lhs": format_rational(check.lhs),
            "rhs": format_rational(check.rhs),
        }
    return None


def _case_seminorm(rng: random.Random):
    sys = random_commuting_system(rng, 8)
    f = random_observable(rng, sys.space, -2, 2)
    s = seminorm4(f, sys).fourth_power
    checks = {
        "by_averages": seminorm4_by_averages(f, sys) == s,
        "box_integral": box_measure(sys).integrate4(f) == s,
        "swap": seminorm4(f, sys.swapped()).fourth_power == s,
        "inverse_t1": seminorm4(f, sys.with_pair("T1^-1", "T2")).fourth_power == s,
        "domination": s <= integrate(f**4),
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        return {"system": system_to_document(sys), "f": [format_rational(v) for v in f.values], "failed": failed}
    return None


def brute_force_hits(sys, subset, threshold) -> list:
    """``n`` in one period with ``mu(A & T1^-n A & T2^-n A) > threshold``, by set intersection."""
    A = set(subset)
    w = sys.space.weights
    hits = []
    for n in range(sys.period):
        a, b = sys.t1.power(n), sys.t2.power(n)
        inter = [x for x in A if a[x] in A and b[x] in A]
        if sum((w[x] for x in inter), Fraction(0)) > threshold:
            hits.append(n)
    return hits


def _case_recurrence(rng: random.Random):
    sys = random_commuting_system(rng, 8)
    if not is_ergodic(sys):
        sys = rng.choice(ergodic_components(sys)).system
    subset = sorted(rng.sample(range(len(sys)), rng.randint(1, len(sys))))
    mu = sys.space.mass(subset)
    report = recurrence_set(sys, [sys.space.points[i] for i in subset], 4, mu**4 / 2)
    expected = brute_force_hits(sys, subset, report.threshold)
    if not report.syndetic or list(report.hits) != expected or report.max_gap > report.period:
        return {"system": system_to_document(sys), "A": subset, "hits": list(report.hits), "expected": expected}
    return None


def _case_bounds(rng: random.Random):
    sys = random_commuting_system(rng, 8)
    f = random_observable(rng, sys.space, 0, 1)
    fs = [random_observable(rng, sys.space, -1, 1) for _ in range(3)]
    failed = []
    if not cesaro_bound_check(sys, f, f, f).holds:
        failed.append("cesaro_fff")
    if not cesaro_bound_check(sys, *fs).holds:
        failed.append("cesaro_random")
    if not j0_lower_bound_check(sys, f).holds:
        failed.append("j0")
    if not diff_bound_check(sys, f).holds:
        failed.append("diff")
    if failed:
        return {"system": system_to_document(sys), "f": [format_rational(v) for v in f.values], "failed": failed}
    return None


SUITES = {
    "inequality": _case_inequality,
    "seminorm": _case_seminorm,
    "recurrence": _case_recurrence,
    "bounds": _case_bounds,
}


def run_suite(suite: str, seed: int, count: int) -> dict:
    if suite not in SUITES:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    case = SUITES[suite]
    rng = random.Random(seed)
    for i in range(count):
        witness = case(rng)
        if witness is not None:
            return {"suite": suite, "seed": seed, "count": count, "passed": i, "status": "violation",
                    "instance": i, "witness": witness}
    return {"suite": suite, "seed": seed, "count": count, "passed": count, "status": "all-pass"}
