"""Multiple correlation sequences, recurrence scans and the seminorm bounds.

``I_n(f0, f1, f2) = int f0 . T1^n f1 . T2^n f2``.  On a finite system this
sequence is periodic with period ``lcm(order T1, order T2)``, so Cesaro
averages are exact one-period averages and syndeticity of a hit set reduces
to non-emptiness.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional

import sympy
from mpmath import iv

from .box import seminorm4
from .dynamics import CommutingSystem, common_rotation_factor, invariant_partition, is_ergodic, validate_system
from .errors import EmptySet, NonPositiveEpsilon, NotErgodic, ObservableOutOfRange
from .measure import (
    HolderCheck,
    Observable,
    Partition,
    WeightedSpace,
    as_fraction,
    check_same_space,
    cond_exp,
    integrate,
    join_partitions,
)


def multi_corr(sys: CommutingSystem, f0: Observable, f1: Observable, f2: Observable, n: int) -> Fraction:
    check_same_space(sys.space, f0.space, f1.space, f2.space)
    a, b = sys.t1.power(n), sys.t2.power(n)
    v0, v1, v2, w = f0.values, f1.values, f2.values, sys.space.weights
    return sum((w[x] * v0[x] * v1[a[x]] * v2[b[x]] for x in range(len(sys))), Fraction(0))


def correlation_sequence(sys, f0, f1, f2, length: Optional[int] = None) -> list:
    length = sys.period if length is None else length
    return [multi_corr(sys, f0, f1, f2, n) for n in range(length)]


def cyclic_max_gap(hits: list, period: int) -> Optional[int]:
    if not hits:
        return None
    gaps = [b - a for a, b in zip(hits, hits[1:])]
    gaps.append(hits[0] + period - hits[-1])
    return max(gaps)


@dataclass(frozen=True)
class RecurrenceReport:
    threshold: Fraction
    period: int
    hits: tuple
    max_gap: Optional[int]
    syndetic: bool
    values: tuple
    ergodic: bool = True

    @property
    def ergodicity_violated(self) -> bool:
        return not self.ergodic


def _indices(sys: CommutingSystem, subset: Iterable) -> list:
    idx = sys.space.index
    try:
        return sorted({idx[p] for p in subset})
    except KeyError as exc:
        raise ValueError(f"{exc.args[0]!r} is not a point of the space") from None


def recurrence_set(
    sys: CommutingSystem,
    subset: Iterable,
    exponent: int,
    epsilon,
    horizon: Optional[int] = None,
    allow_nonergodic: bool = False,
) -> RecurrenceReport:
    """Scan ``n`` for ``mu(A & T1^-n A & T2^-n A) > mu(A)^exponent - epsilon``.

    ``subset`` holds point labels.  The gap and syndeticity
    verdicts always come from the full period; ``horizon`` only truncates
    the reported ``values`` and ``hits``.
    """
    if exponent not in (3, 4):
        raise ValueError("exponent must be 3 or 4")
    epsilon = as_fraction(epsilon)
    if epsilon <= 0:
        raise NonPositiveEpsilon(f"epsilon must be positive, got {epsilon}")
    idx = _indices(sys, subset)
    if not idx:
        raise EmptySet("A must be nonempty")
    ergodic = is_ergodic(sys)
    if not ergodic:
        if not allow_nonergodic:
            raise NotErgodic("system is not ergodic; pass allow_nonergodic=True to scan anyway")
        warnings.warn("ergodicity hypothesis violated; scanning anyway", stacklevel=2)
    f = Observable.indicator(sys.space, idx)
    threshold = integrate(f) ** exponent - epsilon
    period = sys.period
    values = correlation_sequence(sys, f, f, f, period)
    hits = [n for n, v in enumerate(values) if v > threshold]
    if horizon is not None:
        if horizon < 1:
            raise ValueError("horizon must be positive")
        shown = [values[n % period] for n in range(horizon)]
        shown_hits = [n for n in range(horizon) if shown[n] > threshold]
    else:
        shown, shown_hits = values, hits
    return RecurrenceReport(
        threshold=threshold,
        period=period,
        hits=tuple(shown_hits),
        max_gap=cyclic_max_gap(hits, period),
        syndetic=bool(hits),
        values=tuple(shown),
        ergodic=ergodic,
    )


def _check_unit_bounded(*fs: Observable) -> None:
    for f in fs:
        if any(abs(v) > 1 for v in f.values):
            raise ObservableOutOfRange("observables must satisfy |f| <= 1")


def _check_unit_interval(f: Observable) -> None:
    if any(v < 0 or v > 1 for v in f.values):
        raise ObservableOutOfRange("f must satisfy 0 <= f <= 1")


def _cos_sum_sign(coeffs: list, d: int, bound: Fraction) -> int:
    """Sign of ``bound - sum_r coeffs[r] cos(2 pi r / d)``, certified.

    Zero is detected exactly in the cyclotomic field; otherwise interval
    arithmetic is refined until the enclosure excludes zero.
    """
    x = sympy.Symbol("x")
    # cos(2 pi r/d) = (z^r + z^(d-r)) / 2 with z a primitive d-th root of unity
    poly_coeffs = [sympy.Rational(0)] * d
    for r, c in enumerate(coeffs):
        if c:
            poly_coeffs[r] += sympy.Rational(c.numerator, 2 * c.denominator)
            poly_coeffs[(d - r) % d] += sympy.Rational(c.numerator, 2 * c.denominator)
    poly_coeffs[0] -= sympy.Rational(bound.numerator, bound.denominator)
    expr = sum(c * x**r for r, c in enumerate(poly_coeffs))
    rem = sympy.rem(sympy.Poly(expr, x, domain="QQ"), sympy.Poly(sympy.cyclotomic_poly(d, x), x, domain="QQ"))
    if rem.is_zero:
        return 0
    dps = 30
    while True:
        iv.dps = dps
        total = iv.mpf(0)
        for r, c in enumerate(coeffs):
            if c:
                total += iv.mpf(c.numerator) / c.denominator * iv.cos(2 * iv.pi * r / d)
        diff = iv.mpf(bound.numerator) / bound.denominator - total
        if diff.a > 0:
            return 1
        if diff.b < 0:
            return -1
        dps *= 2


@dataclass(frozen=True)
class CesaroCheck:
    t: Fraction
    average_abs: float
    average4: object  # exact Fraction when t == 0, float approximation otherwise
    bounds: tuple
    holds: bool


def cesaro_bound_check(sys: CommutingSystem, f0, f1, f2, t=0) -> CesaroCheck:
    """Compare ``|avg_n e(nt) I_n|^4`` with the three box seminorm bounds.

    ``f0`` is controlled by the pair ``(T1, T2)``, ``f1`` by ``(T1, T3)`` and
    ``f2`` by ``(T2, T3)``, where ``T3 = T1 T2^-1``.
    """
    _check_unit_bounded(f0, f1, f2)
    t = as_fraction(t) % 1
    period = sys.period
    d = t.denominator
    if period % d:
        raise ValueError(f"denominator of t ({d}) must divide the period ({period})")
    values = correlation_sequence(sys, f0, f1, f2, period)
    bounds = (
        seminorm4(f0, sys).fourth_power,
        seminorm4(f1, sys.with_pair("T1", "T3")).fourth_power,
        seminorm4(f2, sys.with_pair("T2", "T3")).fourth_power,
    )
    best = min(bounds)
    if d == 1:
        avg = sum(values, Fraction(0)) / period
        avg4 = avg**4
        return CesaroCheck(t, float(abs(avg)), avg4, bounds, avg4 <= best)
    # avg = sum_k a_k z^k, z = e(1/d); |avg|^2 and |avg|^4 are real cyclotomic sums
    a = [Fraction(0)] * d
    for n, v in enumerate(values):
        a[(n * t.numerator) % d] += v / period
    sq = [Fraction(0)] * d
    for j in range(d):
        for k in range(d):
            sq[(j - k) % d] += a[j] * a[k]
    quad = [Fraction(0)] * d
    for j in range(d):
        for k in range(d):
            quad[(j + k) % d] += sq[j] * sq[k]
    # quad is symmetric (quad[r] == quad[-r]), so its value is sum quad[r] cos(2 pi r/d)
    sign = _cos_sum_sign(quad, d, best)
    iv.dps = 30
    approx = sum(float(c) * float(iv.cos(2 * iv.pi * r / d).mid) for r, c in enumerate(quad) if c)
    return CesaroCheck(t, max(approx, 0.0) ** 0.25, approx, bounds, sign >= 0)


@dataclass(frozen=True)
class PairwiseProjections:
    h: Observable
    g0: Observable
    g1: Observable
    g2: Observable


def pairwise_joins(sys: CommutingSystem) -> tuple:
    p1, p2, p3 = (invariant_partition(sys, w) for w in ("T1", "T2", "T3"))
    return join_partitions(p1, p2), join_partitions(p1, p3), join_partitions(p2, p3)


def pairwise_projections(sys: CommutingSystem, f: Observable) -> PairwiseProjections:
    check_same_space(sys.space, f.space)
    j12, j13, j23 = pairwise_joins(sys)
    return PairwiseProjections(f, cond_exp(f, j12), cond_exp(f, j13), cond_exp(f, j23))


def j_sequence(sys: CommutingSystem, f: Observable, n: int) -> Fraction:
    pp = pairwise_projections(sys, f)
    return multi_corr(sys, pp.g0, pp.g1, pp.g2, n)


@dataclass(frozen=True)
class J0Check:
    j0: Fraction
    bound: Fraction
    holds: bool


def j0_lower_bound_check(sys: CommutingSystem, f: Observable) -> J0Check:
    _check_unit_interval(f)
    j0 = j_sequence(sys, f, 0)
    bound = integrate(f) ** 4
    return J0Check(j0, bound, j0 >= bound)


def _root4_enclosure(x: Fraction, scale: int) -> tuple:
    """Rational ``(lo, hi)`` with ``lo <= x^(1/4) <= hi`` and ``hi - lo <= 1/scale``."""
    n = (x.numerator * scale**4) // x.denominator
    r = isqrt(isqrt(n))
    lo = Fraction(r, scale)
    hi = lo if lo**4 == x else Fraction(r + 1, scale)
    return lo, hi


@dataclass(frozen=True)
class DiffCheck:
    average: Fraction
    seminorms4: tuple
    bound_lower: Fraction
    bound_upper: Fraction
    holds: bool

    @property
    def average_abs4(self) -> Fraction:
        return self.average**4


def diff_bound_check(sys: CommutingSystem, f: Observable) -> DiffCheck:
    """Check ``|avg_n (I_n - J_n)| <= |h-g2|_{T2,T3} + |h-g1|_{T1,T3} + |h-g0|_{T1,T2}``.

    The right side is a sum of fourth roots, enclosed by rationals of width
    at most ``1e-12`` (refined further when the comparison is undecided).
    """
    _check_unit_interval(f)
    pp = pairwise_projections(sys, f)
    h = pp.h
    period = sys.period
    diffs = [
        multi_corr(sys, h, h, h, n) - multi_corr(sys, pp.g0, pp.g1, pp.g2, n) for n in range(period)
    ]
    avg = sum(diffs, Fraction(0)) / period
    s4 = (
        seminorm4(h - pp.g2, sys.with_pair("T2", "T3")).fourth_power,
        seminorm4(h - pp.g1, sys.with_pair("T1", "T3")).fourth_power,
        seminorm4(h - pp.g0, sys).fourth_power,
    )
    scale = 10**12
    while True:
        encl = [_root4_enclosure(s, scale) for s in s4]
        lo = sum((e[0] for e in encl), Fraction(0))
        hi = sum((e[1] for e in encl), Fraction(0))
        if abs(avg) <= lo or abs(avg) > hi or lo == hi:
            return DiffCheck(avg, s4, lo, hi, abs(avg) <= lo)
        if scale > 10**96:
            # undecided at ~1e-96: report as not certified
            return DiffCheck(avg, s4, lo, hi, False)
        scale *= 10**12


def product_rotation_system(p: int, q: int) -> CommutingSystem:
    """``Z_p x Z_q`` with ``T1 = (+1, id)`` and ``T2 = (id, +1)``; points are ``(x, y)``."""
    points = tuple((x, y) for x in range(p) for y in range(q))
    space = WeightedSpace(points, (Fraction(1, p * q),) * (p * q))
    t1 = [((x + 1) % p) * q + y for x, y in points]
    t2 = [x * q + (y + 1) % q for x, y in points]
    return validate_system(space, t1, t2, f"Z{p}xZ{q}")


@dataclass(frozen=True)
class Khintchine3Result:
    report: RecurrenceReport
    i0_check: HolderCheck
    common_factor: int


def product_rotation_khintchine3(p: int, q: int, subset: Iterable, epsilon) -> Khintchine3Result:
    """Exponent-3 recurrence on ``Z_p x Z_q`` plus ``I_0(f, f^, f~) >= (int f)^3``.

    ``f^`` conditions on (common rotation factor of the first coordinate,
    second coordinate); ``f~`` on (first coordinate, common factor of the second).
    """
    sys = product_rotation_system(p, q)
    report = recurrence_set(sys, subset, 3, epsilon)
    g, proj1, proj2 = common_rotation_factor(p, q)
    idx = _indices(sys, subset)
    f = Observable.indicator(sys.space, idx)
    pts = sys.space.points
    hat = cond_exp(f, Partition.from_labels(sys.space, [(proj1[x], y) for x, y in pts]))
    tilde = cond_exp(f, Partition.from_labels(sys.space, [(x, proj2[y]) for x, y in pts]))
    lhs = multi_corr(sys, f, hat, tilde, 0)
    rhs = integrate(f) ** 3
    return Khintchine3Result(report, HolderCheck(lhs, rhs, lhs >= rhs), g)
