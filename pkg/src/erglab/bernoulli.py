"""Exact correlations of cylinder observables on products of Bernoulli shifts.

A cylinder observable depends on finitely many coordinates of each
component sequence.  Under the product measure the coordinates are
independent, so the integral of a product of shifted cylinders is a finite
sum over the letters at the touched coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, log, prod
from typing import Sequence

from .errors import OutOfRange, ZeroShift
from .measure import as_fraction


@dataclass(frozen=True)
class BernoulliSpec:
    components: tuple  # one probability vector per independent sequence

    def __post_init__(self):
        comps = tuple(tuple(as_fraction(p) for p in vec) for vec in self.components)
        for vec in comps:
            if not vec or any(p <= 0 for p in vec) or sum(vec) != 1:
                raise ValueError(f"invalid probability vector {vec}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def uniform(cls, alphabet: int, copies: int) -> "BernoulliSpec":
        return cls(tuple((Fraction(1, alphabet),) * alphabet for _ in range(copies)))

    @property
    def alphabets(self) -> tuple:
        return tuple(len(vec) for vec in self.components)


@dataclass(frozen=True)
class CylinderObservable:
    """``coords[c]`` lists the coordinates read from component ``c``.

    ``table`` maps the tuple of letters read (component by component, in
    coordinate order) to a value.
    """

    coords: tuple
    table: dict
    alphabets: tuple

    def __post_init__(self):
        coords = tuple(tuple(c) for c in self.coords)
        if len(coords) != len(self.alphabets):
            raise ValueError("one coordinate list per component is required")
        table = {tuple(k): as_fraction(v) for k, v in self.table.items()}
        sizes = [a for a, cs in zip(self.alphabets, coords) for _ in cs]
        if len(table) != prod(sizes) or any(
            len(k) != len(sizes) or any(not 0 <= x < a for x, a in zip(k, sizes)) for k in table
        ):
            raise ValueError("table must be total on the declared coordinates")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "table", table)

    @classmethod
    def constant(cls, spec: BernoulliSpec, value=1) -> "CylinderObservable":
        return cls(tuple(() for _ in spec.components), {(): value}, spec.alphabets)


@dataclass(frozen=True)
class ShiftTerm:
    observable: CylinderObservable
    shifts: tuple  # per-component translation of the coordinates

    def touched(self) -> list:
        return [
            [c + s for c in cs] for cs, s in zip(self.observable.coords, self.shifts)
        ]


def exact_correlation(spec: BernoulliSpec, terms: Sequence[ShiftTerm]) -> Fraction:
    """Integral of the product of the shifted terms under the product measure."""
    ncomp = len(spec.components)
    for term in terms:
        if term.observable.alphabets != spec.alphabets or len(term.shifts) != ncomp:
            raise ValueError("term does not match the Bernoulli spec")
    # variables are (component, absolute coordinate)
    variables = sorted({(c, x) for term in terms for c, xs in enumerate(term.touched()) for x in xs})
    slot = {v: k for k, v in enumerate(variables)}
    readers = []
    for term in terms:
        keys = [slot[(c, x)] for c, xs in enumerate(term.touched()) for x in xs]
        readers.append((keys, term.observable.table))
    probs = [spec.components[c] for c, _ in variables]
    total = Fraction(0)
    for letters in product(*(range(len(p)) for p in probs)):
        value = Fraction(1)
        for keys, table in readers:
            value *= table[tuple(letters[k] for k in keys)]
            if not value:
                break
        if value:
            for p, a in zip(probs, letters):
                value *= p[a]
            total += value
    return total


# f(i, j, k): row j, column block i, entry k
_TABLE_ROWS = {
    0: ((0, 0, 1), (0, 0, 1), (1, 1, 1)),
    1: ((0, 1, 1), (0, 0, 1), (1, 1, 0)),
    2: ((1, 1, 0), (1, 1, 1), (1, 0, 0)),
}

COUNTEREXAMPLE_SPEC = BernoulliSpec.uniform(3, 3)
COUNTEREXAMPLE_CONSTANT = Fraction(96, 100)


def counterexample_table() -> CylinderObservable:
    """The 0/1 function ``f(i, j, k)`` read at coordinate 0 of each of the three sequences."""
    table = {(i, j, k): _TABLE_ROWS[j][i][k] for i in range(3) for j in range(3) for k in range(3)}
    return CylinderObservable(((0,), (0,), (0,)), table, COUNTEREXAMPLE_SPEC.alphabets)


def counterexample_measure() -> Fraction:
    """``mu(A)`` for the counterexample set."""
    return exact_correlation(COUNTEREXAMPLE_SPEC, [ShiftTerm(counterexample_table(), (0, 0, 0))])


def counterexample_terms(n: int) -> list:
    """``F``, ``F o T1^-n`` and ``F o T2^-n`` with ``T1 = S x id x S``, ``T2 = id x S x S``."""
    f = counterexample_table()
    return [ShiftTerm(f, (0, 0, 0)), ShiftTerm(f, (-n, 0, -n)), ShiftTerm(f, (0, -n, -n))]


def counterexample_value(n: int) -> Fraction:
    """``mu(A & T1^n A & T2^n A)`` for ``n != 0``."""
    if n == 0:
        raise ZeroShift("n = 0 gives mu(A); use counterexample_measure()")
    value = exact_correlation(COUNTEREXAMPLE_SPEC, counterexample_terms(n))
    assert value < COUNTEREXAMPLE_CONSTANT * counterexample_measure() ** 3
    return value


def counterexample_ratio() -> Fraction:
    return counterexample_value(1) / counterexample_measure() ** 3


@dataclass(frozen=True)
class PowerCertificate:
    l: int
    lhs: Fraction
    rhs: Fraction
    certificate: bool


def counterexample_power(c) -> PowerCertificate:
    """Smallest ``l`` with ``value^l < c * (mu(A)^3)^l`` for the ``l``-fold product system."""
    c = as_fraction(c)
    if not 0 < c <= 1:
        raise OutOfRange(f"c must lie in (0, 1], got {c}")
    value, cube = counterexample_value(1), counterexample_measure() ** 3
    r = value / cube
    # log estimate on integers (no float overflow for tiny c), then exact correction
    est = (log(c.numerator) - log(c.denominator)) / (log(r.numerator) - log(r.denominator))
    l = max(1, ceil(est))
    while l > 1 and r ** (l - 1) < c:
        l -= 1
    while not r**l < c:
        l += 1
    lhs, rhs = value**l, c * cube**l
    return PowerCertificate(l, lhs, rhs, lhs < rhs)


def counterexample_hits(epsilon, window: int) -> list:
    """``n`` in ``[-window, window]`` with ``I_n > mu(A)^3 - epsilon``."""
    epsilon = as_fraction(epsilon)
    threshold = counterexample_measure() ** 3 - epsilon
    hits = []
    for n in range(-window, window + 1):
        v = counterexample_measure() if n == 0 else counterexample_value(n)
        if v > threshold:
            hits.append(n)
    return hits
