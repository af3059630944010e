"""Relatively independent squares, the box measure and the box seminorm.

The square ``mu_1`` couples ``mu`` with itself independently inside each
orbit of ``T1``.  The box measure couples two ``mu_1``-distributed pairs
``(x00, x01)`` and ``(x10, x11)`` independently inside each orbit of
``T2 x T2`` on the support of ``mu_1``.  The seminorm is the fourth root of
``int f(x00) f(x01) f(x10) f(x11)``; all logic here works with the exact
fourth power.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .dynamics import (
    CommutingSystem,
    FactorMap,
    Transformation,
    ergodic_components,
    invariant_partition,
    validate_system,
)
from .errors import SizeLimitExceeded
from .measure import Observable, Partition, WeightedSpace, check_same_space, join_partitions

DEFAULT_MAX_POINTS = 40


def max_points_limit(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("ERGLAB_MAX_POINTS")
    return int(env) if env else DEFAULT_MAX_POINTS


@dataclass(frozen=True)
class PairMeasure:
    masses: dict

    def marginal(self, coord: int, size: int) -> tuple:
        out = [Fraction(0)] * size
        for pair, m in self.masses.items():
            out[pair[coord]] += m
        return tuple(out)


@dataclass(frozen=True)
class QuadMeasure:
    masses: dict

    def __len__(self):
        return len(self.masses)

    def total(self) -> Fraction:
        return sum(self.masses.values(), Fraction(0))

    def marginal(self, coord: int, size: int) -> tuple:
        out = [Fraction(0)] * size
        for quad, m in self.masses.items():
            out[quad[coord]] += m
        return tuple(out)

    def integrate4(self, f: Observable) -> Fraction:
        v = f.values
        return sum((m * v[a] * v[b] * v[c] * v[d] for (a, b, c, d), m in self.masses.items()), Fraction(0))

    def is_invariant(self, sys: CommutingSystem) -> bool:
        """Invariance under ``T1 x id x T1 x id`` and ``T2 x T2 x id x id``."""
        s1, s2 = sys.t1.forward, sys.t2.forward
        moves = (
            lambda a, b, c, d: (s1[a], b, s1[c], d),
            lambda a, b, c, d: (s2[a], s2[b], c, d),
        )
        for move in moves:
            for quad, m in self.masses.items():
                if self.masses.get(move(*quad)) != m:
                    return False
        return True


@dataclass(frozen=True)
class SeminormValue:
    fourth_power: Fraction

    @property
    def root(self) -> float:
        return float(self.fourth_power) ** 0.25


def _orbits_of_pair_map(support, step) -> list:
    """Orbits of the bijection ``step`` restricted to the finite invariant set ``support``."""
    seen = set()
    orbits = []
    for start in support:
        if start in seen:
            continue
        orbit = []
        x = start
        while x not in seen:
            seen.add(x)
            orbit.append(x)
            x = step(x)
        orbits.append(orbit)
    return orbits


def relative_square(sys: CommutingSystem, over: str = "T1") -> PairMeasure:
    w = sys.space.weights
    masses = {}
    for block in invariant_partition(sys, over).blocks:
        atom = sum((w[i] for i in block), Fraction(0))
        for x in block:
            for y in block:
                masses[(x, y)] = w[x] * w[y] / atom
    return PairMeasure(masses)


def _square_atoms(sys: CommutingSystem):
    """Support of ``mu_1`` split into ``T2 x T2`` orbits, with the orbit masses."""
    mu1 = relative_square(sys, "T1").masses
    s2 = sys.t2.forward
    orbits = _orbits_of_pair_map(mu1, lambda p: (s2[p[0]], s2[p[1]]))
    return mu1, [(orbit, sum((mu1[p] for p in orbit), Fraction(0))) for orbit in orbits]


def box_measure(sys: CommutingSystem, max_points: Optional[int] = None) -> QuadMeasure:
    limit = max_points_limit(max_points)
    if len(sys) > limit:
        raise SizeLimitExceeded(len(sys), limit)
    mu1, atoms = _square_atoms(sys)
    masses = {}
    for orbit, atom in atoms:
        for p in orbit:
            for q in orbit:
                masses[(p[0], p[1], q[0], q[1])] = mu1[p] * mu1[q] / atom
    return QuadMeasure(dict(sorted(masses.items())))


def seminorm4(f: Observable, sys: CommutingSystem) -> SeminormValue:
    """Exact fourth power of the box seminorm of ``f`` for the pair ``(T1, T2)``.

    Integrates against the box measure atom by atom: on each ``T2 x T2``
    orbit ``O`` of pairs the relatively independent product contributes
    ``(sum_O mu_1(p) f(p0) f(p1))^2 / mu_1(O)``, so the quadruples are never
    enumerated.
    """
    check_same_space(f.space, sys.space)
    v = f.values
    mu1, atoms = _square_atoms(sys)
    total = Fraction(0)
    for orbit, atom in atoms:
        s = sum((mu1[p] * v[p[0]] * v[p[1]] for p in orbit), Fraction(0))
        total += s * s / atom
    assert total >= 0
    return SeminormValue(total)


def seminorm4_by_averages(f: Observable, sys: CommutingSystem) -> Fraction:
    """Double average over full periods of ``int f . T1^a f . T2^b f . T1^a T2^b f``."""
    check_same_space(f.space, sys.space)
    v, w = f.values, sys.space.weights
    m = len(sys)
    p1, p2 = sys.t1.order, sys.t2.order
    pow1 = [sys.t1.power(a) for a in range(p1)]
    pow2 = [sys.t2.power(b) for b in range(p2)]
    total = Fraction(0)
    for a in range(p1):
        ta = pow1[a]
        for b in range(p2):
            tb = pow2[b]
            total += sum(
                (w[x] * v[x] * v[ta[x]] * v[tb[x]] * v[ta[tb[x]]] for x in range(m)), Fraction(0)
            )
    return total / (p1 * p2)


def g_algebra(sys: CommutingSystem, max_points: Optional[int] = None) -> Partition:
    """Partition of ``x00`` values linked through a common ``(x01, x10, x11)`` in the box support."""
    box = box_measure(sys, max_points)
    parent = list(range(len(sys)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner = {}
    for a, b, c, d in box.masses:
        key = (b, c, d)
        if key in owner:
            ra, rb = find(a), find(owner[key])
            if ra != rb:
                parent[ra] = rb
        else:
            owner[key] = a
    return Partition.from_labels(sys.space, [find(i) for i in range(len(sys))])


def invariant_join(sys: CommutingSystem, first: str = "T1", second: str = "T2") -> Partition:
    return join_partitions(invariant_partition(sys, first), invariant_partition(sys, second))


def kernel_basis(part: Partition) -> list:
    """Basis of the observables with zero conditional expectation on ``part``."""
    w = part.space.weights
    basis = []
    for block in part.blocks:
        b0 = block[0]
        for x in block[1:]:
            vals = [Fraction(0)] * len(part.space)
            vals[x] = w[b0]
            vals[b0] = -w[x]
            basis.append(Observable(part.space, tuple(vals)))
    return basis


@dataclass(frozen=True)
class MagicVerdict:
    verdict: bool
    witness: Optional[Observable] = None
    witness_seminorm4: Optional[Fraction] = None

    def __bool__(self):
        return self.verdict


def is_magic(sys: CommutingSystem) -> MagicVerdict:
    """Check every kernel basis vector of ``E(. | I(T1) v I(T2))`` for zero seminorm."""
    for b in kernel_basis(invariant_join(sys)):
        value = seminorm4(b, sys).fourth_power
        if value != 0:
            return MagicVerdict(False, b, value)
    return MagicVerdict(True)


def magic_extension(sys: CommutingSystem, max_points: Optional[int] = None):
    """The system carried by the box measure, with its projection ``x -> x00``.

    Returns ``(ext, factor)``; ext points are 4-tuples of original point labels.
    """
    box = box_measure(sys, max_points)
    quads = list(box.masses)
    pos = {q: k for k, q in enumerate(quads)}
    labels = sys.space.points
    space = WeightedSpace(
        tuple(tuple(labels[i] for i in q) for q in quads),
        tuple(box.masses[q] for q in quads),
    )
    s1, s2 = sys.t1.forward, sys.t2.forward
    t1 = [pos[(s1[a], b, s1[c], d)] for a, b, c, d in quads]
    t2 = [pos[(s2[a], s2[b], c, d)] for a, b, c, d in quads]
    ext = validate_system(space, Transformation.from_forward(t1), Transformation.from_forward(t2), f"{sys.name}*")
    factor = FactorMap(ext, sys, tuple(q[0] for q in quads))
    return ext, factor


def seminorm4_decomposed(f: Observable, sys: CommutingSystem) -> Fraction:
    """Mass-weighted sum of the seminorms over the ergodic components."""
    return sum(
        (c.mass * seminorm4(c.restrict(f), c.system).fourth_power for c in ergodic_components(sys)),
        Fraction(0),
    )
